#include "gcproi/synth.hpp"

#include "gcproi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

namespace gcproi {

namespace {

std::string team_id(int t)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d", t + 1);
    return buf;
}

std::string player_id(int t, int p)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "T%02d-P%02d", t + 1, p + 1);
    return buf;
}

std::string game_id(std::size_t g)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "G%06zu", g + 1);
    return buf;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

void check(const SynthConfig& c)
{
    const auto fail = [](const std::string& m) { throw InvalidConfig(m); };
    if (c.teams < 2) fail("need at least two teams");
    if (c.games < 1) fail("need at least one game");
    if (c.roster_min < 1 || c.roster_max < c.roster_min) fail("roster size range is empty");
    if (c.count_max < 1) fail("count_max must be >= 1");
    if (!(c.minutes_max > 0.5) || !(c.distance_max > 0.0)) fail("minutes_max and distance_max must be positive");
    if (!(c.missed_game_probability >= 0.0 && c.missed_game_probability <= 1.0)) fail("missed-game probability out of [0, 1]");
    if (!(c.zero_field_probability >= 0.0 && c.zero_field_probability < 1.0)) fail("zero-field probability out of [0, 1)");
    if (c.salary_min < 1 || c.salary_max < c.salary_min) fail("salary range is empty");
    if (c.trades < 0 || c.trades > c.teams) fail("trades must be in [0, teams]");
}

struct Scheduled {
    int round;
    int home;
    int away;
};

// Circle-method round robin, repeated until `games` are placed. With an odd
// team count one team sits out each round.
std::vector<Scheduled> round_robin(int teams, int games)
{
    std::vector<int> slots(static_cast<std::size_t>(teams));
    for (int i = 0; i < teams; ++i) slots[static_cast<std::size_t>(i)] = i;
    if (teams % 2) slots.push_back(-1);
    const int n = static_cast<int>(slots.size());

    std::vector<Scheduled> out;
    for (int round = 0; static_cast<int>(out.size()) < games; ++round) {
        const bool flip = (round / (n - 1)) % 2 == 1;
        for (int i = 0; i < n / 2 && static_cast<int>(out.size()) < games; ++i) {
            int a = slots[static_cast<std::size_t>(i)];
            int b = slots[static_cast<std::size_t>(n - 1 - i)];
            if (a < 0 || b < 0) continue;
            if (flip) std::swap(a, b);
            out.push_back({round, a, b});
        }
        std::rotate(slots.begin() + 1, slots.end() - 1, slots.end());
    }
    return out;
}

} // namespace

SynthSeason synth_season(const SynthConfig& cfg)
{
    check(cfg);
    std::mt19937_64 rng(cfg.seed);
    SynthSeason season;
    auto& book = season.book;

    // Rosters and salaries.
    std::vector<std::vector<std::string>> rosters(static_cast<std::size_t>(cfg.teams));
    std::map<std::string, std::string> names;
    std::map<std::string, int> home_of;
    std::uniform_int_distribution<int> roster_size(cfg.roster_min, cfg.roster_max);
    std::uniform_int_distribution<std::int64_t> salary(cfg.salary_min, cfg.salary_max);
    for (int t = 0; t < cfg.teams; ++t) {
        const int n = roster_size(rng);
        for (int p = 0; p < n; ++p) {
            const std::string id = player_id(t, p);
            rosters[static_cast<std::size_t>(t)].push_back(id);
            names[id] = "Player " + id;
            home_of[id] = t;
            book.games_played[id] = 0;
            book.missed_games[id] = 0;
            season.salaries.entries[id] = {names[id], salary(rng)};
        }
    }
    const std::set<std::string> missing(cfg.always_missing.begin(), cfg.always_missing.end());
    for (const auto& id : missing) {
        if (!names.count(id)) throw InvalidConfig("always-missing player '" + id + "' is not generated");
    }
    std::map<int, FieldMask> forced_zero;
    for (const auto& [team, field] : cfg.zeroed_fields) {
        int t = -1;
        for (int i = 0; i < cfg.teams; ++i) {
            if (team_id(i) == team) t = i;
        }
        if (t < 0) throw InvalidConfig("zeroed field for unknown team '" + team + "'");
        if (field == FieldId::MIN) throw InvalidConfig("MIN cannot be zeroed");
        forced_zero[t].set(static_cast<std::size_t>(index(field)));
    }

    const auto schedule = round_robin(cfg.teams, cfg.games);

    // Trades: the last eligible player of team k moves to team k+1 at the
    // first round boundary after the middle of team k's schedule.
    struct Trade {
        std::string player;
        int from;
        int to;
        int round; ///< first round with the new team
    };
    std::vector<Trade> trades;
    for (int k = 0; k < cfg.trades; ++k) {
        const int from = k;
        const int to = (k + 1) % cfg.teams;
        auto& r = rosters[static_cast<std::size_t>(from)];
        auto it = std::find_if(r.rbegin(), r.rend(), [&](const std::string& id) {
            return !missing.count(id)
                   && std::none_of(trades.begin(), trades.end(), [&](const Trade& tr) { return tr.player == id; });
        });
        if (it == r.rend()) throw InvalidConfig("no tradable player on " + team_id(from));
        std::vector<int> rounds;
        for (const auto& s : schedule) {
            if (s.home == from || s.away == from) rounds.push_back(s.round);
        }
        if (rounds.empty()) throw InvalidConfig("team " + team_id(from) + " plays no game");
        const int cut = rounds[rounds.size() / 2] + 1;
        trades.push_back({*it, from, to, cut});
        book.traded_players.push_back(*it);
    }
    const auto team_of = [&](const std::string& id, int home_team, int round) {
        for (const auto& tr : trades) {
            if (tr.player == id) return round < tr.round ? tr.from : tr.to;
        }
        return home_team;
    };
    const auto roster_at = [&](int team, int round) {
        std::vector<std::string> r;
        for (int t = 0; t < cfg.teams; ++t) {
            for (const auto& id : rosters[static_cast<std::size_t>(t)]) {
                if (team_of(id, t, round) == team) r.push_back(id);
            }
        }
        return r;
    };

    std::bernoulli_distribution miss(cfg.missed_game_probability);
    std::bernoulli_distribution zero_field(cfg.zero_field_probability);
    std::uniform_int_distribution<int> count(0, cfg.count_max);
    std::uniform_real_distribution<double> minutes(0.5, cfg.minutes_max);
    std::uniform_real_distribution<double> distance(0.0, cfg.distance_max);
    const std::chrono::sys_days start = std::chrono::year(2022) / std::chrono::October / 18;

    for (std::size_t gi = 0; gi < schedule.size(); ++gi) {
        const auto& s = schedule[gi];
        GameRecord g;
        g.game_id = game_id(gi);
        g.date = std::chrono::year_month_day(start + std::chrono::days(s.round));
        g.team1 = team_id(s.home);
        g.team2 = team_id(s.away);

        for (int t : {s.home, s.away}) {
            const std::string tid = team_id(t);
            ++book.games_per_team[tid];
            const auto roster = roster_at(t, s.round);

            std::vector<bool> plays(roster.size());
            bool any = false;
            for (std::size_t i = 0; i < roster.size(); ++i) {
                const bool traded = std::any_of(trades.begin(), trades.end(),
                                                [&](const Trade& tr) { return tr.player == roster[i]; });
                const bool out = missing.count(roster[i]) || (!traded && miss(rng));
                plays[i] = !out;
                any = any || !out;
            }
            if (!any) {
                const auto it = std::find_if(roster.begin(), roster.end(),
                                             [&](const std::string& id) { return !missing.count(id); });
                if (it == roster.end()) throw InvalidConfig("team " + tid + " has no player able to play");
                plays[static_cast<std::size_t>(it - roster.begin())] = true;
            }

            FieldMask zeroed;
            for (int f = 1; f < kFieldCount; ++f) zeroed[static_cast<std::size_t>(f)] = zero_field(rng);
            if (const auto fz = forced_zero.find(t); fz != forced_zero.end()) zeroed |= fz->second;

            std::vector<PlayerGameLine> active;
            for (std::size_t i = 0; i < roster.size(); ++i) {
                PlayerGameLine l;
                l.player_id = roster[i];
                l.player_name = names[roster[i]];
                l.team_id = tid;
                l.game_id = g.game_id;
                if (!plays[i]) {
                    ++book.missed_games[roster[i]];
                    g.inactive_lines.push_back(std::move(l));
                    continue;
                }
                for (int f = 0; f < kFieldCount; ++f) {
                    const auto fid = static_cast<FieldId>(f);
                    double v = 0.0;
                    if (fid == FieldId::MIN) {
                        v = round2(minutes(rng));
                    } else if (fid == FieldId::ODIS || fid == FieldId::DDIS) {
                        v = round2(distance(rng));
                    } else {
                        v = count(rng);
                    }
                    l.values[f] = zeroed[static_cast<std::size_t>(f)] ? 0.0 : v;
                }
                ++book.games_played[roster[i]];
                active.push_back(std::move(l));
            }
            // Every field not planted as zero gets a positive team total.
            for (int f = 0; f < kFieldCount; ++f) {
                if (zeroed[static_cast<std::size_t>(f)]) continue;
                double total = 0.0;
                for (const auto& l : active) total += l.values[f];
                if (!(total > 0.0)) active.front().values[f] = 1.0;
            }
            if (cfg.realistic) {
                // Work in hundredths so the rounded minutes still add to 240.
                double total = 0.0;
                for (const auto& l : active) total += l[FieldId::MIN];
                std::vector<long> cents;
                long sum = 0;
                for (const auto& l : active) {
                    cents.push_back(std::max(1L, std::lround(l[FieldId::MIN] * 24000.0 / total)));
                    sum += cents.back();
                }
                auto big = std::max_element(cents.begin(), cents.end());
                *big += 24000 - sum;
                for (std::size_t i = 0; i < active.size(); ++i) active[i][FieldId::MIN] = static_cast<double>(cents[i]) / 100.0;
            }
            book.active_lines += active.size();
            book.zeroed[{g.game_id, tid}] = zeroed;
            for (auto& l : active) g.lines.push_back(std::move(l));
        }
        season.dataset.games.push_back(std::move(g));
    }
    sort_games(season.dataset);

    for (const auto& [id, nm] : names) {
        if (book.games_played[id] + book.missed_games[id] == 0) {
            book.games_played.erase(id);
            book.missed_games.erase(id);
            continue;
        }
        std::size_t len = 0;
        const auto tr = std::find_if(trades.begin(), trades.end(), [&](const Trade& x) { return x.player == id; });
        for (const auto& s : schedule) {
            for (int t : {s.home, s.away}) {
                const int home = home_of[id];
                if (tr == trades.end() ? t == home : t == team_of(id, home, s.round)) ++len;
            }
        }
        book.schedule_length[id] = len;
    }
    return season;
}

void write_synth(const SynthSeason& season, const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::ofstream games(out_dir / "games.csv");
    write_games(games, season.dataset);
    std::ofstream sal(out_dir / "salaries.csv");
    write_salaries(sal, season.salaries);
    if (!games || !sal) throw Error("cannot write to '" + out_dir.string() + "'");
}

double irr_oracle(double investment, const FlowVector<double>& flows)
{
    if (!(investment > 0.0)) throw NoSignChange("investment must be positive");
    const auto value = [&](double rate) {
        const double x = 1.0 / (1.0 + rate);
        double acc = 0.0;
        for (Eigen::Index i = flows.size() - 1; i >= 0; --i) acc = (acc + flows[i]) * x;
        return acc - investment;
    };
    const auto grid = [](int k) { return -0.999 + 1e-3 * k; };
    constexpr int kLast = 10999; // grid(kLast) == 10

    double lo = grid(0);
    if (!(value(lo) > 0.0)) throw NoSignChange("NPV not positive at the low end of the scan");
    double hi = lo;
    int k = 1;
    for (; k <= kLast; ++k) {
        hi = grid(k);
        if (value(hi) <= 0.0) break;
        lo = hi;
    }
    if (k > kLast) throw NoSignChange("NPV still positive at the high end of the scan");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (value(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double irr_oracle(const CashFlowSeries& series)
{
    return irr_oracle(series.cf0, series.flows);
}

} // namespace gcproi
