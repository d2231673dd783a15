#include "gcproi/boxscore.hpp"

#include "gcproi/errors.hpp"

#include "csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <utility>

namespace gcproi {

static_assert(kSourceCount == kFieldCount);

namespace {

constexpr std::array<std::string_view, 6> kMetaColumns = {
    "game_id", "date", "team", "opponent", "player_id", "player_name",
};

std::string make_header(const auto& names)
{
    std::string h;
    for (auto c : kMetaColumns) {
        h += c;
        h += ',';
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) h += ',';
        h += names[i];
    }
    return h;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view s)
{
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    const auto y = csv::parse_int(s.substr(0, 4));
    const auto m = csv::parse_int(s.substr(5, 2));
    const auto d = csv::parse_int(s.substr(8, 2));
    if (!y || !m || !d || *m < 1 || *d < 1) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year(static_cast<int>(*y)),
                                    std::chrono::month(static_cast<unsigned>(*m)),
                                    std::chrono::day(static_cast<unsigned>(*d))};
    if (!ymd.ok()) return std::nullopt;
    return ymd;
}

bool getline_stripped(std::istream& in, std::string& line)
{
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

bool blank(std::string_view s)
{
    return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::ifstream open_or_throw(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw SchemaError(0, 0, "cannot open '" + path.string() + "'");
    return in;
}

void check_header(const std::vector<std::string>& got, std::string_view expected)
{
    const auto want = *csv::split(expected);
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (i >= got.size()) throw SchemaError(1, i + 1, "missing column '" + want[i] + "'");
        if (got[i] != want[i]) {
            throw SchemaError(1, i + 1, "expected column '" + want[i] + "', found '" + got[i] + "'");
        }
    }
    if (got.size() > want.size()) {
        throw SchemaError(1, want.size() + 1, "unexpected column '" + got[want.size()] + "'");
    }
}

} // namespace

std::vector<const PlayerGameLine*> GameRecord::roster(std::string_view team) const
{
    std::vector<const PlayerGameLine*> out;
    for (const auto& l : lines) {
        if (l.team_id == team) out.push_back(&l);
    }
    return out;
}

StatMatrix<double> GameRecord::stat_matrix(std::string_view team) const
{
    const auto r = roster(team);
    StatMatrix<double> m(static_cast<Eigen::Index>(r.size()), kFieldCount);
    for (std::size_t i = 0; i < r.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = r[i]->values;
    return m;
}

std::vector<std::string> SeasonDataset::teams() const
{
    std::set<std::string> s;
    for (const auto& g : games) {
        s.insert(g.team1);
        s.insert(g.team2);
    }
    return {s.begin(), s.end()};
}

std::map<std::string, std::string> SeasonDataset::player_names() const
{
    std::map<std::string, std::string> out;
    for (const auto& g : games) {
        for (const auto& l : g.lines) out.emplace(l.player_id, l.player_name);
        for (const auto& l : g.inactive_lines) out.emplace(l.player_id, l.player_name);
    }
    return out;
}

const GameRecord* SeasonDataset::find_game(std::string_view game_id) const
{
    for (const auto& g : games) {
        if (g.game_id == game_id) return &g;
    }
    return nullptr;
}

void sort_games(SeasonDataset& ds)
{
    std::stable_sort(ds.games.begin(), ds.games.end(), [](const GameRecord& a, const GameRecord& b) {
        return std::tie(a.date, a.game_id) < std::tie(b.date, b.game_id);
    });
}

std::int64_t SalaryTable::total() const
{
    std::int64_t s = 0;
    for (const auto& [id, e] : entries) s += e.salary_usd;
    return s;
}

const SalaryEntry* SalaryTable::find(std::string_view player_id) const
{
    const auto it = entries.find(std::string(player_id));
    return it == entries.end() ? nullptr : &it->second;
}

PlayerGameLine derive_fields(const RawStatLine& raw, DeriveOptions opts)
{
    using S = SourceStat;
    using F = FieldId;
    const auto src = [&](S s) { return raw[s]; };

    PlayerGameLine out;
    out.player_id = raw.player_id;

    // Fields that pass through unchanged share their position in both orders.
    for (int i = 0; i < kFieldCount; ++i) out.values[i] = raw.values[i];

    const double fg2o = src(S::FGM) - src(S::FG3M);
    out[F::FG2O] = fg2o;
    out[F::FG2X] = (src(S::FGA) - src(S::FG3A)) - fg2o;
    out[F::FG3O] = src(S::FG3M);
    out[F::FG3X] = src(S::FG3A) - src(S::FG3M);
    out[F::FTO] = src(S::FTM);
    out[F::FTX] = src(S::FTA) - src(S::FTM);
    out[F::AC2P] = src(S::Contested2PT) - src(S::BLK);
    out[F::DFGO] = src(S::DFGM);
    out[F::DFGX] = src(S::DFGA) - src(S::DFGM);
    out[F::APM] = src(S::PassesMade) - src(S::SecondaryAssist) - src(S::PotentialAssists);
    out[F::AORC] = src(S::OREBChances) - src(S::ContestedOREB);
    out[F::ADRC] = src(S::DREBChances) - src(S::ContestedDREB);

    for (int i = 0; i < kFieldCount; ++i) {
        double& v = out.values[i];
        if (!std::isfinite(v)) throw NegativeDerivedField(std::string(kFieldNames[i]), v);
        if (v < 0.0) {
            if (!opts.clamp_negative) throw NegativeDerivedField(std::string(kFieldNames[i]), v);
            v = 0.0;
        }
    }
    return out;
}

RawStatLine underive_fields(const PlayerGameLine& line)
{
    using S = SourceStat;
    using F = FieldId;
    RawStatLine raw;
    raw.player_id = line.player_id;
    for (int i = 0; i < kFieldCount; ++i) raw.values[i] = line.values[i];

    raw[S::FGM] = line[F::FG2O] + line[F::FG3O];
    raw[S::FGA] = line[F::FG2O] + line[F::FG2X] + line[F::FG3O] + line[F::FG3X];
    raw[S::FG3M] = line[F::FG3O];
    raw[S::FG3A] = line[F::FG3O] + line[F::FG3X];
    raw[S::FTM] = line[F::FTO];
    raw[S::FTA] = line[F::FTO] + line[F::FTX];
    raw[S::Contested2PT] = line[F::AC2P] + line[F::BLK];
    raw[S::DFGM] = line[F::DFGO];
    raw[S::DFGA] = line[F::DFGO] + line[F::DFGX];
    raw[S::PassesMade] = line[F::APM] + line[F::AST2] + line[F::PAST];
    raw[S::OREBChances] = line[F::AORC] + line[F::OCRB];
    raw[S::DREBChances] = line[F::ADRC] + line[F::DCRB];
    return raw;
}

std::string games_header() { return make_header(kFieldNames); }
std::string raw_games_header() { return make_header(kSourceNames); }

SeasonDataset parse_games(std::istream& in, ParseOptions opts)
{
    const bool raw = opts.format == GamesFormat::Raw;
    std::string line;
    if (!getline_stripped(in, line)) throw SchemaError(1, 0, "missing header");
    const auto header = csv::split(line);
    if (!header) throw SchemaError(1, 0, "unterminated quote");
    check_header(*header, raw ? raw_games_header() : games_header());
    const std::size_t ncols = header->size();

    SeasonDataset ds;
    std::unordered_map<std::string, std::size_t> game_index;
    std::set<std::pair<std::string, std::string>> seen;

    std::size_t lineno = 1;
    while (getline_stripped(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto cells = csv::split(line);
        if (!cells) throw SchemaError(lineno, 0, "unterminated quote");
        if (cells->size() != ncols) {
            throw SchemaError(lineno, std::min(cells->size(), ncols) + 1,
                              "expected " + std::to_string(ncols) + " columns, found "
                                  + std::to_string(cells->size()));
        }
        const auto& c = *cells;
        for (std::size_t i : {0u, 2u, 3u, 4u}) {
            if (c[i].empty()) throw SchemaError(lineno, i + 1, "empty " + std::string(kMetaColumns[i]));
        }
        const auto date = parse_date(c[1]);
        if (!date) throw SchemaError(lineno, 2, "invalid ISO-8601 date '" + c[1] + "'");
        if (c[2] == c[3]) throw SchemaError(lineno, 4, "team and opponent are both '" + c[2] + "'");

        Eigen::Matrix<double, 1, kFieldCount> vals;
        for (int j = 0; j < kFieldCount; ++j) {
            const std::size_t col = kMetaColumns.size() + static_cast<std::size_t>(j);
            const auto v = csv::parse_double(c[col]);
            if (!v || !std::isfinite(*v)) {
                throw SchemaError(lineno, col + 1, "invalid number '" + c[col] + "'");
            }
            vals[j] = *v;
        }

        PlayerGameLine pl;
        if (raw) {
            RawStatLine r;
            r.player_id = c[4];
            r.values = vals;
            try {
                pl = derive_fields(r, opts.derive);
            } catch (const NegativeDerivedField& e) {
                const auto f = field_from_name(e.field());
                throw SchemaError(lineno, f ? kMetaColumns.size() + static_cast<std::size_t>(index(*f)) + 1 : 0,
                                  e.what());
            }
        } else {
            pl.values = vals;
        }
        pl.player_id = c[4];
        pl.player_name = c[5];
        pl.team_id = c[2];
        pl.game_id = c[0];

        if (!seen.emplace(pl.player_id, pl.game_id).second) throw DuplicateLine(pl.player_id, pl.game_id, lineno);

        auto [it, inserted] = game_index.try_emplace(c[0], ds.games.size());
        if (inserted) {
            GameRecord g;
            g.game_id = c[0];
            g.date = *date;
            g.team1 = c[2];
            g.team2 = c[3];
            ds.games.push_back(std::move(g));
        }
        GameRecord& g = ds.games[it->second];
        if (g.date != *date) throw SchemaError(lineno, 2, "date differs from earlier rows of game '" + g.game_id + "'");
        if (!(g.has_team(c[2]) && g.has_team(c[3]))) {
            throw SchemaError(lineno, 3, "teams differ from earlier rows of game '" + g.game_id + "'");
        }

        // Rows with no recorded statistic are not part of the game. Negative
        // values are kept so validation can report them.
        if (!(pl.values.array() != 0.0).any()) {
            g.inactive_lines.push_back(std::move(pl));
            continue;
        }
        g.lines.push_back(std::move(pl));
    }
    sort_games(ds);
    return ds;
}

SeasonDataset parse_games(const std::filesystem::path& path, ParseOptions opts)
{
    auto in = open_or_throw(path);
    return parse_games(in, opts);
}

SalaryTable parse_salaries(std::istream& in)
{
    std::string line;
    if (!getline_stripped(in, line)) throw SchemaError(1, 0, "missing header");
    const auto header = csv::split(line);
    if (!header) throw SchemaError(1, 0, "unterminated quote");
    check_header(*header, "player_id,player_name,salary_usd");

    SalaryTable t;
    std::size_t lineno = 1;
    while (getline_stripped(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto cells = csv::split(line);
        if (!cells) throw SchemaError(lineno, 0, "unterminated quote");
        if (cells->size() != 3) {
            throw SchemaError(lineno, std::min<std::size_t>(cells->size(), 3) + 1,
                              "expected 3 columns, found " + std::to_string(cells->size()));
        }
        const auto& c = *cells;
        if (c[0].empty()) throw SchemaError(lineno, 1, "empty player_id");
        const auto salary = csv::parse_int(c[2]);
        if (!salary) throw SchemaError(lineno, 3, "salary must be integer dollars, found '" + c[2] + "'");
        if (*salary <= 0) throw NonPositiveSalary(c[0]);
        if (!t.entries.try_emplace(c[0], SalaryEntry{c[1], *salary}).second) {
            throw SchemaError(lineno, 1, "duplicate player_id '" + c[0] + "'");
        }
    }
    return t;
}

SalaryTable parse_salaries(const std::filesystem::path& path)
{
    auto in = open_or_throw(path);
    return parse_salaries(in);
}

std::string format_date(std::chrono::year_month_day d)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

void write_games(std::ostream& out, const SeasonDataset& ds)
{
    out << games_header() << '\n';
    for (const auto& g : ds.games) {
        const std::string date = format_date(g.date);
        std::vector<const PlayerGameLine*> all;
        for (const auto& l : g.lines) all.push_back(&l);
        for (const auto& l : g.inactive_lines) all.push_back(&l);
        for (const PlayerGameLine* lp : all) {
            const auto& l = *lp;
            std::vector<std::string> row = {g.game_id, date, l.team_id, g.opponent(l.team_id), l.player_id,
                                            l.player_name};
            for (int j = 0; j < kFieldCount; ++j) row.push_back(csv::shortest(l.values[j]));
            out << csv::join(row) << '\n';
        }
    }
}

void write_salaries(std::ostream& out, const SalaryTable& table)
{
    out << "player_id,player_name,salary_usd\n";
    for (const auto& [id, e] : table.entries) {
        out << csv::join({id, e.player_name, std::to_string(e.salary_usd)}) << '\n';
    }
}

std::string_view name(ViolationKind k)
{
    switch (k) {
    case ViolationKind::NegativeValue: return "NegativeValue";
    case ViolationKind::NonFiniteValue: return "NonFiniteValue";
    case ViolationKind::DuplicateGameId: return "DuplicateGameId";
    case ViolationKind::DuplicateGame: return "DuplicateGame";
    case ViolationKind::DuplicatePlayer: return "DuplicatePlayer";
    case ViolationKind::SameTeams: return "SameTeams";
    case ViolationKind::ForeignTeam: return "ForeignTeam";
    case ViolationKind::EmptyTeam: return "EmptyTeam";
    case ViolationKind::SeasonLength: return "SeasonLength";
    }
    return "Unknown";
}

std::size_t ValidationReport::count(ViolationKind k) const
{
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
}

ValidationReport validate_dataset(const SeasonDataset& ds, ValidateOptions opts)
{
    ValidationReport rep;
    auto add = [&](ViolationKind k, const GameRecord& g, std::string team, std::string player, std::string detail) {
        rep.violations.push_back({k, g.game_id, std::move(team), std::move(player), std::move(detail)});
    };

    std::set<std::string> ids;
    std::set<std::tuple<std::chrono::year_month_day, std::string, std::string>> matchups;
    std::map<std::string, int> games_per_team;

    for (const auto& g : ds.games) {
        if (!ids.insert(g.game_id).second) add(ViolationKind::DuplicateGameId, g, {}, {}, "game id repeated");
        const auto [lo, hi] = std::minmax(g.team1, g.team2);
        if (!matchups.emplace(g.date, lo, hi).second) {
            add(ViolationKind::DuplicateGame, g, {}, {}, "same teams already met on " + format_date(g.date));
        }
        if (g.team1 == g.team2) {
            add(ViolationKind::SameTeams, g, g.team1, {}, "team plays itself");
        } else {
            ++games_per_team[g.team1];
            ++games_per_team[g.team2];
        }

        std::set<std::string> players;
        bool active1 = false;
        bool active2 = false;
        std::vector<const PlayerGameLine*> all;
        for (const auto& l : g.lines) all.push_back(&l);
        for (const auto& l : g.inactive_lines) all.push_back(&l);
        for (const PlayerGameLine* lp : all) {
            const auto& l = *lp;
            if (!g.has_team(l.team_id)) {
                add(ViolationKind::ForeignTeam, g, l.team_id, l.player_id, "team not in this game");
            }
            if (!players.insert(l.player_id).second) {
                add(ViolationKind::DuplicatePlayer, g, l.team_id, l.player_id, "player listed twice");
            }
            for (int j = 0; j < kFieldCount; ++j) {
                const double v = l.values[j];
                if (!std::isfinite(v)) {
                    add(ViolationKind::NonFiniteValue, g, l.team_id, l.player_id, std::string(kFieldNames[j]));
                } else if (v < 0.0) {
                    add(ViolationKind::NegativeValue, g, l.team_id, l.player_id,
                        std::string(kFieldNames[j]) + " = " + csv::shortest(v));
                }
            }
            if (l.active()) {
                if (l.team_id == g.team1) active1 = true;
                if (l.team_id == g.team2) active2 = true;
            }
        }
        if (g.team1 != g.team2) {
            if (!active1) add(ViolationKind::EmptyTeam, g, g.team1, {}, "no active player");
            if (!active2) add(ViolationKind::EmptyTeam, g, g.team2, {}, "no active player");
        }
    }

    if (opts.strict_season) {
        for (const auto& [team, n] : games_per_team) {
            if (n > opts.season_length) {
                rep.violations.push_back({ViolationKind::SeasonLength, {}, team, {},
                                          std::to_string(n) + " games exceed "
                                              + std::to_string(opts.season_length)});
            }
        }
    }
    return rep;
}

} // namespace gcproi
