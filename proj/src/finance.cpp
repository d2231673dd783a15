#include "gcproi/finance.hpp"

#include <algorithm>
#include <limits>

namespace gcproi {

SingleGameValue sgv(std::int64_t total_salary, std::int64_t games)
{
    if (total_salary <= 0 || games <= 0) throw NonPositiveInput("total salary and game count must be positive");
    SingleGameValue v;
    v.total_salary = total_salary;
    v.game_slots = 2 * games;
    v.dollars = static_cast<double>(total_salary) / static_cast<double>(v.game_slots);
    return v;
}

SingleGameValue sgv_fixed(double dollars)
{
    if (!(dollars > 0.0) || !std::isfinite(dollars)) throw NonPositiveInput("single game value must be positive");
    SingleGameValue v;
    v.dollars = dollars;
    return v;
}

BreakEven breakeven_gcp(double salary, std::int64_t n_games, const SingleGameValue& value)
{
    if (!(salary > 0.0) || n_games <= 0 || !(value.dollars > 0.0)) {
        throw NonPositiveInput("salary, game count and single game value must be positive");
    }
    BreakEven b;
    b.cash_flow_per_game = salary / static_cast<double>(n_games);
    b.gcp = b.cash_flow_per_game / value.dollars;
    return b;
}

int PlayerSchedule::games_played() const
{
    return static_cast<int>(std::count(played.begin(), played.end(), true));
}

SeasonIndex::SeasonIndex(const SeasonDataset& ds, const std::vector<GameGcpReport>& reports)
    : ds_(&ds), reports_(&reports)
{
    if (reports.size() != ds.games.size()) throw Error("season index needs one report per game");
    for (std::size_t gi = 0; gi < ds.games.size(); ++gi) {
        const auto& g = ds.games[gi];
        team_games_[g.team1].push_back(gi);
        if (g.team2 != g.team1) team_games_[g.team2].push_back(gi);
        for (const auto& l : g.lines) names_.emplace(l.player_id, l.player_name);
        for (const auto& l : g.inactive_lines) {
            names_.emplace(l.player_id, l.player_name);
            appearances_[l.player_id].push_back({gi, l.team_id, 0.0, false});
        }
        for (const auto& t : reports[gi].teams) {
            for (const auto& p : t.players) appearances_[p.player_id].push_back({gi, t.team_id, p.gcp, true});
        }
    }
    players_.reserve(appearances_.size());
    for (const auto& [id, a] : appearances_) players_.push_back(id);
}

bool SeasonIndex::has_player(std::string_view player_id) const
{
    return appearances_.find(player_id) != appearances_.end();
}

const std::string& SeasonIndex::player_name(std::string_view player_id) const
{
    const auto it = names_.find(player_id);
    if (it == names_.end()) throw UnknownPlayer("unknown player '" + std::string(player_id) + "'");
    return it->second;
}

const std::vector<std::size_t>& SeasonIndex::team_games(std::string_view team_id) const
{
    const auto it = team_games_.find(team_id);
    if (it == team_games_.end()) throw UnknownTeam("unknown team '" + std::string(team_id) + "'");
    return it->second;
}

PlayerSchedule SeasonIndex::schedule(std::string_view player_id) const
{
    const auto it = appearances_.find(player_id);
    if (it == appearances_.end()) {
        throw UnknownPlayer("player '" + std::string(player_id) + "' is not listed in any game");
    }
    const auto& apps = it->second;

    struct Window {
        std::string team;
        std::size_t first;
        std::size_t last;
    };
    std::vector<Window> windows;
    for (const auto& a : apps) {
        auto w = std::find_if(windows.begin(), windows.end(), [&](const Window& x) { return x.team == a.team; });
        if (w == windows.end()) {
            windows.push_back({a.team, a.game, a.game});
        } else {
            w->first = std::min(w->first, a.game);
            w->last = std::max(w->last, a.game);
        }
    }
    std::sort(windows.begin(), windows.end(), [](const Window& x, const Window& y) { return x.first < y.first; });
    for (std::size_t k = 1; k < windows.size(); ++k) {
        const auto& prev = windows[k - 1];
        const auto& next = windows[k];
        if (ds_->games[next.first].date <= ds_->games[prev.last].date) {
            throw StintOverlap("player '" + std::string(player_id) + "' appears for '" + next.team + "' on "
                               + format_date(ds_->games[next.first].date) + " before leaving '" + prev.team + "'");
        }
    }

    PlayerSchedule s;
    s.player_id = std::string(player_id);
    for (std::size_t k = 0; k < windows.size(); ++k) {
        const bool first_stint = k == 0;
        const bool last_stint = k + 1 == windows.size();
        const std::size_t through = last_stint ? std::numeric_limits<std::size_t>::max() : windows[k].last;

        Stint st{windows[k].team, s.games.size(), 0};
        for (std::size_t gi : team_games(windows[k].team)) {
            if (!first_stint && ds_->games[gi].date <= ds_->games[windows[k - 1].last].date) continue;
            if (gi > through) continue;
            s.games.push_back(gi);
            s.teams.push_back(windows[k].team);
            const auto a = std::find_if(apps.begin(), apps.end(),
                                        [&](const Appearance& x) { return x.game == gi && x.team == windows[k].team; });
            const bool played = a != apps.end() && a->played;
            s.played.push_back(played);
            s.gcp.push_back(played ? a->gcp : 0.0);
            ++st.count;
        }
        s.stints.push_back(std::move(st));
    }
    if (s.games.empty()) throw EmptySchedule("player '" + std::string(player_id) + "' has an empty schedule");
    return s;
}

CashFlowSeries cash_flows(const SeasonIndex& index, std::string_view player_id, const SingleGameValue& value,
                          double salary)
{
    const PlayerSchedule s = index.schedule(player_id);
    CashFlowSeries cf;
    cf.player_id = std::string(player_id);
    cf.cf0 = salary;
    cf.flows.resize(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        cf.flows[static_cast<Eigen::Index>(i)] = s.played[i] ? value.dollars * s.gcp[i] : 0.0;
        cf.schedule.push_back(index.dataset().games[s.games[i]].game_id);
    }
    return cf;
}

CashFlowSeries cash_flows(const SeasonDataset& ds, const std::vector<GameGcpReport>& reports,
                          std::string_view player_id, const SingleGameValue& value, double salary)
{
    return cash_flows(SeasonIndex(ds, reports), player_id, value, salary);
}

PvGcp pvgcp(const SeasonIndex& index, std::string_view player_id)
{
    const PlayerSchedule s = index.schedule(player_id);
    CompensatedSum<double> acc;
    for (double g : s.gcp) acc += g;
    return {std::string(player_id), acc.value(), s.games_played(), s.size()};
}

PvGcp pvgcp(const SeasonDataset& ds, const std::vector<GameGcpReport>& reports, std::string_view player_id)
{
    return pvgcp(SeasonIndex(ds, reports), player_id);
}

double npv(double rate, const CashFlowSeries& series)
{
    return npv(rate, series.cf0, series.flows);
}

RoiResult<double> irr(const CashFlowSeries& series, IrrOptions opts)
{
    return irr(series.cf0, series.flows, opts);
}

} // namespace gcproi
