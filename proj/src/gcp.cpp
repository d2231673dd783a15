#include "gcproi/gcp.hpp"

#include "gcproi/parallel.hpp"

#include <algorithm>

namespace gcproi {

namespace {

void require_team(const GameRecord& game, std::string_view team)
{
    if (!game.has_team(team)) {
        throw UnknownTeam("team '" + std::string(team) + "' did not play in game '" + game.game_id + "'");
    }
}

TeamGcp team_gcp(const GameRecord& game, const std::string& team)
{
    const auto roster = game.roster(team);
    StatMatrix<double> stats(static_cast<Eigen::Index>(roster.size()), kFieldCount);
    for (std::size_t i = 0; i < roster.size(); ++i) stats.row(static_cast<Eigen::Index>(i)) = roster[i]->values;

    const auto totals = field_totals(stats);
    const FieldMask active = positive_fields(totals);
    if (active.none()) throw EmptyActiveSet(game.game_id, team);

    TeamGcp out;
    out.team_id = team;
    out.active.fields = active;
    out.weight.value = equal_weight<double>(active);
    const auto shares = contribution_shares(stats, totals, active);
    for (std::size_t i = 0; i < roster.size(); ++i) {
        if (roster[i]->active()) out.players.push_back({roster[i]->player_id, shares[static_cast<Eigen::Index>(i)]});
    }
    return out;
}

} // namespace

const PlayerGcp* TeamGcp::find(std::string_view player_id) const
{
    const auto it = std::find_if(players.begin(), players.end(),
                                 [&](const PlayerGcp& p) { return p.player_id == player_id; });
    return it == players.end() ? nullptr : &*it;
}

double TeamGcp::sum() const
{
    CompensatedSum<double> acc;
    for (const auto& p : players) acc += p.gcp;
    return acc.value();
}

const TeamGcp& GameGcpReport::team(std::string_view team_id) const
{
    for (const auto& t : teams) {
        if (t.team_id == team_id) return t;
    }
    throw UnknownTeam("team '" + std::string(team_id) + "' not in report for game '" + game_id + "'");
}

TeamGameTotals team_totals(const GameRecord& game, std::string_view team)
{
    require_team(game, team);
    TeamGameTotals t;
    t.game_id = game.game_id;
    t.team_id = std::string(team);
    t.totals = field_totals(game.stat_matrix(team));
    return t;
}

ActiveFieldSet active_fields(const TeamGameTotals& totals)
{
    ActiveFieldSet s{positive_fields(totals.totals)};
    if (s.fields.none()) throw EmptyActiveSet(totals.game_id, totals.team_id);
    return s;
}

CategoryWeight omega(const ActiveFieldSet& set)
{
    if (set.fields.none()) throw EmptyActiveSet("", "");
    return {equal_weight<double>(set.fields)};
}

double player_gcp(const GameRecord& game, std::string_view team, std::string_view player)
{
    require_team(game, team);
    const TeamGcp t = team_gcp(game, std::string(team));
    const PlayerGcp* p = t.find(player);
    if (!p) {
        throw UnknownPlayer("player '" + std::string(player) + "' has no active line for '" + std::string(team)
                            + "' in game '" + game.game_id + "'");
    }
    return p->gcp;
}

GameGcpReport game_report(const GameRecord& game)
{
    GameGcpReport r;
    r.game_id = game.game_id;
    r.teams[0] = team_gcp(game, game.team1);
    r.teams[1] = team_gcp(game, game.team2);
    return r;
}

double gcp_upper_bound(const GameRecord& game, std::string_view team, std::string_view player)
{
    const auto totals = team_totals(game, team);
    const auto roster = game.roster(team);
    const auto it = std::find_if(roster.begin(), roster.end(),
                                 [&](const PlayerGameLine* l) { return l->player_id == player; });
    if (it == roster.end()) {
        throw UnknownPlayer("player '" + std::string(player) + "' not on '" + std::string(team) + "' in game '"
                            + game.game_id + "'");
    }
    const double weight = omega(active_fields(totals)).value;
    return share_upper_bound(weight, (**it)[FieldId::MIN], totals[FieldId::MIN], (**it)[FieldId::POSS],
                             totals[FieldId::POSS]);
}

std::vector<GameGcpReport> season_reports(const SeasonDataset& ds, unsigned threads)
{
    std::vector<GameGcpReport> out(ds.games.size());
    parallel_for(ds.games.size(), [&](std::size_t i) { out[i] = game_report(ds.games[i]); }, threads);
    return out;
}

std::vector<double> nonzero_gcp_distribution(const std::vector<GameGcpReport>& reports)
{
    std::vector<double> out;
    for (const auto& r : reports) {
        for (const auto& t : r.teams) {
            for (const auto& p : t.players) {
                if (p.gcp > 0.0) out.push_back(p.gcp);
            }
        }
    }
    return out;
}

std::vector<double> nonzero_gcp_distribution(const SeasonDataset& ds)
{
    return nonzero_gcp_distribution(season_reports(ds));
}

} // namespace gcproi
