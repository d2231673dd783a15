#pragma once

#include "gcproi/boxscore.hpp"
#include "gcproi/errors.hpp"
#include "gcproi/fields.hpp"
#include "gcproi/summation.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace gcproi {

// ---------------------------------------------------------------------------
// Dense kernels. `stats` is always players-by-fields for one team-game.
// ---------------------------------------------------------------------------

/// Team total of every field.
template <typename Derived>
FieldRow<typename Derived::Scalar> field_totals(const Eigen::MatrixBase<Derived>& stats)
{
    static_assert(Derived::ColsAtCompileTime == kFieldCount || Derived::ColsAtCompileTime == Eigen::Dynamic);
    return compensated_colwise_sum(stats);
}

/// Fields whose team total is strictly positive.
template <typename Scalar>
FieldMask positive_fields(const FieldRow<Scalar>& totals)
{
    FieldMask m;
    for (int f = 0; f < kFieldCount; ++f) m[f] = totals[f] > Scalar(0);
    return m;
}

/// 1 / |active|. The caller guarantees a non-empty mask.
template <typename Scalar>
Scalar equal_weight(const FieldMask& active)
{
    return Scalar(1) / static_cast<Scalar>(active.count());
}

/// Contribution share of every player: the weighted sum, over the active
/// fields, of the player's fraction of the team total.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
contribution_shares(const Eigen::MatrixBase<Derived>& stats, const FieldRow<typename Derived::Scalar>& totals,
                    const FieldMask& active)
{
    using Scalar = typename Derived::Scalar;
    StatMatrix<Scalar> ratios(stats.rows(), kFieldCount);
    for (int f = 0; f < kFieldCount; ++f) {
        if (active[f]) {
            ratios.col(f) = stats.col(f) / totals[f];
        } else {
            ratios.col(f).setZero();
        }
    }
    return equal_weight<Scalar>(active) * compensated_rowwise_sum(ratios);
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> contribution_shares(const Eigen::MatrixBase<Derived>& stats)
{
    const auto totals = field_totals(stats);
    const FieldMask active = positive_fields(totals);
    if (active.none()) throw EmptyActiveSet("", "");
    return contribution_shares(stats, totals, active);
}

/// Largest share a player can reach given his minutes and possessions share:
/// he cannot own more of MIN and POSS than he recorded.
template <typename Scalar>
Scalar share_upper_bound(Scalar weight, Scalar min_player, Scalar min_team, Scalar poss_player, Scalar poss_team)
{
    if (!(min_team > Scalar(0)) || !(poss_team > Scalar(0))) {
        throw DivisionDomain("upper bound needs positive team MIN and POSS totals");
    }
    return Scalar(1) - weight * ((min_team - min_player) / min_team + (poss_team - poss_player) / poss_team);
}

// ---------------------------------------------------------------------------
// Game-level API
// ---------------------------------------------------------------------------

struct TeamGameTotals {
    std::string game_id;
    std::string team_id;
    FieldRow<double> totals = FieldRow<double>::Zero();

    double operator[](FieldId f) const { return totals[index(f)]; }
};

struct ActiveFieldSet {
    FieldMask fields;

    std::size_t size() const { return fields.count(); }
    bool contains(FieldId f) const { return fields[index(f)]; }
};

struct CategoryWeight {
    double value = 0.0;
};

struct PlayerGcp {
    std::string player_id;
    double gcp = 0.0;
};

struct TeamGcp {
    std::string team_id;
    CategoryWeight weight;
    ActiveFieldSet active;
    std::vector<PlayerGcp> players; ///< active players only, roster order

    const PlayerGcp* find(std::string_view player_id) const;
    double sum() const;
};

struct GameGcpReport {
    std::string game_id;
    std::array<TeamGcp, 2> teams;

    /// Throws UnknownTeam.
    const TeamGcp& team(std::string_view team_id) const;
};

/// Throws UnknownTeam when the team is not in the game.
TeamGameTotals team_totals(const GameRecord& game, std::string_view team);

/// Throws EmptyActiveSet when every total is zero.
ActiveFieldSet active_fields(const TeamGameTotals& totals);

CategoryWeight omega(const ActiveFieldSet& set);

/// Throws UnknownPlayer when the player has no active line for that team.
double player_gcp(const GameRecord& game, std::string_view team, std::string_view player);

GameGcpReport game_report(const GameRecord& game);

double gcp_upper_bound(const GameRecord& game, std::string_view team, std::string_view player);

/// One report per game, same order as ds.games. Games are processed in
/// parallel; the result does not depend on the thread count.
std::vector<GameGcpReport> season_reports(const SeasonDataset& ds, unsigned threads = 0);

/// Every strictly positive GCP in the season.
std::vector<double> nonzero_gcp_distribution(const SeasonDataset& ds);
std::vector<double> nonzero_gcp_distribution(const std::vector<GameGcpReport>& reports);

} // namespace gcproi
