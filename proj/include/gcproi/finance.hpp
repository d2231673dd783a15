#pragma once

#include "gcproi/boxscore.hpp"
#include "gcproi/errors.hpp"
#include "gcproi/gcp.hpp"
#include "gcproi/summation.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gcproi {

template <typename Scalar>
using FlowVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// Discounting and the rate-of-return solver
// ---------------------------------------------------------------------------

/// Net present value of an investment repaid by flows at periods 1..N:
/// sum_i flows[i-1] / (1+rate)^i - investment.
template <typename Derived>
typename Derived::Scalar npv(typename Derived::Scalar rate, typename Derived::Scalar investment,
                             const Eigen::MatrixBase<Derived>& flows)
{
    using Scalar = typename Derived::Scalar;
    using std::exp;
    using std::log1p;
    if (!(rate > Scalar(-1))) throw DomainError("discount rate must exceed -1");
    const Scalar log_growth = log1p(rate);
    CompensatedSum<Scalar> acc;
    for (Eigen::Index i = 0; i < flows.size(); ++i) {
        if (flows(i) != Scalar(0)) acc += flows(i) * exp(-static_cast<Scalar>(i + 1) * log_growth);
    }
    acc += -investment;
    return acc.value();
}

template <typename Scalar>
struct RoiResult {
    Scalar rate{};
    Scalar residual{};   ///< NPV at `rate`
    int iterations = 0;  ///< expansion plus refinement steps
    Scalar lo{};         ///< final sign-change bracket, lo <= rate <= hi
    Scalar hi{};
    bool converged = false;
};

struct IrrOptions {
    double abs_tol = 1e-6;    ///< on NPV, in the flows' currency
    double rate_tol = 1e-12;  ///< bracket width
    int max_iterations = 1000;
};

/// Solves npv(r) = 0. With a positive investment and non-negative flows, not
/// all zero, NPV falls strictly from +inf at r -> -1 to -investment, so the
/// root is unique. The bracket starts at (-0.99, 1), moves the lower end
/// toward -1 and doubles the upper end until the sign changes, then Brent's
/// method (bisection with inverse quadratic / secant steps) refines it until
/// |NPV| <= abs_tol and the bracket is narrower than rate_tol.
///
/// Throws NonPositiveInvestment, DomainError for a negative or non-finite
/// flow, and AllZeroFlows when nothing is ever paid back.
template <typename Derived>
RoiResult<typename Derived::Scalar> irr(typename Derived::Scalar investment, const Eigen::MatrixBase<Derived>& flows,
                                        IrrOptions opts = {})
{
    using Scalar = typename Derived::Scalar;
    using std::abs;
    using std::isfinite;
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();

    if (!(investment > Scalar(0)) || !isfinite(investment)) throw NonPositiveInvestment("investment must be positive");
    bool any_positive = false;
    for (Eigen::Index i = 0; i < flows.size(); ++i) {
        if (!(flows(i) >= Scalar(0)) || !isfinite(flows(i))) throw DomainError("cash flows must be finite and >= 0");
        any_positive = any_positive || flows(i) > Scalar(0);
    }
    if (!any_positive) throw AllZeroFlows("every cash flow is zero");

    const auto f = [&](Scalar r) { return npv(r, investment, flows); };
    RoiResult<Scalar> out;

    Scalar a = Scalar(-0.99);
    Scalar fa = f(a);
    while (fa < Scalar(0)) {
        // Halve the distance to -1; NPV grows without bound there.
        const Scalar next = Scalar(-1) + (a + Scalar(1)) / Scalar(16);
        if (!(next > Scalar(-1)) || next == a) throw NoSignChange("no sign change approaching -1");
        a = next;
        fa = f(a);
        ++out.iterations;
    }
    Scalar b = Scalar(1);
    Scalar fb = f(b);
    while (fb > Scalar(0)) {
        a = b;
        fa = fb;
        b *= Scalar(2);
        if (!isfinite(b)) throw NoSignChange("no sign change on the positive axis");
        fb = f(b);
        ++out.iterations;
    }
    if (fa == Scalar(0)) return {a, fa, out.iterations, a, a, true};
    if (fb == Scalar(0)) return {b, fb, out.iterations, b, b, true};

    // Brent-Dekker. b is the best estimate, c holds the opposite sign.
    Scalar c = a;
    Scalar fc = fa;
    Scalar d = b - a;
    Scalar e = d;
    for (int it = 0; it < opts.max_iterations; ++it, ++out.iterations) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (abs(fc) < abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const Scalar width = abs(c - b);
        const Scalar tol1 = Scalar(2) * eps * abs(b) + std::numeric_limits<Scalar>::min();
        const Scalar m = Scalar(0.5) * (c - b);
        const bool done = fb == Scalar(0) || (width <= Scalar(opts.rate_tol) && abs(fb) <= Scalar(opts.abs_tol));
        if (done || abs(m) <= tol1) {
            // A bracket that cannot shrink further still counts when the
            // residual is within tolerance.
            out.converged = done || abs(fb) <= Scalar(opts.abs_tol);
            break;
        }
        if (abs(e) >= tol1 && abs(fa) > abs(fb)) {
            Scalar p;
            Scalar q;
            const Scalar s = fb / fa;
            if (a == c) {
                p = Scalar(2) * m * s;
                q = Scalar(1) - s;
            } else {
                const Scalar qa = fa / fc;
                const Scalar r = fb / fc;
                p = s * (Scalar(2) * m * qa * (qa - r) - (b - a) * (r - Scalar(1)));
                q = (qa - Scalar(1)) * (r - Scalar(1)) * (s - Scalar(1));
            }
            if (p > 0) {
                q = -q;
            } else {
                p = -p;
            }
            const Scalar min1 = Scalar(3) * m * q - abs(tol1 * q);
            const Scalar min2 = abs(e * q);
            if (Scalar(2) * p < (min1 < min2 ? min1 : min2)) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += abs(d) > tol1 ? d : (m > 0 ? tol1 : -tol1);
        fb = f(b);
    }

    out.rate = b;
    out.residual = fb;
    out.lo = b < c ? b : c;
    out.hi = b < c ? c : b;
    return out;
}

// ---------------------------------------------------------------------------
// Currency conversion
// ---------------------------------------------------------------------------

struct SingleGameValue {
    double dollars = 0.0;
    std::int64_t total_salary = 0; ///< 0 when the value was set directly
    std::int64_t game_slots = 0;   ///< 2 x games; 0 when set directly
};

/// League payroll over every team-game slot. Throws NonPositiveInput.
SingleGameValue sgv(std::int64_t total_salary, std::int64_t games);

/// A fixed per-slot value, e.g. from an override flag.
SingleGameValue sgv_fixed(double dollars);

struct BreakEven {
    double cash_flow_per_game = 0.0;
    double gcp = 0.0;
};

/// Constant per-game share that repays `salary` at a zero rate over
/// `n_games`. Throws NonPositiveInput.
BreakEven breakeven_gcp(double salary, std::int64_t n_games, const SingleGameValue& value);

// ---------------------------------------------------------------------------
// Player schedules and cash flows
// ---------------------------------------------------------------------------

/// A run of games with one team.
struct Stint {
    std::string team_id;
    std::size_t first = 0; ///< index into the schedule
    std::size_t count = 0;
};

struct PlayerSchedule {
    std::string player_id;
    std::vector<std::size_t> games;   ///< indices into SeasonDataset::games, chronological
    std::vector<std::string> teams;   ///< team for each entry of `games`
    std::vector<bool> played;
    std::vector<double> gcp;          ///< 0 for a missed game
    std::vector<Stint> stints;

    std::size_t size() const { return games.size(); }
    int games_played() const;
};

/// Per-team schedules and per-player appearances of a season, with the
/// game reports they were built from.
class SeasonIndex {
public:
    SeasonIndex(const SeasonDataset& ds, const std::vector<GameGcpReport>& reports);

    const SeasonDataset& dataset() const { return *ds_; }
    const std::vector<GameGcpReport>& reports() const { return *reports_; }

    /// Player ids listed in at least one game, active or not, sorted.
    const std::vector<std::string>& players() const { return players_; }
    bool has_player(std::string_view player_id) const;
    const std::string& player_name(std::string_view player_id) const;

    const std::vector<std::size_t>& team_games(std::string_view team_id) const;

    /// Chronological schedule of every game of the player's teams inside his
    /// stint windows. A single-team player gets the team's whole season. For
    /// several teams, ordered by first appearance, the first window opens at
    /// the season start, each later window opens after the last appearance
    /// for the previous team, and the last closes at the season end.
    /// Throws UnknownPlayer, StintOverlap, EmptySchedule.
    PlayerSchedule schedule(std::string_view player_id) const;

private:
    struct Appearance {
        std::size_t game;
        std::string team;
        double gcp;
        bool played;
    };

    const SeasonDataset* ds_;
    const std::vector<GameGcpReport>* reports_;
    std::map<std::string, std::vector<std::size_t>, std::less<>> team_games_;
    std::map<std::string, std::vector<Appearance>, std::less<>> appearances_;
    std::map<std::string, std::string, std::less<>> names_;
    std::vector<std::string> players_;
};

struct CashFlowSeries {
    std::string player_id;
    double cf0 = 0.0;              ///< salary, paid by the team at time zero
    FlowVector<double> flows;      ///< CF_1..CF_N
    std::vector<std::string> schedule;

    Eigen::Index size() const { return flows.size(); }
};

struct PvGcp {
    std::string player_id;
    double value = 0.0;
    int games_played = 0;
    std::size_t schedule_length = 0;
};

/// flows[i] = value * GCP of the i-th scheduled game (0 when missed).
CashFlowSeries cash_flows(const SeasonIndex& index, std::string_view player_id, const SingleGameValue& value,
                          double salary);
CashFlowSeries cash_flows(const SeasonDataset& ds, const std::vector<GameGcpReport>& reports,
                          std::string_view player_id, const SingleGameValue& value, double salary);

/// Undiscounted sum of the player's GCPs over his schedule.
PvGcp pvgcp(const SeasonIndex& index, std::string_view player_id);
PvGcp pvgcp(const SeasonDataset& ds, const std::vector<GameGcpReport>& reports, std::string_view player_id);

double npv(double rate, const CashFlowSeries& series);
RoiResult<double> irr(const CashFlowSeries& series, IrrOptions opts = {});

} // namespace gcproi
