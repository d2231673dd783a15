#pragma once

#include "gcproi/boxscore.hpp"
#include "gcproi/finance.hpp"
#include "gcproi/gcp.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcproi {

enum class RoiStatus { Ok, TotalDefault, BelowMinGames };

std::string_view name(RoiStatus s);

struct RoiOptions {
    int min_games = 25;
    std::optional<std::int64_t> season_games; ///< overrides the dataset's game count in the SGV
    std::optional<double> sgv_override;       ///< dollars; wins over season_games
    IrrOptions irr;
    unsigned threads = 0;
};

/// SGV for a season: payroll total over twice the game count.
SingleGameValue season_sgv(const SeasonDataset& ds, const SalaryTable& salaries, const RoiOptions& opts);

struct PlayerRoi {
    std::string player_id;
    std::string player_name;
    std::int64_t salary_usd = 0;
    int games_played = 0;
    std::size_t schedule_length = 0;
    double pvgcp = 0.0;
    RoiStatus status = RoiStatus::Ok;
    std::optional<RoiResult<double>> roi; ///< set only when status is Ok
};

/// Every listed player that has a salary, sorted by id. Players who never
/// played are total_default; others under the minimum are labelled without
/// solving. Throws MissingSalary naming every player with a game but no
/// salary.
std::vector<PlayerRoi> player_rois(const SeasonIndex& index, const SalaryTable& salaries, const RoiOptions& opts);

struct LeaderboardRow {
    int rank = 0;
    std::string player_id;
    std::string player_name;
    std::int64_t salary_usd = 0;
    int games_played = 0;
    double pvgcp = 0.0;
    double gcp_per_game = 0.0;
    std::optional<double> roi;
};

/// Top players by PVGCP (descending; ties by name then id). `salaries` may
/// be null, and players without a salary show 0. top_k = 0 lists everyone.
std::vector<LeaderboardRow> leaderboard_pvgcp(const SeasonIndex& index, const SalaryTable* salaries,
                                              std::size_t top_k);

struct RoiBoards {
    std::vector<LeaderboardRow> top;    ///< descending rate, ranks 1..
    std::vector<LeaderboardRow> bottom; ///< ascending rate, ranks counting down from the pool size
    std::size_t qualifying = 0;         ///< players with a solved rate
    std::size_t total_defaults = 0;
    std::size_t below_min_games = 0;
};

RoiBoards leaderboard_roi(const std::vector<PlayerRoi>& rois, std::size_t top_k, std::size_t bottom_k);
RoiBoards leaderboard_roi(const SeasonIndex& index, const SalaryTable& salaries, std::size_t top_k,
                          std::size_t bottom_k, const RoiOptions& opts);

struct ComparisonSeries {
    std::string player_a;
    std::string player_b;
    std::vector<std::string> games_a;
    std::vector<std::string> games_b;
    std::vector<double> gcp_a;
    std::vector<double> gcp_b;
    std::vector<double> cumulative_a;
    std::vector<double> cumulative_b;
};

ComparisonSeries comparison(const SeasonIndex& index, std::string_view player_a, std::string_view player_b);

struct ScatterPoint {
    std::string player_id;
    std::int64_t salary_usd = 0;
    double roi = 0.0;
};

std::vector<ScatterPoint> roi_salary_scatter(const std::vector<PlayerRoi>& rois);
std::vector<ScatterPoint> roi_salary_scatter(const SeasonIndex& index, const SalaryTable& salaries,
                                             const RoiOptions& opts);

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

/// Bins [k*w, (k+1)*w) from 0 up to the bin holding the largest value.
/// Throws NonPositiveInput for a non-positive width or negative value.
std::vector<HistogramBin> histogram(const std::vector<double>& values, double bin_width);

/// Linear-interpolation sample quantile (the common "type 7" definition).
double quantile(std::vector<double> values, double q);

struct SeasonSummary {
    std::size_t games = 0;
    std::size_t teams = 0;
    std::size_t players_with_games = 0;
    std::size_t salary_entries = 0;
    std::int64_t salary_total_usd = 0;
    double sgv_usd = 0.0;
    int min_games = 0;
    std::size_t qualifying_players = 0;
    std::size_t total_default_players = 0;
    double qualifying_salary_mean = 0.0;
    double qualifying_salary_median = 0.0;
    double qualifying_salary_p75 = 0.0;
    std::size_t nonzero_gcp_count = 0;
    double max_gcp = 0.0;
    std::string max_gcp_player;
    std::string max_gcp_game;
};

SeasonSummary summarize(const SeasonIndex& index, const SalaryTable& salaries, const RoiOptions& opts);

// ---------------------------------------------------------------------------
// Writers. Display rounding: GCP 4 decimals, PVGCP and rates 3; with
// full_precision every real prints in shortest round-trip form.
// ---------------------------------------------------------------------------

enum class Format { Csv, Json };

struct OutputOptions {
    Format format = Format::Csv;
    bool full_precision = false;
};

void write_gcp_report(std::ostream& out, const SeasonDataset& ds, const GameGcpReport& report,
                      std::optional<std::string_view> team, const OutputOptions& opts);
void write_player_rois(std::ostream& out, const std::vector<PlayerRoi>& rois, const OutputOptions& opts);
void write_leaderboard(std::ostream& out, const std::vector<LeaderboardRow>& rows, const OutputOptions& opts);
void write_comparison(std::ostream& out, const ComparisonSeries& cmp, const OutputOptions& opts);
void write_scatter(std::ostream& out, const std::vector<ScatterPoint>& points, const OutputOptions& opts);
void write_histogram(std::ostream& out, const std::vector<HistogramBin>& bins, const OutputOptions& opts);
void write_summary(std::ostream& out, const SeasonSummary& s, const OutputOptions& opts);
void write_breakeven(std::ostream& out, double salary, std::int64_t n_games, const SingleGameValue& value,
                     const BreakEven& b, const OutputOptions& opts);
void write_validation(std::ostream& out, const ValidationReport& report, const OutputOptions& opts);

} // namespace gcproi
