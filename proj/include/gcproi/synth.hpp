#pragma once

#include "gcproi/boxscore.hpp"
#include "gcproi/finance.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gcproi {

/// Synthetic season generator settings. Identical settings give identical
/// output.
struct SynthConfig {
    std::uint64_t seed = 0;
    int teams = 4;
    int games = 6;                 ///< total games, scheduled round-robin
    int roster_min = 8;
    int roster_max = 13;
    int count_max = 12;            ///< count fields are uniform on 0..count_max
    double minutes_max = 40.0;
    double distance_max = 2.5;     ///< ODIS / DDIS, miles
    double missed_game_probability = 0.1;
    double zero_field_probability = 0.05; ///< per team-game and field, never MIN
    std::int64_t salary_min = 500'000;
    std::int64_t salary_max = 45'000'000;
    bool realistic = false;        ///< scale each team's minutes to 240
    int trades = 0;                ///< mid-season moves to the next team id

    /// Players that never record a statistic (listed with all-zero rows).
    std::vector<std::string> always_missing;
    /// (team, field) pairs forced to zero in every game of that team.
    std::vector<std::pair<std::string, FieldId>> zeroed_fields;
};

/// What the generator planted, for oracle assertions.
struct SynthBookkeeping {
    std::map<std::string, int> games_per_team;
    std::map<std::string, int> games_played;     ///< active games per player
    std::map<std::string, int> missed_games;     ///< scheduled but inactive
    std::map<std::string, std::size_t> schedule_length;
    std::map<std::pair<std::string, std::string>, FieldMask> zeroed; ///< (game, team) -> zero-total fields
    std::vector<std::string> traded_players;
    std::size_t active_lines = 0;
};

struct SynthSeason {
    SeasonDataset dataset;
    SalaryTable salaries;
    SynthBookkeeping book;
};

/// Throws InvalidConfig.
SynthSeason synth_season(const SynthConfig& cfg);

/// Writes games.csv and salaries.csv in the ingest schema.
void write_synth(const SynthSeason& season, const std::filesystem::path& out_dir);

/// Reference rate-of-return solver, deliberately unrelated to irr(): scan
/// rates in (-0.999, 10] at step 1e-3 for the first sign change of a Horner
/// evaluated NPV, then bisect 200 times. Throws NoSignChange when the root is
/// outside the scanned range or the inputs admit none.
double irr_oracle(double investment, const FlowVector<double>& flows);
double irr_oracle(const CashFlowSeries& series);

} // namespace gcproi
