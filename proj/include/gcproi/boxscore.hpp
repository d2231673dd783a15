#pragma once

#include "gcproi/fields.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gcproi {

struct RawStatLine {
    std::string player_id;
    SourceRow<double> values = SourceRow<double>::Zero();

    double& operator[](SourceStat s) { return values[index(s)]; }
    double operator[](SourceStat s) const { return values[index(s)]; }
};

struct PlayerGameLine {
    std::string player_id;
    std::string player_name;
    std::string team_id;
    std::string game_id;
    FieldRow<double> values = FieldRow<double>::Zero();

    double& operator[](FieldId f) { return values[index(f)]; }
    double operator[](FieldId f) const { return values[index(f)]; }

    bool active() const { return (values.array() > 0.0).any(); }

    bool operator==(const PlayerGameLine&) const = default;
};

struct GameRecord {
    std::string game_id;
    std::chrono::year_month_day date{};
    std::string team1;
    std::string team2;
    std::vector<PlayerGameLine> lines;          ///< rows with at least one non-zero value
    std::vector<PlayerGameLine> inactive_lines; ///< all-zero rows: roster membership only

    bool has_team(std::string_view team) const { return team == team1 || team == team2; }
    const std::string& opponent(std::string_view team) const { return team == team1 ? team2 : team1; }

    /// Lines of one team, in stored order.
    std::vector<const PlayerGameLine*> roster(std::string_view team) const;

    /// The team's lines stacked as a players-by-fields matrix, roster order.
    StatMatrix<double> stat_matrix(std::string_view team) const;

    bool operator==(const GameRecord&) const = default;
};

/// Games ordered by date, then game id. Immutable once built.
struct SeasonDataset {
    std::vector<GameRecord> games;

    std::vector<std::string> teams() const;
    /// player id -> display name, first name seen wins.
    std::map<std::string, std::string> player_names() const;
    const GameRecord* find_game(std::string_view game_id) const;

    bool operator==(const SeasonDataset&) const = default;
};

void sort_games(SeasonDataset& ds);

struct SalaryEntry {
    std::string player_name;
    std::int64_t salary_usd = 0;
};

struct SalaryTable {
    std::map<std::string, SalaryEntry> entries;

    /// Exact league total S.
    std::int64_t total() const;
    const SalaryEntry* find(std::string_view player_id) const;
};

struct DeriveOptions {
    bool clamp_negative = false;
};

/// Applies the source-to-field formulas (made/missed splits, contested
/// adjustments, pass and rebound-chance adjustments). Throws
/// NegativeDerivedField unless clamping is on.
PlayerGameLine derive_fields(const RawStatLine& raw, DeriveOptions opts = {});

/// Inverse of derive_fields on consistent data.
RawStatLine underive_fields(const PlayerGameLine& line);

enum class GamesFormat { Derived, Raw };

struct ParseOptions {
    GamesFormat format = GamesFormat::Derived;
    DeriveOptions derive;
};

SeasonDataset parse_games(std::istream& in, ParseOptions opts = {});
SeasonDataset parse_games(const std::filesystem::path& path, ParseOptions opts = {});

SalaryTable parse_salaries(std::istream& in);
SalaryTable parse_salaries(const std::filesystem::path& path);

/// Canonical games CSV; parse_games(write_games(ds)) == ds.
void write_games(std::ostream& out, const SeasonDataset& ds);
void write_salaries(std::ostream& out, const SalaryTable& table);

std::string games_header();
std::string raw_games_header();

enum class ViolationKind {
    NegativeValue,
    NonFiniteValue,
    DuplicateGameId,
    DuplicateGame,
    DuplicatePlayer,
    SameTeams,
    ForeignTeam,
    EmptyTeam,
    SeasonLength,
};

std::string_view name(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::string game_id;
    std::string team_id;
    std::string player_id;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::size_t count(ViolationKind k) const;
};

struct ValidateOptions {
    bool strict_season = false;
    int season_length = 82;
};

ValidationReport validate_dataset(const SeasonDataset& ds, ValidateOptions opts = {});

std::string format_date(std::chrono::year_month_day d);

} // namespace gcproi
