#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcproi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input row. Line and column are 1-based; column 0 means the
/// whole row.
class SchemaError : public Error {
public:
    SchemaError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class DuplicateLine : public Error {
public:
    DuplicateLine(std::string player, std::string game, std::size_t line)
        : Error("line " + std::to_string(line) + ": duplicate line for player '" + player
                + "' in game '" + game + "'"),
          player_(std::move(player)), game_(std::move(game))
    {}
    const std::string& player() const noexcept { return player_; }
    const std::string& game() const noexcept { return game_; }

private:
    std::string player_;
    std::string game_;
};

class NonPositiveSalary : public Error {
public:
    explicit NonPositiveSalary(std::string player)
        : Error("non-positive salary for player '" + player + "'"), player_(std::move(player))
    {}
    const std::string& player() const noexcept { return player_; }

private:
    std::string player_;
};

class NegativeDerivedField : public Error {
public:
    NegativeDerivedField(std::string field, double value)
        : Error("field " + field + " derives to negative value " + std::to_string(value)),
          field_(std::move(field)), value_(value)
    {}
    const std::string& field() const noexcept { return field_; }
    double value() const noexcept { return value_; }

private:
    std::string field_;
    double value_;
};

class UnknownTeam : public Error {
public:
    using Error::Error;
};

class UnknownPlayer : public Error {
public:
    using Error::Error;
};

/// Every field total of a team-game is zero, so no weight exists.
class EmptyActiveSet : public Error {
public:
    EmptyActiveSet(std::string game, std::string team)
        : Error("game '" + game + "', team '" + team + "': no field has a positive team total"),
          game_(std::move(game)), team_(std::move(team))
    {}
    const std::string& game() const noexcept { return game_; }
    const std::string& team() const noexcept { return team_; }

private:
    std::string game_;
    std::string team_;
};

class DivisionDomain : public Error {
public:
    using Error::Error;
};

class NonPositiveInput : public Error {
public:
    using Error::Error;
};

class EmptySchedule : public Error {
public:
    using Error::Error;
};

class StintOverlap : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// No game cash flow is positive: the rate-of-return equation has no root.
class AllZeroFlows : public Error {
public:
    using Error::Error;
};

class NonPositiveInvestment : public Error {
public:
    using Error::Error;
};

class MissingSalary : public Error {
public:
    explicit MissingSalary(std::vector<std::string> players)
        : Error(message(players)), players_(std::move(players))
    {}
    const std::vector<std::string>& players() const noexcept { return players_; }

private:
    static std::string message(const std::vector<std::string>& players)
    {
        std::string s = "no salary for " + std::to_string(players.size()) + " player(s):";
        for (const auto& p : players) s += " " + p;
        return s;
    }
    std::vector<std::string> players_;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

} // namespace gcproi
