#pragma once

#include "gcproi/boxscore.hpp"
#include "gcproi/fields.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace gcproi::test {

#ifdef GCPROI_FIXTURES
inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(GCPROI_FIXTURES) / name; }
#endif

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Published GCP per player id, from golden_gcp.csv.
inline std::map<std::string, double> golden_gcp(const std::filesystem::path& p)
{
    std::map<std::string, double> out;
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        const auto a = line.find(',');
        const auto b = line.find(',', a + 1);
        out[line.substr(a + 1, b - a - 1)] = std::stod(line.substr(b + 1));
    }
    return out;
}

inline PlayerGameLine line(std::string player, std::string team, std::string game,
                           std::initializer_list<std::pair<FieldId, double>> values)
{
    PlayerGameLine l;
    l.player_id = player;
    l.player_name = "Name " + player;
    l.team_id = std::move(team);
    l.game_id = std::move(game);
    for (const auto& [f, v] : values) l[f] = v;
    return l;
}

/// Every field set to `v`.
inline PlayerGameLine flat_line(std::string player, std::string team, std::string game, double v)
{
    PlayerGameLine l = line(std::move(player), std::move(team), std::move(game), {});
    l.values.setConstant(v);
    return l;
}

inline GameRecord game(std::string id, int day, std::string t1, std::string t2, std::vector<PlayerGameLine> lines)
{
    using namespace std::chrono;
    GameRecord g;
    g.game_id = std::move(id);
    g.date = year_month_day{sys_days{2022y / October / 18} + days{day}};
    g.team1 = std::move(t1);
    g.team2 = std::move(t2);
    for (auto& l : lines) {
        l.game_id = g.game_id;
        (l.active() ? g.lines : g.inactive_lines).push_back(std::move(l));
    }
    return g;
}

} // namespace gcproi::test
