#include "support.hpp"

#include "gcproi/boxscore.hpp"
#include "gcproi/errors.hpp"
#include "gcproi/synth.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace gcproi;
using namespace gcproi::test;

namespace {

SeasonDataset parse_text(const std::string& text, ParseOptions o = {})
{
    std::istringstream in(text);
    return parse_games(in, o);
}

std::string row(const std::string& game, const std::string& date, const std::string& team, const std::string& opp,
                const std::string& player, double fill)
{
    std::ostringstream s;
    s << game << ',' << date << ',' << team << ',' << opp << ',' << player << ",Name " << player;
    for (int i = 0; i < kFieldCount; ++i) s << ',' << fill;
    return s.str();
}

} // namespace

TEST_CASE("derive_fields splits makes and misses")
{
    RawStatLine raw;
    raw[SourceStat::FGM] = 7;
    raw[SourceStat::FGA] = 15;
    raw[SourceStat::FG3M] = 2;
    raw[SourceStat::FG3A] = 8;
    const auto l = derive_fields(raw);
    CHECK(l[FieldId::FG2O] == 5);
    CHECK(l[FieldId::FG2X] == 2);
    CHECK(l[FieldId::FG3O] == 2);
    CHECK(l[FieldId::FG3X] == 6);
}

TEST_CASE("derive_fields of all zeros is all zeros")
{
    const auto l = derive_fields(RawStatLine{});
    CHECK(l.values.isZero());
    CHECK_FALSE(l.active());
}

TEST_CASE("derive_fields pass adjustment")
{
    RawStatLine raw;
    raw[SourceStat::PassesMade] = 35;
    raw[SourceStat::SecondaryAssist] = 0;
    raw[SourceStat::PotentialAssists] = 9;
    CHECK(derive_fields(raw)[FieldId::APM] == 26);
}

TEST_CASE("derive_fields matches a hand computation on a random line")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> small(0, 6);
    for (int trial = 0; trial < 50; ++trial) {
        RawStatLine raw;
        for (int i = 0; i < kSourceCount; ++i) raw.values[i] = small(rng);
        // Make the totals consistent: attempts >= makes, chances >= contested.
        raw[SourceStat::FGM] += raw[SourceStat::FG3M];
        raw[SourceStat::FGA] = raw[SourceStat::FGM] + raw[SourceStat::FG3A] + small(rng);
        raw[SourceStat::FG3A] += raw[SourceStat::FG3M];
        raw[SourceStat::FTA] += raw[SourceStat::FTM];
        raw[SourceStat::Contested2PT] += raw[SourceStat::BLK];
        raw[SourceStat::DFGA] += raw[SourceStat::DFGM];
        raw[SourceStat::PassesMade] += raw[SourceStat::SecondaryAssist] + raw[SourceStat::PotentialAssists];
        raw[SourceStat::OREBChances] += raw[SourceStat::ContestedOREB];
        raw[SourceStat::DREBChances] += raw[SourceStat::ContestedDREB];

        const auto l = derive_fields(raw);
        const auto r = [&](SourceStat s) { return raw[s]; };
        using S = SourceStat;
        CHECK(l[FieldId::FG2O] == r(S::FGM) - r(S::FG3M));
        CHECK(l[FieldId::FG2X] == r(S::FGA) - r(S::FG3A) - (r(S::FGM) - r(S::FG3M)));
        CHECK(l[FieldId::FG3X] == r(S::FG3A) - r(S::FG3M));
        CHECK(l[FieldId::FTX] == r(S::FTA) - r(S::FTM));
        CHECK(l[FieldId::AC2P] == r(S::Contested2PT) - r(S::BLK));
        CHECK(l[FieldId::DFGX] == r(S::DFGA) - r(S::DFGM));
        CHECK(l[FieldId::APM] == r(S::PassesMade) - r(S::SecondaryAssist) - r(S::PotentialAssists));
        CHECK(l[FieldId::AORC] == r(S::OREBChances) - r(S::ContestedOREB));
        CHECK(l[FieldId::ADRC] == r(S::DREBChances) - r(S::ContestedDREB));
        CHECK(l[FieldId::OCRB] == r(S::ContestedOREB));
        CHECK(l[FieldId::DCRB] == r(S::ContestedDREB));
        CHECK(l[FieldId::POSS] == r(S::Poss));
        CHECK(l[FieldId::TCH] == r(S::Touches));

        const auto back = underive_fields(l);
        CHECK(back.values == raw.values);
    }
}

TEST_CASE("derive_fields rejects or clamps negative results")
{
    RawStatLine raw;
    raw[SourceStat::FGM] = 1;
    raw[SourceStat::FG3M] = 2;
    raw[SourceStat::FGA] = 5;
    raw[SourceStat::FG3A] = 3;
    CHECK_THROWS_AS(derive_fields(raw), NegativeDerivedField);
    try {
        derive_fields(raw);
    } catch (const NegativeDerivedField& e) {
        CHECK(e.field() == "FG2O");
        CHECK(e.value() == -1);
    }
    const auto l = derive_fields(raw, {.clamp_negative = true});
    CHECK(l[FieldId::FG2O] == 0);
}

TEST_CASE("golden fixture parses to one game with ten active players per side")
{
    const auto ds = parse_games(fixture("golden_game.csv"));
    REQUIRE(ds.games.size() == 1);
    const auto& g = ds.games[0];
    CHECK(g.game_id == "G20230404");
    CHECK(format_date(g.date) == "2023-04-04");
    CHECK(g.roster("BOS").size() == 10);
    CHECK(g.roster("PHI").size() == 10);
    CHECK(g.inactive_lines.empty());
    CHECK(validate_dataset(ds).ok());
}

TEST_CASE("header-only file is an empty dataset")
{
    const auto ds = parse_text(games_header() + "\n");
    CHECK(ds.games.empty());
}

TEST_CASE("schema errors carry 1-based line and column")
{
    SUBCASE("wrong header") { CHECK_THROWS_AS(parse_text("game_id,date\n"), SchemaError); }
    SUBCASE("empty input") { CHECK_THROWS_AS(parse_text(""), SchemaError); }
    SUBCASE("non-numeric value")
    {
        std::string r = row("G1", "2023-01-01", "A", "B", "p1", 1);
        r.replace(r.rfind(",1"), 2, ",x");
        try {
            parse_text(games_header() + "\n" + r + "\n");
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() == 6 + kFieldCount);
        }
    }
    SUBCASE("short row")
    {
        CHECK_THROWS_AS(parse_text(games_header() + "\nG1,2023-01-01,A,B,p1,n,1\n"), SchemaError);
    }
    SUBCASE("bad date")
    {
        CHECK_THROWS_AS(parse_text(games_header() + "\n" + row("G1", "2023-13-01", "A", "B", "p1", 1) + "\n"),
                        SchemaError);
    }
    SUBCASE("team plays itself")
    {
        CHECK_THROWS_AS(parse_text(games_header() + "\n" + row("G1", "2023-01-01", "A", "A", "p1", 1) + "\n"),
                        SchemaError);
    }
    SUBCASE("game id reused with another date")
    {
        CHECK_THROWS_AS(parse_text(games_header() + "\n" + row("G1", "2023-01-01", "A", "B", "p1", 1) + "\n"
                                   + row("G1", "2023-01-02", "B", "A", "p2", 1) + "\n"),
                        SchemaError);
    }
}

TEST_CASE("duplicate player-game line")
{
    const std::string text = games_header() + "\n" + row("G1", "2023-01-01", "A", "B", "p1", 1) + "\n"
                             + row("G1", "2023-01-01", "A", "B", "p1", 2) + "\n";
    try {
        parse_text(text);
        FAIL("expected DuplicateLine");
    } catch (const DuplicateLine& e) {
        CHECK(e.player() == "p1");
        CHECK(e.game() == "G1");
    }
}

TEST_CASE("all-zero rows are kept as roster listings")
{
    const std::string text = games_header() + "\n" + row("G1", "2023-01-01", "A", "B", "p1", 1) + "\n"
                             + row("G1", "2023-01-01", "A", "B", "p2", 0) + "\n"
                             + row("G1", "2023-01-01", "B", "A", "q1", 1) + "\n";
    const auto ds = parse_text(text);
    REQUIRE(ds.games.size() == 1);
    CHECK(ds.games[0].lines.size() == 2);
    REQUIRE(ds.games[0].inactive_lines.size() == 1);
    CHECK(ds.games[0].inactive_lines[0].player_id == "p2");
}

TEST_CASE("games are ordered by date then id")
{
    const std::string text = games_header() + "\n" + row("G2", "2023-01-02", "A", "B", "p1", 1) + "\n"
                             + row("G3", "2023-01-01", "A", "B", "p1", 1) + "\n"
                             + row("G1", "2023-01-02", "A", "B", "p1", 1) + "\n";
    const auto ds = parse_text(text);
    REQUIRE(ds.games.size() == 3);
    CHECK(ds.games[0].game_id == "G3");
    CHECK(ds.games[1].game_id == "G1");
    CHECK(ds.games[2].game_id == "G2");
}

TEST_CASE("raw format derives fields on the way in")
{
    std::ostringstream s;
    s << raw_games_header() << "\nG1,2023-01-01,A,B,p1,P One";
    for (int i = 0; i < kSourceCount; ++i) {
        const auto st = static_cast<SourceStat>(i);
        double v = 1;
        if (st == SourceStat::FGM) v = 7;
        if (st == SourceStat::FG3M) v = 2;
        if (st == SourceStat::FGA) v = 15;
        if (st == SourceStat::FG3A) v = 8;
        if (st == SourceStat::FTA || st == SourceStat::Contested2PT || st == SourceStat::DFGA
            || st == SourceStat::OREBChances || st == SourceStat::DREBChances)
            v = 2;
        if (st == SourceStat::PassesMade) v = 35;
        if (st == SourceStat::SecondaryAssist) v = 0;
        if (st == SourceStat::PotentialAssists) v = 9;
        s << ',' << v;
    }
    s << '\n';
    const auto ds = parse_text(s.str(), {.format = GamesFormat::Raw});
    REQUIRE(ds.games.size() == 1);
    const auto& l = ds.games[0].lines.at(0);
    CHECK(l[FieldId::FG2O] == 5);
    CHECK(l[FieldId::APM] == 26);
    CHECK(l[FieldId::FTX] == 1);
}

TEST_CASE("parse and write round trip")
{
    SynthConfig cfg;
    cfg.seed = 11;
    cfg.teams = 6;
    cfg.games = 30;
    const auto s = synth_season(cfg);
    std::ostringstream out;
    write_games(out, s.dataset);
    std::istringstream in(out.str());
    const auto back = parse_games(in);
    CHECK(back == s.dataset);
    std::ostringstream again;
    write_games(again, back);
    CHECK(again.str() == out.str());
}

TEST_CASE("4-team, 6-game synthetic file keeps the schedule")
{
    SynthConfig cfg;
    cfg.seed = 3;
    const auto s = synth_season(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "gcproi_boxscore_synth";
    write_synth(s, dir);
    const auto ds = parse_games(dir / "games.csv");
    CHECK(ds.games.size() == 6);
    std::map<std::string, int> counts;
    for (const auto& g : ds.games) {
        ++counts[g.team1];
        ++counts[g.team2];
    }
    CHECK(counts == s.book.games_per_team);
}

TEST_CASE("salaries")
{
    SUBCASE("fixture pair")
    {
        const auto t = parse_salaries(fixture("salaries_pair.csv"));
        REQUIRE(t.entries.size() == 2);
        CHECK(t.find("LAL-davis")->salary_usd == 37'980'720);
        CHECK(t.find("MIL-lopez")->salary_usd == 13'906'976);
        CHECK(t.total() == 37'980'720 + 13'906'976);
    }
    SUBCASE("single entry of one dollar")
    {
        std::istringstream in("player_id,player_name,salary_usd\np,P,1\n");
        CHECK(parse_salaries(in).total() == 1);
    }
    SUBCASE("large table total")
    {
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::int64_t> d(1'000'000, 50'000'000);
        std::ostringstream s;
        s << "player_id,player_name,salary_usd\n";
        long double oracle = 0;
        for (int i = 0; i < 547; ++i) {
            const auto v = d(rng);
            oracle += static_cast<long double>(v);
            s << "p" << i << ",Player " << i << ',' << v << '\n';
        }
        std::istringstream in(s.str());
        const auto t = parse_salaries(in);
        CHECK(t.entries.size() == 547);
        CHECK(static_cast<long double>(t.total()) == oracle);
    }
    SUBCASE("non-positive")
    {
        std::istringstream in("player_id,player_name,salary_usd\np,P,0\n");
        CHECK_THROWS_AS(parse_salaries(in), NonPositiveSalary);
    }
    SUBCASE("fractional dollars")
    {
        std::istringstream in("player_id,player_name,salary_usd\np,P,1.5\n");
        CHECK_THROWS_AS(parse_salaries(in), SchemaError);
    }
    SUBCASE("duplicate id")
    {
        std::istringstream in("player_id,player_name,salary_usd\np,P,1\np,P,2\n");
        CHECK_THROWS_AS(parse_salaries(in), SchemaError);
    }
    SUBCASE("quoted name with comma")
    {
        std::istringstream in("player_id,player_name,salary_usd\np,\"Jr., P\",10\n");
        const auto t = parse_salaries(in);
        CHECK(t.find("p")->player_name == "Jr., P");
        std::ostringstream out;
        write_salaries(out, t);
        std::istringstream back(out.str());
        CHECK(parse_salaries(back).find("p")->player_name == "Jr., P");
    }
}

TEST_CASE("validate_dataset findings")
{
    SeasonDataset ds;
    ds.games.push_back(game("G1", 0, "A", "B", {flat_line("a1", "A", "", 1), flat_line("b1", "B", "", 1)}));
    CHECK(validate_dataset(ds).ok());

    SUBCASE("one negative MIN")
    {
        ds.games[0].lines[0][FieldId::MIN] = -3;
        const auto r = validate_dataset(ds);
        CHECK(r.violations.size() == 1);
        CHECK(r.count(ViolationKind::NegativeValue) == 1);
    }
    SUBCASE("non-finite value")
    {
        ds.games[0].lines[1][FieldId::ODIS] = std::numeric_limits<double>::quiet_NaN();
        CHECK(validate_dataset(ds).count(ViolationKind::NonFiniteValue) == 1);
    }
    SUBCASE("foreign team")
    {
        ds.games[0].lines[1].team_id = "C";
        const auto r = validate_dataset(ds);
        CHECK(r.count(ViolationKind::ForeignTeam) == 1);
    }
    SUBCASE("empty team")
    {
        ds.games[0].lines.pop_back();
        CHECK(validate_dataset(ds).count(ViolationKind::EmptyTeam) == 1);
    }
    SUBCASE("duplicate game id and same pairing on one date")
    {
        ds.games.push_back(ds.games[0]);
        const auto r = validate_dataset(ds);
        CHECK(r.count(ViolationKind::DuplicateGameId) == 1);
    }
    SUBCASE("season length only when strict")
    {
        for (int d = 1; d < 4; ++d) {
            ds.games.push_back(game("G" + std::to_string(d + 1), d, "A", "B",
                                    {flat_line("a1", "A", "", 1), flat_line("b1", "B", "", 1)}));
        }
        CHECK(validate_dataset(ds).ok());
        const auto r = validate_dataset(ds, {.strict_season = true, .season_length = 3});
        CHECK(r.count(ViolationKind::SeasonLength) == 2);
    }
}
