#include "support.hpp"

#include "gcproi/errors.hpp"
#include "gcproi/gcp.hpp"
#include "gcproi/reporting.hpp"
#include "gcproi/synth.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

using namespace gcproi;
using namespace gcproi::test;

namespace {

struct Built {
    SynthSeason s;
    std::vector<GameGcpReport> reports;
    std::unique_ptr<SeasonIndex> index;
};

Built build(const SynthConfig& cfg)
{
    Built b{synth_season(cfg), {}, nullptr};
    b.reports = season_reports(b.s.dataset);
    b.index = std::make_unique<SeasonIndex>(b.s.dataset, b.reports);
    return b;
}

SynthConfig season_cfg(std::uint64_t seed)
{
    SynthConfig c;
    c.seed = seed;
    c.teams = 6;
    c.games = 90;
    return c;
}

} // namespace

TEST_CASE("PVGCP board on the golden game")
{
    const auto ds = parse_games(fixture("golden_game.csv"));
    const auto reps = season_reports(ds);
    const SeasonIndex idx(ds, reps);
    const auto rows = leaderboard_pvgcp(idx, nullptr, 0);
    REQUIRE(rows.size() == 20);
    CHECK(rows[0].player_name == "Embiid");
    CHECK(std::abs(rows[0].pvgcp - 0.2530) <= 5e-5);
    CHECK(rows[0].rank == 1);
    CHECK(rows[0].games_played == 1);
    CHECK(rows[0].gcp_per_game == rows[0].pvgcp);
    CHECK(leaderboard_pvgcp(idx, nullptr, 5).size() == 5);
}

TEST_CASE("PVGCP board ordering matches an independent sort")
{
    auto b = build(season_cfg(31));
    const auto rows = leaderboard_pvgcp(*b.index, &b.s.salaries, 0);
    std::vector<std::tuple<double, std::string, std::string>> oracle;
    for (const auto& id : b.index->players()) {
        double s = 0;
        for (std::size_t gi = 0; gi < b.reports.size(); ++gi) {
            for (const auto& t : b.reports[gi].teams) {
                if (const auto* p = t.find(id)) s += p->gcp;
            }
        }
        oracle.emplace_back(-s, b.index->player_name(id), id);
    }
    std::sort(oracle.begin(), oracle.end(), [](const auto& x, const auto& y) {
        if (std::abs(std::get<0>(x) - std::get<0>(y)) > 1e-12) return std::get<0>(x) < std::get<0>(y);
        return std::tie(std::get<1>(x), std::get<2>(x)) < std::tie(std::get<1>(y), std::get<2>(y));
    });
    REQUIRE(rows.size() == oracle.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].player_id == std::get<2>(oracle[i]));
        CHECK(rows[i].rank == static_cast<int>(i + 1));
    }
}

TEST_CASE("ROI boards")
{
    auto b = build(season_cfg(32));
    RoiOptions o;
    o.min_games = 20;
    const auto rois = player_rois(*b.index, b.s.salaries, o);
    const auto boards = leaderboard_roi(rois, 10, 10);

    std::size_t qualifying = 0;
    for (const auto& [id, gp] : b.s.book.games_played) qualifying += gp >= o.min_games;
    CHECK(boards.qualifying == qualifying);
    CHECK(boards.qualifying + boards.below_min_games + boards.total_defaults == rois.size());

    REQUIRE(boards.top.size() == 10);
    REQUIRE(boards.bottom.size() == 10);
    for (std::size_t i = 1; i < 10; ++i) {
        CHECK(*boards.top[i - 1].roi >= *boards.top[i].roi);
        CHECK(*boards.bottom[i - 1].roi <= *boards.bottom[i].roi);
    }
    CHECK(boards.bottom[0].rank == static_cast<int>(qualifying));
    CHECK(boards.top[0].rank == 1);
    for (const auto& r : boards.top) CHECK(b.s.book.games_played.at(r.player_id) >= o.min_games);
    for (const auto& r : boards.bottom) CHECK(b.s.book.games_played.at(r.player_id) >= o.min_games);

    const auto all = leaderboard_roi(rois, 1000, 0);
    std::set<std::string> ids;
    for (const auto& r : all.top) ids.insert(r.player_id);
    CHECK(ids.size() == all.top.size());
    CHECK(all.top.size() == qualifying);
}

TEST_CASE("a player below the minimum is on neither board")
{
    SynthConfig cfg = season_cfg(33);
    cfg.missed_game_probability = 0.0;
    cfg.always_missing = {"T02-P03"};
    auto b = build(cfg);
    RoiOptions o;
    o.min_games = 25;
    const auto rois = player_rois(*b.index, b.s.salaries, o);
    const auto it = std::find_if(rois.begin(), rois.end(), [](const PlayerRoi& p) { return p.player_id == "T02-P03"; });
    REQUIRE(it != rois.end());
    CHECK(it->status == RoiStatus::TotalDefault);
    CHECK_FALSE(it->roi.has_value());
    const auto boards = leaderboard_roi(rois, 1000, 1000);
    for (const auto& r : boards.top) CHECK(r.player_id != "T02-P03");
    for (const auto& r : boards.bottom) CHECK(r.player_id != "T02-P03");
    CHECK(boards.total_defaults == 1);

    // Lift the minimum above the schedule: nobody qualifies, nothing is solved.
    o.min_games = 1000;
    const auto none = leaderboard_roi(player_rois(*b.index, b.s.salaries, o), 10, 10);
    CHECK(none.top.empty());
    CHECK(none.qualifying == 0);
    std::ostringstream out;
    write_scatter(out, roi_salary_scatter(*b.index, b.s.salaries, o), {});
    CHECK(out.str() == "player_id,salary_usd,roi_pct\n");
}

TEST_CASE("missing salaries are listed together")
{
    auto b = build(season_cfg(34));
    SalaryTable partial = b.s.salaries;
    partial.entries.erase("T01-P01");
    partial.entries.erase("T03-P02");
    try {
        player_rois(*b.index, partial, {});
        FAIL("expected MissingSalary");
    } catch (const MissingSalary& e) {
        CHECK(e.players() == std::vector<std::string>{"T01-P01", "T03-P02"});
    }
}

TEST_CASE("comparison series")
{
    SynthConfig cfg = season_cfg(35);
    cfg.missed_game_probability = 0.2;
    auto b = build(cfg);
    const auto self = comparison(*b.index, "T01-P01", "T01-P01");
    CHECK(self.gcp_a == self.gcp_b);
    CHECK(self.cumulative_a == self.cumulative_b);

    const auto c = comparison(*b.index, "T01-P02", "T04-P01");
    CHECK(c.gcp_a.size() == b.s.book.schedule_length.at("T01-P02"));
    CHECK(c.gcp_b.size() == b.s.book.schedule_length.at("T04-P01"));
    CHECK(std::count(c.gcp_a.begin(), c.gcp_a.end(), 0.0) == b.s.book.missed_games.at("T01-P02"));
    CHECK(std::count(c.gcp_b.begin(), c.gcp_b.end(), 0.0) == b.s.book.missed_games.at("T04-P01"));
    CHECK(c.cumulative_a.back() == doctest::Approx(pvgcp(*b.index, "T01-P02").value).epsilon(1e-14));
    CHECK_THROWS_AS(comparison(*b.index, "T01-P02", "nobody"), UnknownPlayer);
}

TEST_CASE("scatter has one point per qualifying player")
{
    auto b = build(season_cfg(36));
    RoiOptions o;
    o.min_games = 22;
    const auto pts = roi_salary_scatter(*b.index, b.s.salaries, o);
    std::size_t oracle = 0;
    for (const auto& [id, gp] : b.s.book.games_played) {
        if (gp >= o.min_games && b.s.salaries.find(id)) ++oracle;
    }
    CHECK(pts.size() == oracle);
}

TEST_CASE("histogram")
{
    const auto bins = histogram({0.0, 0.005, 0.01, 0.03, 0.0299999}, 0.01);
    REQUIRE(bins.size() == 4);
    CHECK(bins[0].count == 2);
    CHECK(bins[1].count == 1);
    CHECK(bins[2].count == 1);
    CHECK(bins[3].count == 1);
    CHECK(bins[3].lo == doctest::Approx(0.03));
    CHECK(histogram({}, 0.01).empty());
    CHECK_THROWS_AS(histogram({0.1}, 0.0), NonPositiveInput);
    CHECK_THROWS_AS(histogram({-0.1}, 0.01), NonPositiveInput);

    // Every value lands in exactly one bin whose edges hold it.
    std::vector<double> v;
    for (int i = 0; i <= 1000; ++i) v.push_back(i * 0.001);
    std::size_t total = 0;
    for (const auto& b : histogram(v, 0.01)) total += b.count;
    CHECK(total == v.size());
}

TEST_CASE("quantile")
{
    CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
    CHECK(quantile({1, 2, 3, 4}, 0.75) == 3.25);
    CHECK(quantile({5}, 0.75) == 5);
    CHECK(std::isnan(quantile({}, 0.5)));
}

TEST_CASE("writers")
{
    const auto ds = parse_games(fixture("golden_game.csv"));
    const auto reps = season_reports(ds);

    SUBCASE("gcp report rounds to four places")
    {
        std::ostringstream out;
        write_gcp_report(out, ds, reps[0], std::string_view("BOS"), {});
        const std::string s = out.str();
        CHECK(s.rfind("game_id,team_id,active_fields,weight,player_id,player_name,gcp\n", 0) == 0);
        CHECK(s.find("BOS-tatum,Tatum,0.2064\n") != std::string::npos);
        CHECK(s.find("PHI") == std::string::npos);
    }
    SUBCASE("json parses and keeps the players")
    {
        std::ostringstream out;
        write_gcp_report(out, ds, reps[0], std::nullopt, {.format = Format::Json});
        const auto j = nlohmann::json::parse(out.str());
        CHECK(j["teams"].size() == 2);
        CHECK(j["teams"][0]["players"].size() == 10);
        CHECK(j["teams"][0]["active_field_count"] == 35);
    }
    SUBCASE("breakeven")
    {
        std::ostringstream out;
        write_breakeven(out, 48'070'000, 82, sgv_fixed(1'818'162), breakeven_gcp(48'070'000, 82, sgv_fixed(1'818'162)),
                        {});
        CHECK(out.str().find("0.3224") != std::string::npos);
    }
    SUBCASE("validation report")
    {
        SeasonDataset bad = ds;
        bad.games[0].lines[0][FieldId::MIN] = -1;
        std::ostringstream out;
        write_validation(out, validate_dataset(bad), {});
        CHECK(out.str().find("NegativeValue") != std::string::npos);
    }
}

TEST_CASE("ROI table marks defaults instead of printing a rate")
{
    SynthConfig cfg = season_cfg(37);
    cfg.always_missing = {"T05-P02"};
    auto b = build(cfg);
    RoiOptions o;
    o.min_games = 1;
    std::ostringstream out;
    write_player_rois(out, player_rois(*b.index, b.s.salaries, o), {});
    const std::string s = out.str();
    const auto at = s.find("T05-P02,");
    REQUIRE(at != std::string::npos);
    const std::string row = s.substr(at, s.find('\n', at) - at);
    CHECK(row.size() > std::string(",,total_default").size());
    CHECK(row.substr(row.size() - std::string(",,total_default").size()) == ",,total_default");
}

TEST_CASE("summary")
{
    auto b = build(season_cfg(38));
    RoiOptions o;
    o.min_games = 1;
    const auto sm = summarize(*b.index, b.s.salaries, o);
    CHECK(sm.games == 90);
    CHECK(sm.teams == 6);
    CHECK(sm.salary_total_usd == b.s.salaries.total());
    CHECK(sm.sgv_usd == doctest::Approx(static_cast<double>(b.s.salaries.total()) / 180.0));
    CHECK(sm.nonzero_gcp_count == b.s.book.active_lines);
    const auto dist = nonzero_gcp_distribution(b.reports);
    CHECK(sm.max_gcp == *std::max_element(dist.begin(), dist.end()));
}
