// Command-line front end: box scores and salaries in, contribution shares,
// leaderboards and return-on-investment tables out.

#include "gcproi/boxscore.hpp"
#include "gcproi/errors.hpp"
#include "gcproi/finance.hpp"
#include "gcproi/gcp.hpp"
#include "gcproi/reporting.hpp"
#include "gcproi/synth.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace gcproi;

enum ExitCode : int { kOk = 0, kValidation = 1, kSchema = 2, kMissingSalary = 3 };

struct Globals {
    std::string games;
    std::string salaries;
    std::string out;
    std::string format = "csv";
    std::string games_format = "derived";
    bool clamp = false;
    int min_games = 25;
    std::optional<std::int64_t> season_games;
    bool full_precision = false;
    unsigned threads = 0;
};

/// Thrown for a bad flag combination; reported like a schema error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

OutputOptions output_options(const Globals& g)
{
    OutputOptions o;
    std::string fmt = g.format;
    if (g.out == "csv" || g.out == "json") fmt = g.out;
    if (fmt == "json") {
        o.format = Format::Json;
    } else if (fmt != "csv") {
        throw UsageError("unknown format '" + fmt + "'");
    }
    o.full_precision = g.full_precision;
    return o;
}

/// Writes to --out when it names a file, stdout otherwise.
template <typename Fn>
void emit(const Globals& g, Fn&& fn)
{
    const OutputOptions o = output_options(g);
    if (g.out.empty() || g.out == "csv" || g.out == "json" || g.out == "-") {
        fn(std::cout, o);
        std::cout.flush();
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + g.out + "'");
    fn(f, o);
}

SeasonDataset load_games(const Globals& g)
{
    if (g.games.empty()) throw UsageError("--games is required");
    ParseOptions p;
    if (g.games_format == "raw") {
        p.format = GamesFormat::Raw;
    } else if (g.games_format != "derived") {
        throw UsageError("unknown games format '" + g.games_format + "'");
    }
    p.derive.clamp_negative = g.clamp;
    return parse_games(std::filesystem::path(g.games), p);
}

SalaryTable load_salaries(const Globals& g)
{
    if (g.salaries.empty()) throw UsageError("--salaries is required");
    return parse_salaries(std::filesystem::path(g.salaries));
}

/// Value violations stop every computing command. Teams without an active
/// player are left for the share computation, which names the game.
class ValidationFailure : public Error {
public:
    explicit ValidationFailure(ValidationReport r)
        : Error(std::to_string(r.violations.size()) + " validation finding(s)"), report(std::move(r))
    {}
    ValidationReport report;
};

void require_clean(const SeasonDataset& ds)
{
    ValidationReport r = validate_dataset(ds);
    std::erase_if(r.violations, [](const Violation& v) { return v.kind == ViolationKind::EmptyTeam; });
    if (!r.ok()) throw ValidationFailure(std::move(r));
}

struct Season {
    SeasonDataset ds;
    std::vector<GameGcpReport> reports;
    std::unique_ptr<SeasonIndex> index;
};

Season load_season(const Globals& g)
{
    Season s;
    s.ds = load_games(g);
    require_clean(s.ds);
    s.reports = season_reports(s.ds, g.threads);
    s.index = std::make_unique<SeasonIndex>(s.ds, s.reports);
    return s;
}

RoiOptions roi_options(const Globals& g)
{
    RoiOptions o;
    o.min_games = g.min_games;
    o.season_games = g.season_games;
    o.threads = g.threads;
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Game contribution shares and contractual return on investment from box scores"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--games", g.games, "Games CSV");
    app.add_option("--salaries", g.salaries, "Salaries CSV");
    app.add_option("--out", g.out, "Output file (stdout when omitted); 'csv' or 'json' selects the format instead");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--games-format", g.games_format, "derived (37 fields) or raw (source statistics)")
        ->check(CLI::IsMember({"derived", "raw"}));
    app.add_flag("--clamp", g.clamp, "Clamp negative derived fields to zero when reading raw statistics");
    app.add_option("--min-games", g.min_games, "Minimum games played for the ROI pool")->check(CLI::NonNegativeNumber);
    app.add_option("--season-games", g.season_games, "Game count used in the single game value");
    app.add_flag("--full-precision", g.full_precision, "Print reals in shortest round-trip form");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

    // gcp
    auto* gcp_cmd = app.add_subcommand("gcp", "Per-player GCP for one game, or the season histogram");
    std::string game_id;
    std::optional<std::string> team;
    bool gcp_hist = false;
    double bin_width = 0.01;
    gcp_cmd->add_option("--game-id", game_id, "Game to report");
    gcp_cmd->add_option("--team", team, "Restrict to one team");
    gcp_cmd->add_flag("--histogram", gcp_hist, "Emit the histogram of non-zero GCPs instead");
    gcp_cmd->add_option("--bin-width", bin_width, "Histogram bin width");

    // roi
    auto* roi_cmd = app.add_subcommand("roi", "Rate of return for every player");
    std::optional<double> sgv_override;
    double tol = 1e-6;
    std::string board = "all";
    std::size_t board_k = 50;
    roi_cmd->add_option("--sgv-override", sgv_override, "Single game value in dollars");
    roi_cmd->add_option("--tol", tol, "Absolute NPV tolerance in dollars")->check(CLI::PositiveNumber);
    roi_cmd->add_option("--board", board, "all, top or bottom")->check(CLI::IsMember({"all", "top", "bottom"}));
    roi_cmd->add_option("--k", board_k, "Rows on a top or bottom board");

    // pvgcp-board
    auto* pv_cmd = app.add_subcommand("pvgcp-board", "Players ranked by cumulative GCP");
    std::size_t pv_top = 50;
    pv_cmd->add_option("--top", pv_top, "Rows to print (0 = all)");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Game-by-game GCP of two players");
    std::string player_a;
    std::string player_b;
    cmp_cmd->add_option("--a", player_a, "First player id")->required();
    cmp_cmd->add_option("--b", player_b, "Second player id")->required();

    // scatter
    auto* scatter_cmd = app.add_subcommand("scatter", "Salary against rate of return, one point per qualifying player");
    scatter_cmd->add_option("--sgv-override", sgv_override, "Single game value in dollars");

    // histogram
    auto* hist_cmd = app.add_subcommand("histogram", "Histogram of non-zero GCPs");
    hist_cmd->add_option("--bin-width", bin_width, "Bin width");

    // breakeven
    auto* be_cmd = app.add_subcommand("breakeven", "Per-game cash flow and GCP that recover a salary at a zero rate");
    double be_salary = 0.0;
    std::int64_t be_games = 82;
    std::optional<double> be_sgv;
    be_cmd->add_option("--salary", be_salary, "Salary in dollars")->required();
    be_cmd->add_option("--n-games", be_games, "Games the salary covers")->required();
    be_cmd->add_option("--sgv", be_sgv, "Single game value in dollars (else computed from --games and --salaries)");

    // summary
    auto* sum_cmd = app.add_subcommand("summary", "Season totals and salary statistics of the ROI pool");
    sum_cmd->add_option("--sgv-override", sgv_override, "Single game value in dollars");

    // validate
    auto* val_cmd = app.add_subcommand("validate", "Report data problems; exit 1 when any is found");
    bool strict = false;
    int season_length = 82;
    val_cmd->add_flag("--strict-season", strict, "Flag teams with more games than --season-length");
    val_cmd->add_option("--season-length", season_length, "Games per team in a season");

    // synth
    auto* syn_cmd = app.add_subcommand("synth", "Write a synthetic season in the ingest schema");
    SynthConfig syn;
    std::string out_dir;
    syn_cmd->add_option("--seed", syn.seed, "Random seed");
    syn_cmd->add_option("--teams", syn.teams, "Team count");
    syn_cmd->add_option("--games", syn.games, "Total game count");
    syn_cmd->add_option("--out-dir", out_dir, "Directory for games.csv and salaries.csv")->required();
    syn_cmd->add_option("--missed-prob", syn.missed_game_probability, "Chance a player misses a game");
    syn_cmd->add_option("--trades", syn.trades, "Mid-season trades");
    syn_cmd->add_flag("--realistic", syn.realistic, "Scale team minutes to 240");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kSchema;
    }

    try {
        if (gcp_cmd->parsed() || hist_cmd->parsed()) {
            Season s = load_season(g);
            if (hist_cmd->parsed() || gcp_hist) {
                const auto bins = histogram(nonzero_gcp_distribution(s.reports), bin_width);
                emit(g, [&](std::ostream& os, const OutputOptions& o) { write_histogram(os, bins, o); });
                return kOk;
            }
            if (game_id.empty()) throw UsageError("--game-id is required");
            const GameRecord* game = s.ds.find_game(game_id);
            if (!game) throw UsageError("no game '" + game_id + "'");
            const std::size_t gi = static_cast<std::size_t>(game - s.ds.games.data());
            std::optional<std::string_view> t;
            if (team) t = *team;
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_gcp_report(os, s.ds, s.reports[gi], t, o); });
        } else if (roi_cmd->parsed()) {
            Season s = load_season(g);
            const SalaryTable sal = load_salaries(g);
            RoiOptions ro = roi_options(g);
            ro.sgv_override = sgv_override;
            ro.irr.abs_tol = tol;
            const auto rois = player_rois(*s.index, sal, ro);
            if (board == "all") {
                emit(g, [&](std::ostream& os, const OutputOptions& o) { write_player_rois(os, rois, o); });
            } else {
                const RoiBoards b = leaderboard_roi(rois, board_k, board_k);
                std::cerr << b.qualifying << " players ranked; " << b.total_defaults << " total default; "
                          << b.below_min_games << " below " << ro.min_games << " games\n";
                emit(g, [&](std::ostream& os, const OutputOptions& o) {
                    write_leaderboard(os, board == "top" ? b.top : b.bottom, o);
                });
            }
        } else if (pv_cmd->parsed()) {
            Season s = load_season(g);
            std::optional<SalaryTable> sal;
            if (!g.salaries.empty()) sal = load_salaries(g);
            const auto rows = leaderboard_pvgcp(*s.index, sal ? &*sal : nullptr, pv_top);
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_leaderboard(os, rows, o); });
        } else if (cmp_cmd->parsed()) {
            Season s = load_season(g);
            const auto c = comparison(*s.index, player_a, player_b);
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_comparison(os, c, o); });
        } else if (scatter_cmd->parsed()) {
            Season s = load_season(g);
            const SalaryTable sal = load_salaries(g);
            RoiOptions ro = roi_options(g);
            ro.sgv_override = sgv_override;
            const auto pts = roi_salary_scatter(*s.index, sal, ro);
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_scatter(os, pts, o); });
        } else if (be_cmd->parsed()) {
            SingleGameValue value;
            if (be_sgv) {
                value = sgv_fixed(*be_sgv);
            } else {
                if (g.games.empty() || g.salaries.empty()) {
                    throw UsageError("breakeven needs --sgv, or --games and --salaries");
                }
                const SeasonDataset ds = load_games(g);
                value = season_sgv(ds, load_salaries(g), roi_options(g));
            }
            const BreakEven b = breakeven_gcp(be_salary, be_games, value);
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_breakeven(os, be_salary, be_games, value, b, o); });
        } else if (sum_cmd->parsed()) {
            Season s = load_season(g);
            const SalaryTable sal = load_salaries(g);
            RoiOptions ro = roi_options(g);
            ro.sgv_override = sgv_override;
            const SeasonSummary sm = summarize(*s.index, sal, ro);
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_summary(os, sm, o); });
        } else if (val_cmd->parsed()) {
            const SeasonDataset ds = load_games(g);
            ValidateOptions vo;
            vo.strict_season = strict;
            vo.season_length = season_length;
            const ValidationReport r = validate_dataset(ds, vo);
            emit(g, [&](std::ostream& os, const OutputOptions& o) { write_validation(os, r, o); });
            return r.ok() ? kOk : kValidation;
        } else if (syn_cmd->parsed()) {
            write_synth(synth_season(syn), out_dir);
        }
    } catch (const ValidationFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        write_validation(std::cerr, e.report, {});
        return kValidation;
    } catch (const MissingSalary& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMissingSalary;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const DuplicateLine& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const NonPositiveSalary& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kOk;
}
