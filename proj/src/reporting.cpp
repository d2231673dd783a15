#include "gcproi/reporting.hpp"

#include "gcproi/parallel.hpp"

#include "csv.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

namespace gcproi {

using json = nlohmann::ordered_json;

namespace {

constexpr int kGcpDecimals = 4;
constexpr int kPvgcpDecimals = 3;
constexpr int kRateDecimals = 3;
constexpr int kDollarDecimals = 0;

std::string text(double v, int decimals, const OutputOptions& o)
{
    return o.full_precision ? csv::shortest(v) : csv::fixed(v, decimals);
}

json number(double v, int decimals, const OutputOptions& o)
{
    if (o.full_precision) return v;
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(v * scale) / scale;
    return r == 0.0 ? 0.0 : r;
}

void emit_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    out << csv::join(header) << '\n';
    for (const auto& r : rows) out << csv::join(r) << '\n';
}

void emit_json(std::ostream& out, const json& j)
{
    out << j.dump(2) << '\n';
}

/// metric descending, then name, then id.
bool board_before(double ma, const std::string& na, const std::string& ia, double mb, const std::string& nb,
                  const std::string& ib)
{
    if (ma != mb) return ma > mb;
    return std::tie(na, ia) < std::tie(nb, ib);
}

LeaderboardRow row_from(const PlayerRoi& p)
{
    LeaderboardRow r;
    r.player_id = p.player_id;
    r.player_name = p.player_name;
    r.salary_usd = p.salary_usd;
    r.games_played = p.games_played;
    r.pvgcp = p.pvgcp;
    r.gcp_per_game = p.games_played > 0 ? p.pvgcp / p.games_played : 0.0;
    if (p.roi) r.roi = p.roi->rate;
    return r;
}

} // namespace

std::string_view name(RoiStatus s)
{
    switch (s) {
    case RoiStatus::Ok: return "ok";
    case RoiStatus::TotalDefault: return "total_default";
    case RoiStatus::BelowMinGames: return "below_min_games";
    }
    return "unknown";
}

SingleGameValue season_sgv(const SeasonDataset& ds, const SalaryTable& salaries, const RoiOptions& opts)
{
    if (opts.sgv_override) return sgv_fixed(*opts.sgv_override);
    const std::int64_t games = opts.season_games.value_or(static_cast<std::int64_t>(ds.games.size()));
    return sgv(salaries.total(), games);
}

std::vector<PlayerRoi> player_rois(const SeasonIndex& index, const SalaryTable& salaries, const RoiOptions& opts)
{
    const SingleGameValue value = season_sgv(index.dataset(), salaries, opts);

    std::vector<std::string> ids;
    std::vector<std::string> missing;
    for (const auto& id : index.players()) {
        if (salaries.find(id)) {
            ids.push_back(id);
        } else if (pvgcp(index, id).games_played > 0) {
            missing.push_back(id);
        }
    }
    if (!missing.empty()) throw MissingSalary(std::move(missing));

    std::vector<PlayerRoi> out(ids.size());
    parallel_for(
        ids.size(),
        [&](std::size_t i) {
            const std::string& id = ids[i];
            PlayerRoi& p = out[i];
            p.player_id = id;
            p.player_name = index.player_name(id);
            p.salary_usd = salaries.find(id)->salary_usd;
            const PvGcp pv = pvgcp(index, id);
            p.pvgcp = pv.value;
            p.games_played = pv.games_played;
            p.schedule_length = pv.schedule_length;
            // Every flow is zero exactly when no game was played.
            if (p.games_played == 0) {
                p.status = RoiStatus::TotalDefault;
                return;
            }
            if (p.games_played < opts.min_games) {
                p.status = RoiStatus::BelowMinGames;
                return;
            }
            const CashFlowSeries cf = cash_flows(index, id, value, static_cast<double>(p.salary_usd));
            try {
                p.roi = irr(cf, opts.irr);
                p.status = RoiStatus::Ok;
            } catch (const AllZeroFlows&) {
                p.status = RoiStatus::TotalDefault;
            }
        },
        opts.threads);
    return out;
}

std::vector<LeaderboardRow> leaderboard_pvgcp(const SeasonIndex& index, const SalaryTable* salaries,
                                              std::size_t top_k)
{
    std::vector<LeaderboardRow> rows;
    for (const auto& id : index.players()) {
        const PvGcp pv = pvgcp(index, id);
        LeaderboardRow r;
        r.player_id = id;
        r.player_name = index.player_name(id);
        if (salaries) {
            if (const auto* e = salaries->find(id)) r.salary_usd = e->salary_usd;
        }
        r.games_played = pv.games_played;
        r.pvgcp = pv.value;
        r.gcp_per_game = pv.games_played > 0 ? pv.value / pv.games_played : 0.0;
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        return board_before(a.pvgcp, a.player_name, a.player_id, b.pvgcp, b.player_name, b.player_id);
    });
    if (top_k > 0 && rows.size() > top_k) rows.resize(top_k);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i + 1);
    return rows;
}

RoiBoards leaderboard_roi(const std::vector<PlayerRoi>& rois, std::size_t top_k, std::size_t bottom_k)
{
    RoiBoards boards;
    std::vector<LeaderboardRow> ranked;
    for (const auto& p : rois) {
        switch (p.status) {
        case RoiStatus::Ok: ranked.push_back(row_from(p)); break;
        case RoiStatus::TotalDefault: ++boards.total_defaults; break;
        case RoiStatus::BelowMinGames: ++boards.below_min_games; break;
        }
    }
    std::sort(ranked.begin(), ranked.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        return board_before(*a.roi, a.player_name, a.player_id, *b.roi, b.player_name, b.player_id);
    });
    for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = static_cast<int>(i + 1);
    boards.qualifying = ranked.size();

    const std::size_t nt = std::min(top_k, ranked.size());
    boards.top.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(nt));
    const std::size_t nb = std::min(bottom_k, ranked.size());
    boards.bottom.assign(ranked.rbegin(), ranked.rbegin() + static_cast<std::ptrdiff_t>(nb));
    return boards;
}

RoiBoards leaderboard_roi(const SeasonIndex& index, const SalaryTable& salaries, std::size_t top_k,
                          std::size_t bottom_k, const RoiOptions& opts)
{
    return leaderboard_roi(player_rois(index, salaries, opts), top_k, bottom_k);
}

ComparisonSeries comparison(const SeasonIndex& index, std::string_view player_a, std::string_view player_b)
{
    ComparisonSeries c;
    c.player_a = std::string(player_a);
    c.player_b = std::string(player_b);
    const auto fill = [&](std::string_view id, std::vector<std::string>& games, std::vector<double>& gcp,
                          std::vector<double>& cum) {
        const PlayerSchedule s = index.schedule(id);
        CompensatedSum<double> acc;
        for (std::size_t i = 0; i < s.size(); ++i) {
            games.push_back(index.dataset().games[s.games[i]].game_id);
            gcp.push_back(s.gcp[i]);
            acc += s.gcp[i];
            cum.push_back(acc.value());
        }
    };
    fill(player_a, c.games_a, c.gcp_a, c.cumulative_a);
    fill(player_b, c.games_b, c.gcp_b, c.cumulative_b);
    return c;
}

std::vector<ScatterPoint> roi_salary_scatter(const std::vector<PlayerRoi>& rois)
{
    std::vector<ScatterPoint> pts;
    for (const auto& p : rois) {
        if (p.status == RoiStatus::Ok) pts.push_back({p.player_id, p.salary_usd, p.roi->rate});
    }
    return pts;
}

std::vector<ScatterPoint> roi_salary_scatter(const SeasonIndex& index, const SalaryTable& salaries,
                                             const RoiOptions& opts)
{
    return roi_salary_scatter(player_rois(index, salaries, opts));
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, double bin_width)
{
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw NonPositiveInput("bin width must be positive");
    std::vector<HistogramBin> bins;
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw NonPositiveInput("histogram values must be finite and >= 0");
        auto k = static_cast<std::size_t>(std::floor(v / bin_width));
        // Division can land one bin low or high at an exact edge.
        if (static_cast<double>(k + 1) * bin_width <= v) ++k;
        if (k > 0 && static_cast<double>(k) * bin_width > v) --k;
        if (bins.size() <= k) {
            const std::size_t old = bins.size();
            bins.resize(k + 1);
            for (std::size_t i = old; i <= k; ++i) {
                bins[i].lo = static_cast<double>(i) * bin_width;
                bins[i].hi = static_cast<double>(i + 1) * bin_width;
            }
        }
        ++bins[k].count;
    }
    return bins;
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty()) return std::nan("");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

SeasonSummary summarize(const SeasonIndex& index, const SalaryTable& salaries, const RoiOptions& opts)
{
    SeasonSummary s;
    const auto& ds = index.dataset();
    s.games = ds.games.size();
    s.teams = ds.teams().size();
    s.players_with_games = index.players().size();
    s.salary_entries = salaries.entries.size();
    s.salary_total_usd = salaries.total();
    s.sgv_usd = season_sgv(ds, salaries, opts).dollars;
    s.min_games = opts.min_games;

    const auto rois = player_rois(index, salaries, opts);
    std::vector<double> pay;
    for (const auto& p : rois) {
        if (p.status == RoiStatus::Ok) pay.push_back(static_cast<double>(p.salary_usd));
        if (p.status == RoiStatus::TotalDefault) ++s.total_default_players;
    }
    s.qualifying_players = pay.size();
    if (!pay.empty()) {
        CompensatedSum<double> acc;
        for (double v : pay) acc += v;
        s.qualifying_salary_mean = acc.value() / static_cast<double>(pay.size());
        s.qualifying_salary_median = quantile(pay, 0.5);
        s.qualifying_salary_p75 = quantile(pay, 0.75);
    }

    for (std::size_t gi = 0; gi < ds.games.size(); ++gi) {
        for (const auto& t : index.reports()[gi].teams) {
            for (const auto& p : t.players) {
                if (p.gcp > 0.0) ++s.nonzero_gcp_count;
                if (p.gcp > s.max_gcp) {
                    s.max_gcp = p.gcp;
                    s.max_gcp_player = p.player_id;
                    s.max_gcp_game = ds.games[gi].game_id;
                }
            }
        }
    }
    return s;
}

void write_gcp_report(std::ostream& out, const SeasonDataset& ds, const GameGcpReport& report,
                      std::optional<std::string_view> team, const OutputOptions& opts)
{
    const GameRecord* game = ds.find_game(report.game_id);
    const auto names = ds.player_names();
    const auto display = [&](const std::string& id) {
        const auto it = names.find(id);
        return it == names.end() ? std::string() : it->second;
    };
    std::vector<const TeamGcp*> teams;
    for (const auto& t : report.teams) {
        if (!team || t.team_id == *team) teams.push_back(&t);
    }
    if (team && teams.empty()) throw UnknownTeam("team '" + std::string(*team) + "' not in game '" + report.game_id + "'");

    if (opts.format == Format::Json) {
        json j;
        j["game_id"] = report.game_id;
        if (game) j["date"] = format_date(game->date);
        j["teams"] = json::array();
        for (const TeamGcp* t : teams) {
            json jt;
            jt["team_id"] = t->team_id;
            jt["active_field_count"] = t->active.size();
            jt["weight"] = t->weight.value;
            json fields = json::array();
            for (int f = 0; f < kFieldCount; ++f) {
                if (t->active.fields[f]) fields.push_back(std::string(kFieldNames[f]));
            }
            jt["active_fields"] = fields;
            jt["players"] = json::array();
            for (const auto& p : t->players) {
                jt["players"].push_back(
                    {{"player_id", p.player_id}, {"player_name", display(p.player_id)}, {"gcp", number(p.gcp, kGcpDecimals, opts)}});
            }
            jt["sum"] = number(t->sum(), kGcpDecimals, opts);
            j["teams"].push_back(jt);
        }
        emit_json(out, j);
        return;
    }

    std::vector<std::vector<std::string>> rows;
    for (const TeamGcp* t : teams) {
        for (const auto& p : t->players) {
            rows.push_back({report.game_id, t->team_id, std::to_string(t->active.size()), csv::shortest(t->weight.value),
                            p.player_id, display(p.player_id), text(p.gcp, kGcpDecimals, opts)});
        }
    }
    emit_csv(out, {"game_id", "team_id", "active_fields", "weight", "player_id", "player_name", "gcp"}, rows);
}

void write_player_rois(std::ostream& out, const std::vector<PlayerRoi>& rois, const OutputOptions& opts)
{
    // Solved players by rate, then the labelled ones by id.
    std::vector<const PlayerRoi*> order;
    for (const auto& p : rois) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [](const PlayerRoi* a, const PlayerRoi* b) {
        const bool ra = a->status == RoiStatus::Ok;
        const bool rb = b->status == RoiStatus::Ok;
        if (ra != rb) return ra;
        if (ra) return board_before(a->roi->rate, a->player_name, a->player_id, b->roi->rate, b->player_name, b->player_id);
        if (a->status != b->status) return a->status < b->status;
        return a->player_id < b->player_id;
    });

    if (opts.format == Format::Json) {
        json j = json::array();
        for (const PlayerRoi* p : order) {
            json r = {{"player_id", p->player_id},
                      {"player_name", p->player_name},
                      {"salary_usd", p->salary_usd},
                      {"gp", p->games_played},
                      {"pvgcp", number(p->pvgcp, kPvgcpDecimals, opts)}};
            r["roi_pct"] = p->roi ? number(p->roi->rate, kRateDecimals, opts) : json(nullptr);
            r["status"] = std::string(name(p->status));
            j.push_back(r);
        }
        emit_json(out, j);
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const PlayerRoi* p : order) {
        rows.push_back({p->player_id, p->player_name, std::to_string(p->salary_usd), std::to_string(p->games_played),
                        text(p->pvgcp, kPvgcpDecimals, opts),
                        p->roi ? text(p->roi->rate, kRateDecimals, opts) : std::string(), std::string(name(p->status))});
    }
    emit_csv(out, {"player_id", "player_name", "salary_usd", "gp", "pvgcp", "roi_pct", "status"}, rows);
}

void write_leaderboard(std::ostream& out, const std::vector<LeaderboardRow>& rows, const OutputOptions& opts)
{
    const bool with_roi = std::any_of(rows.begin(), rows.end(), [](const LeaderboardRow& r) { return r.roi.has_value(); });
    if (opts.format == Format::Json) {
        json j = json::array();
        for (const auto& r : rows) {
            json o = {{"rank", r.rank},
                      {"player_id", r.player_id},
                      {"player_name", r.player_name},
                      {"salary_usd", r.salary_usd},
                      {"gp", r.games_played},
                      {"pvgcp", number(r.pvgcp, kPvgcpDecimals, opts)},
                      {"gcp_pg", number(r.gcp_per_game, kPvgcpDecimals, opts)}};
            if (with_roi) o["roi_pct"] = r.roi ? number(*r.roi, kRateDecimals, opts) : json(nullptr);
            j.push_back(o);
        }
        emit_json(out, j);
        return;
    }
    std::vector<std::string> header = {"rank", "player_id", "player_name", "salary_usd", "gp", "pvgcp", "gcp_pg"};
    if (with_roi) header.push_back("roi_pct");
    std::vector<std::vector<std::string>> body;
    for (const auto& r : rows) {
        std::vector<std::string> row = {std::to_string(r.rank),          r.player_id,
                                        r.player_name,                   std::to_string(r.salary_usd),
                                        std::to_string(r.games_played), text(r.pvgcp, kPvgcpDecimals, opts),
                                        text(r.gcp_per_game, kPvgcpDecimals, opts)};
        if (with_roi) row.push_back(r.roi ? text(*r.roi, kRateDecimals, opts) : std::string());
        body.push_back(std::move(row));
    }
    emit_csv(out, header, body);
}

void write_comparison(std::ostream& out, const ComparisonSeries& c, const OutputOptions& opts)
{
    const std::size_t n = std::max(c.gcp_a.size(), c.gcp_b.size());
    if (opts.format == Format::Json) {
        const auto side = [&](const std::string& id, const std::vector<std::string>& games, const std::vector<double>& g,
                              const std::vector<double>& cum) {
            json s = {{"player_id", id}, {"games", games}};
            json gj = json::array();
            json cj = json::array();
            for (std::size_t i = 0; i < g.size(); ++i) {
                gj.push_back(number(g[i], kGcpDecimals, opts));
                cj.push_back(number(cum[i], kGcpDecimals, opts));
            }
            s["gcp"] = gj;
            s["cumulative"] = cj;
            return s;
        };
        emit_json(out, {{"a", side(c.player_a, c.games_a, c.gcp_a, c.cumulative_a)},
                        {"b", side(c.player_b, c.games_b, c.gcp_b, c.cumulative_b)}});
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> r = {std::to_string(i + 1)};
        const auto add = [&](const std::vector<std::string>& games, const std::vector<double>& g,
                             const std::vector<double>& cum) {
            if (i < g.size()) {
                r.push_back(games[i]);
                r.push_back(text(g[i], kGcpDecimals, opts));
                r.push_back(text(cum[i], kGcpDecimals, opts));
            } else {
                r.insert(r.end(), 3, std::string());
            }
        };
        add(c.games_a, c.gcp_a, c.cumulative_a);
        add(c.games_b, c.gcp_b, c.cumulative_b);
        rows.push_back(std::move(r));
    }
    emit_csv(out,
             {"game_index", "game_id_a", "gcp_" + c.player_a, "cumulative_" + c.player_a, "game_id_b",
              "gcp_" + c.player_b, "cumulative_" + c.player_b},
             rows);
}

void write_scatter(std::ostream& out, const std::vector<ScatterPoint>& points, const OutputOptions& opts)
{
    if (opts.format == Format::Json) {
        json j = json::array();
        for (const auto& p : points) {
            j.push_back({{"player_id", p.player_id}, {"salary_usd", p.salary_usd}, {"roi_pct", number(p.roi, kRateDecimals, opts)}});
        }
        emit_json(out, j);
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : points) rows.push_back({p.player_id, std::to_string(p.salary_usd), text(p.roi, kRateDecimals, opts)});
    emit_csv(out, {"player_id", "salary_usd", "roi_pct"}, rows);
}

void write_histogram(std::ostream& out, const std::vector<HistogramBin>& bins, const OutputOptions& opts)
{
    // Bin edges always print exactly; they are multiples of the width.
    if (opts.format == Format::Json) {
        json j = json::array();
        for (const auto& b : bins) j.push_back({{"bin_lo", b.lo}, {"bin_hi", b.hi}, {"count", b.count}});
        emit_json(out, j);
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& b : bins) rows.push_back({csv::shortest(b.lo), csv::shortest(b.hi), std::to_string(b.count)});
    emit_csv(out, {"bin_lo", "bin_hi", "count"}, rows);
}

void write_summary(std::ostream& out, const SeasonSummary& s, const OutputOptions& opts)
{
    const std::vector<std::pair<std::string, json>> kv = {
        {"games", s.games},
        {"teams", s.teams},
        {"players_with_games", s.players_with_games},
        {"salary_entries", s.salary_entries},
        {"salary_total_usd", s.salary_total_usd},
        {"sgv_usd", number(s.sgv_usd, kDollarDecimals, opts)},
        {"min_games", s.min_games},
        {"qualifying_players", s.qualifying_players},
        {"total_default_players", s.total_default_players},
        {"qualifying_salary_mean_usd", number(s.qualifying_salary_mean, kDollarDecimals, opts)},
        {"qualifying_salary_median_usd", number(s.qualifying_salary_median, kDollarDecimals, opts)},
        {"qualifying_salary_p75_usd", number(s.qualifying_salary_p75, kDollarDecimals, opts)},
        {"nonzero_gcp_count", s.nonzero_gcp_count},
        {"max_gcp", number(s.max_gcp, kGcpDecimals, opts)},
        {"max_gcp_player", s.max_gcp_player},
        {"max_gcp_game", s.max_gcp_game},
    };
    if (opts.format == Format::Json) {
        json j = json::object();
        for (const auto& [k, v] : kv) j[k] = v;
        emit_json(out, j);
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : kv) {
        std::string val;
        if (v.is_string()) {
            val = v.get<std::string>();
        } else if (v.is_number_float()) {
            const int decimals = k == "max_gcp" ? kGcpDecimals : kDollarDecimals;
            val = text(v.get<double>(), decimals, opts);
        } else {
            val = v.dump();
        }
        rows.push_back({k, val});
    }
    emit_csv(out, {"key", "value"}, rows);
}

void write_breakeven(std::ostream& out, double salary, std::int64_t n_games, const SingleGameValue& value,
                     const BreakEven& b, const OutputOptions& opts)
{
    if (opts.format == Format::Json) {
        emit_json(out, {{"salary_usd", salary},
                        {"n_games", n_games},
                        {"sgv_usd", number(value.dollars, kDollarDecimals, opts)},
                        {"cash_flow_per_game_usd", number(b.cash_flow_per_game, kDollarDecimals, opts)},
                        {"gcp", number(b.gcp, kGcpDecimals, opts)}});
        return;
    }
    emit_csv(out, {"salary_usd", "n_games", "sgv_usd", "cash_flow_per_game_usd", "gcp"},
             {{csv::shortest(salary), std::to_string(n_games), text(value.dollars, kDollarDecimals, opts),
               text(b.cash_flow_per_game, kDollarDecimals, opts), text(b.gcp, kGcpDecimals, opts)}});
}

void write_validation(std::ostream& out, const ValidationReport& report, const OutputOptions& opts)
{
    if (opts.format == Format::Json) {
        json j = json::array();
        for (const auto& v : report.violations) {
            j.push_back({{"kind", std::string(name(v.kind))},
                         {"game_id", v.game_id},
                         {"team_id", v.team_id},
                         {"player_id", v.player_id},
                         {"detail", v.detail}});
        }
        emit_json(out, j);
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& v : report.violations) {
        rows.push_back({std::string(name(v.kind)), v.game_id, v.team_id, v.player_id, v.detail});
    }
    emit_csv(out, {"kind", "game_id", "team_id", "player_id", "detail"}, rows);
}

} // namespace gcproi
