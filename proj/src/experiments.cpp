#include "specshare/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "specshare/csv.hpp"

namespace specshare {

const char* to_string(SolveMode m) {
    switch (m) {
        case SolveMode::auto_detect: return "auto";
        case SolveMode::base: return "base";
        case SolveMode::corner: return "corner";
        case SolveMode::outside: return "outside";
    }
    return "unknown";
}

SolveMode solve_mode_from_string(const std::string& text) {
    if (text == "auto") return SolveMode::auto_detect;
    if (text == "base") return SolveMode::base;
    if (text == "corner") return SolveMode::corner;
    if (text == "outside") return SolveMode::outside;
    throw config_error("unknown solve mode '" + text + "'");
}

ExperimentConfig config_from_string(const std::string& text) {
    std::map<std::string, std::string> extras;
    ExperimentConfig cfg;
    cfg.params = params_from_kv(text, &extras);

    std::optional<double> d_l, d_f;
    for (const auto& [key, value] : extras) {
        if (key == "d_l") d_l = std::stod(value);
        else if (key == "d_f") d_f = std::stod(value);
        else if (key == "price_selection") cfg.selection = selection_from_string(value);
        else throw config_error("unknown config key '" + key + "'");
    }
    if (d_l.has_value() != d_f.has_value())
        throw config_error("d_l and d_f must be supplied together");
    if (d_l)
        cfg.d_override = DisagreementPoint{*d_l, *d_f, DisagreementProvenance::user_supplied};
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return config_from_string(text.str());
}

MarketParams apply_param(const MarketParams& params, const std::string& name, double value) {
    MarketParams p = params;
    if (name == "gamma") p.gamma = value;
    else if (name == "c") p.c = value;
    else if (name == "s_market") p.s_market = value;
    else if (name == "delta_part1") p.delta_part1 = value;
    else if (name == "l0") p.l0 = value;
    else if (name == "m_cap") p.m_cap = value;
    else if (name == "w") p.w = value;
    else if (name == "v_l") p.v_l = value;
    else if (name == "v_f") p.v_f = value;
    else if (name == "alpha") p.alpha = value;
    else if (name == "k") p.k = value;
    else if (name == "b") p.b = value;
    else if (name == "delta") p.v_l = p.v_f + value;
    else throw config_error("unknown sweep parameter '" + name + "'");
    return p;
}

namespace {

SolveMode resolve_mode(SolveMode mode, const MarketParams& params) {
    if (mode != SolveMode::auto_detect) return mode;
    return std::abs(params.delta()) < 1.0 ? SolveMode::base : SolveMode::corner;
}

// The swept parameter can shift the disagreement game; only the bargaining
// floor and the bargaining power cannot (m_cap bounds the search range).
bool moves_disagreement(const std::string& name) {
    return name != "l0" && name != "w";
}

} // namespace

PointResult solve_point(const MarketParams& params, SolveMode mode,
                        const ExperimentConfig& cfg, const DisagreementConfig& dcfg) {
    PointResult point;
    point.params = params;
    point.mode = resolve_mode(mode, params);

    if (cfg.d_override) {
        point.d = *cfg.d_override;
    } else if (point.mode == SolveMode::outside) {
        point.d = solve_outside_disagreement(params, dcfg);
    } else {
        DisagreementConfig d2 = dcfg;
        d2.price_selection = cfg.selection;
        point.d = solve_base_disagreement(params, d2);
    }

    switch (point.mode) {
        case SolveMode::base: {
            SolveResult r = solve_base(params, point.d);
            point.report = r.report;
            point.solutions = std::move(r.solutions);
            break;
        }
        case SolveMode::corner: {
            SolveResult r = solve_corner(params, point.d, cfg.selection);
            point.report = r.report;
            point.solutions = std::move(r.solutions);
            break;
        }
        case SolveMode::outside: {
            OutsideSolveResult r = solve_outside(params, point.d);
            point.report = r.report;
            point.bounded = r.bounded;
            if (r.bounded) point.i_l_star = maximize_outside_objective(params).i_l_star;
            point.solutions = std::move(r.solutions);
            break;
        }
        case SolveMode::auto_detect:
            break; // unreachable after resolve_mode
    }
    return point;
}

const std::vector<std::string>& row_header() {
    static const std::vector<std::string> header = {
        "gamma", "c", "s_market", "delta_part1", "l0", "m_cap", "w", "v_l", "v_f",
        "alpha", "k", "b", "delta", "mode", "exists", "bounded", "interior_ok",
        "pi_star", "d_total", "margin", "i_l_star", "d_l", "d_f", "d_provenance",
        "solution_index", "regime", "i_l", "i_f", "degree", "s_tilde", "theta",
        "p_l", "p_f", "n_l", "n_f", "x0", "n_tilde_l", "n_tilde_f", "pi_l", "pi_f",
        "u_excess_star", "resource_cost"};
    return header;
}

namespace {

void write_common(csv::Writer& w, const PointResult& point) {
    const MarketParams& p = point.params;
    w.field(p.gamma).field(p.c).field(p.s_market).field(p.delta_part1).field(p.l0);
    w.field(std::isfinite(p.m_cap) ? std::optional<double>(p.m_cap) : std::nullopt);
    w.field(p.w).field(p.v_l).field(p.v_f).field(p.alpha).field(p.k).field(p.b);
    w.field(p.delta());
    w.field(to_string(point.mode));
    w.field(point.report.exists);
    w.field(point.bounded);
    w.field(point.report.interior_ok);
    if (point.bounded) {
        w.field(point.report.pi_star).field(point.report.d).field(point.report.margin);
    } else {
        w.field("").field(point.report.d).field("");
    }
    w.field(point.i_l_star);
    w.field(point.d.d_l).field(point.d.d_f).field(to_string(point.d.provenance));
}

void write_solution(csv::Writer& w, const PointResult& point, std::size_t index) {
    const EquilibriumSolution& s = point.solutions[index];
    w.field(static_cast<double>(index + 1));
    w.field(to_string(s.regime));
    w.field(s.alloc.i_l).field(s.alloc.i_f).field(s.alloc.i_f / s.alloc.i_l);
    w.field(s.flows.s_tilde).field(s.flows.theta);
    w.field(s.prices.p_l).field(s.prices.p_f);
    w.field(s.split.n_l).field(s.split.n_f).field(s.split.x0);
    if (s.demand) {
        w.field(s.demand->n_tilde_l).field(s.demand->n_tilde_f);
    } else {
        w.field("").field("");
    }
    w.field(s.payoffs.pi_l).field(s.payoffs.pi_f);
    w.field(s.u_excess_star);
    if (s.regime == SolutionRegime::base_corner) w.field("");
    else w.field(resource_cost_metric(s));
}

constexpr int kSolutionColumns = 18;

} // namespace

void write_point(std::ostream& out, const PointResult& point, bool with_header) {
    csv::Writer w(out);
    if (with_header) w.row(row_header());
    if (point.solutions.empty()) {
        write_common(w, point);
        for (int i = 0; i < kSolutionColumns; ++i) w.field("");
        w.end_row();
        return;
    }
    for (std::size_t i = 0; i < point.solutions.size(); ++i) {
        write_common(w, point);
        write_solution(w, point, i);
        w.end_row();
    }
}

void run_sweep(const SweepSpec& spec, SolveMode mode, const ExperimentConfig& cfg,
               const DisagreementConfig& dcfg, std::ostream& out) {
    if (spec.steps < 2) throw config_error("sweep needs at least 2 steps");
    if (!(spec.hi >= spec.lo)) throw config_error("sweep range must have hi >= lo");
    apply_param(cfg.params, spec.param, spec.lo); // validates the name up front

    const bool refresh_d = !cfg.d_override && moves_disagreement(spec.param);
    ExperimentConfig point_cfg = cfg;
    bool first = true;
    for (int i = 0; i < spec.steps; ++i) {
        const double value =
            spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                          static_cast<double>(spec.steps - 1);
        const MarketParams params = apply_param(cfg.params, spec.param, value);
        if (!refresh_d && !cfg.d_override && first)
            point_cfg.d_override = solve_point(params, mode, cfg, dcfg).d;
        const PointResult point = solve_point(params, mode, point_cfg, dcfg);
        write_point(out, point, first);
        first = false;
    }
}

const std::vector<FigureSpec>& figure_presets() {
    static const std::vector<FigureSpec> presets = {
        {"degree_coop_vs_delta", {"delta", -0.95, 0.95, 39}, SolveMode::base},
        {"total_payoff_vs_L0", {"l0", 0.1, 1.0, 46}, SolveMode::base},
        {"sp_payoffs_vs_L0", {"l0", 0.1, 1.0, 46}, SolveMode::base},
        {"payoffs_vs_s", {"s_market", 0.8, 2.0, 25}, SolveMode::base},
        {"subscriptions_vs_delta", {"delta", -0.95, 0.95, 39}, SolveMode::base},
        {"resource_cost", {"s_market", 0.8, 2.0, 25}, SolveMode::base},
        {"outside_invest_vs_gamma", {"gamma", 0.65, 2.0, 28}, SolveMode::outside},
        {"outside_invest_vs_L0", {"l0", 0.1, 2.5, 49}, SolveMode::outside},
        {"outside_payoffs_vs_L0", {"l0", 0.1, 1.5, 29}, SolveMode::outside},
        {"outside_metric_vs_s", {"s_market", 0.8, 2.0, 25}, SolveMode::outside},
    };
    return presets;
}

void run_figure(const std::string& dataset, const ExperimentConfig& cfg,
                const DisagreementConfig& dcfg, std::ostream& out,
                std::optional<double> lo, std::optional<double> hi,
                std::optional<int> steps) {
    const auto& presets = figure_presets();
    const auto it = std::find_if(presets.begin(), presets.end(),
                                 [&](const FigureSpec& f) { return f.dataset == dataset; });
    if (it == presets.end()) throw config_error("unknown dataset id '" + dataset + "'");
    SweepSpec sweep = it->sweep;
    if (lo) sweep.lo = *lo;
    if (hi) sweep.hi = *hi;
    if (steps) sweep.steps = *steps;
    run_sweep(sweep, it->mode, cfg, dcfg, out);
}

bool oracle_agrees(const MarketParams& params, const DisagreementPoint& d,
                   const Allocation& candidate, double candidate_value,
                   const GridSpec& grid, Stage2Mode mode, double* residual) {
    const GridArgmax best = grid_argmax_u_excess(params, d, grid, mode);

    // The claimed optimum must match the grid optimum up to grid tolerance.
    const double value_violation = std::abs(candidate_value - best.value) - best.tolerance;

    // And the candidate's own cell must be near-optimal; ties elsewhere on the
    // grid (the delta = 0 twin optimum) stay acceptable this way.
    const double l_step =
        (grid.i_l_hi - grid.i_l_lo) / static_cast<double>(grid.i_l_points - 1);
    double snapped_l = grid.i_l_lo +
                       l_step * std::clamp(std::round((candidate.i_l - grid.i_l_lo) / l_step),
                                           0.0, static_cast<double>(grid.i_l_points - 1));
    const double f_step = snapped_l / static_cast<double>(grid.i_f_points - 1);
    const double snapped_f = std::min(
        snapped_l, f_step * std::clamp(std::round(candidate.i_f / f_step), 0.0,
                                       static_cast<double>(grid.i_f_points - 1)));
    const double local = mode == Stage2Mode::base
                             ? u_excess({snapped_l, snapped_f}, params, d)
                             : outside_u_excess({snapped_l, snapped_f}, params, d);
    const double local_violation = (best.value - local) - best.tolerance;

    const double worst = std::max(value_violation, local_violation);
    if (residual) *residual = worst;
    return worst <= 0.0;
}

namespace {

CheckResult check(const std::string& name, double residual, double threshold,
                  std::string detail = {}) {
    return {name, residual <= threshold, residual, threshold, std::move(detail)};
}

void verify_base(const ExperimentConfig& cfg, const VerifyOptions& opts,
                 std::vector<CheckResult>& out) {
    const MarketParams& p = cfg.params;
    const DisagreementPoint d{}; // argmax comparisons are invariant to d
    const double delta = p.delta();
    if (std::abs(delta) >= 1.0) return;

    const GridSpec grid{p.l0, 3.0 * p.l0, opts.grid_points, opts.grid_points};
    const SolveResult solved = solve_base(p, d);
    double worst = 0.0;
    for (const EquilibriumSolution& s : solved.solutions) {
        double r = 0.0;
        oracle_agrees(p, d, s.alloc, u_excess(s.alloc, p, d), grid, Stage2Mode::base, &r);
        worst = std::max(worst, r);
    }
    out.push_back(check("base_closed_form_vs_oracle", worst, 0.0));

    const ProbeGrid probe{p.c - 1.0, p.c + 3.0, opts.probe.points};
    double gain = 0.0;
    for (const EquilibriumSolution& s : solved.solutions)
        gain = std::max(gain, best_response_gain(s.prices, s.alloc, p, Stage2Mode::base, probe));
    out.push_back(check("base_nash_certification", gain, 1e-4));

    double closure = 0.0;
    for (const EquilibriumSolution& s : solved.solutions) {
        const PayoffPair rebuilt = base_payoffs(s.alloc, s.prices, s.split, s.flows, p);
        closure = std::max({closure, std::abs(rebuilt.pi_l - s.payoffs.pi_l),
                            std::abs(rebuilt.pi_f - s.payoffs.pi_f)});
    }
    out.push_back(check("base_money_flow_closure", closure, 1e-12));

    double existence_mismatch = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double gamma = 0.1 + 0.1 * static_cast<double>(i);
        const MarketParams probe_params = apply_param(p, "gamma", gamma);
        const DisagreementPoint fixed{0.2, 0.2, DisagreementProvenance::user_supplied};
        const SolveResult r = solve_base(probe_params, fixed);
        const bool predicted =
            total_base_payoff(delta, gamma, p.l0) >= fixed.total();
        if (predicted != !r.solutions.empty()) existence_mismatch += 1.0;
    }
    out.push_back(check("base_existence_consistency", existence_mismatch, 0.0));
}

void verify_outside(const ExperimentConfig& cfg, const VerifyOptions& opts,
                    std::vector<CheckResult>& out) {
    const MarketParams& p = cfg.params;
    if (p.delta() != 0.0) return;

    const OutsideMaximum max = maximize_outside_objective(p);
    if (!max.bounded) {
        out.push_back({"outside_boundedness", true, 0.0, 0.0,
                       "flagged: unbounded objective (leading coefficient >= 0, no m_cap); "
                       "dependent checks skipped"});
        return;
    }
    out.push_back({"outside_boundedness", true, 0.0, 0.0, "bounded"});

    const DisagreementPoint d{};
    const OutsideSolveResult solved = solve_outside(p, d);
    if (!solved.report.exists) {
        out.push_back({"outside_closed_form_vs_oracle", true, 0.0, 0.0,
                       "skipped: no interior solutions at this configuration"});
        return;
    }

    double hi = 3.0 * std::max(max.i_l_star, p.l0);
    if (p.b > 0.0) hi = std::min(hi, (4.0 / p.b) * (1.0 - 1e-9));
    const GridSpec grid{p.l0, hi, opts.grid_points, opts.grid_points};
    double worst = 0.0;
    for (const EquilibriumSolution& s : solved.solutions) {
        double r = 0.0;
        oracle_agrees(p, d, s.alloc, outside_u_excess(s.alloc, p, d), grid,
                      Stage2Mode::outside, &r);
        worst = std::max(worst, r);
    }
    out.push_back(check("outside_closed_form_vs_oracle", worst, 0.0));

    const ProbeGrid probe{p.c - 1.0, p.c + 3.0, opts.probe.points};
    double gain = 0.0;
    for (const EquilibriumSolution& s : solved.solutions)
        gain = std::max(gain,
                        best_response_gain(s.prices, s.alloc, p, Stage2Mode::outside, probe));
    out.push_back(check("outside_nash_certification", gain, 1e-4));

    // Closed-form prices/demands against composition through the demand equations.
    double compose = 0.0;
    for (const EquilibriumSolution& s : solved.solutions) {
        const double base = 1.0 / 15.0 + 2.0 * p.c / 3.0 + p.k / 3.0;
        const bool full = s.alloc.i_f > 0.0;
        const double p_low = base + p.b * max.i_l_star / 15.0;
        const double p_high = base + 1.0 / 5.0 + 4.0 * p.b * max.i_l_star / 15.0;
        const double expect_pl = full ? p_low : p_high;
        const double expect_pf = full ? p_high : p_low;
        compose = std::max({compose, std::abs(s.prices.p_l - expect_pl),
                            std::abs(s.prices.p_f - expect_pf)});
    }
    out.push_back(check("outside_price_closed_forms", compose, 1e-12));
}

} // namespace

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg, const VerifyOptions& opts) {
    std::vector<CheckResult> checks;
    const IdentityReport identities = identity_suite(opts.seed, opts.draws);
    checks.push_back(check("identity_boundary_gap", identities.worst_gap_residual, 1e-12));
    checks.push_back(
        check("identity_convexity_fd", identities.worst_convexity_residual, 1e-5));
    checks.push_back(check("identity_scale_invariance", identities.worst_scale_residual, 1e-12));
    verify_base(cfg, opts, checks);
    verify_outside(cfg, opts, checks);
    return checks;
}

void write_verify_csv(std::ostream& out, const std::vector<CheckResult>& checks) {
    csv::Writer w(out);
    w.row({"check", "pass", "residual", "threshold", "detail"});
    for (const CheckResult& c : checks) {
        w.field(c.name).field(c.pass).field(c.residual).field(c.threshold).field(c.detail);
        w.end_row();
    }
}

bool print_verify_report(std::ostream& out, const std::vector<CheckResult>& checks) {
    bool all = true;
    for (const CheckResult& c : checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  residual "
            << csv::format_number(c.residual) << " (threshold "
            << csv::format_number(c.threshold) << ")";
        if (!c.detail.empty()) out << "  " << c.detail;
        out << '\n';
        all = all && c.pass;
    }
    out << (all ? "verification passed" : "verification FAILED") << " (" << checks.size()
        << " checks)\n";
    return all;
}

} // namespace specshare
