#include "specshare/bargaining.hpp"

#include <cmath>

namespace specshare {

const char* to_string(SolutionRegime r) {
    switch (r) {
        case SolutionRegime::base_interior: return "base_interior";
        case SolutionRegime::base_corner: return "base_corner";
        case SolutionRegime::outside_interior: return "outside_interior";
    }
    return "unknown";
}

double u_excess(const Allocation& alloc, const MarketParams& params,
                const DisagreementPoint& d) {
    alloc.validate();
    const double delta = params.delta();
    const double t = alloc.i_f / alloc.i_l;
    const double rev_l = (delta + 2.0 - t) / 3.0;
    const double rev_f = (1.0 - delta + t) / 3.0;
    return rev_l * rev_l + rev_f * rev_f - params.gamma * alloc.i_l * alloc.i_l -
           d.d_l - d.d_f;
}

PayoffPair nbs_split(double u_star, const DisagreementPoint& d, double w) {
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("bargaining power must lie in (0,1)");
    return {(1.0 - w) * u_star + d.d_l, w * u_star + d.d_f};
}

MoneyFlows money_flows(double i_f, double n_f, double p_f, double d_f, double w,
                       double u_star, double c) {
    MoneyFlows flows;
    const double share_f = d_f + w * u_star; // what SP_F must end up with
    const double revenue_f = n_f * (p_f - c);
    if (i_f > 0.0) {
        flows.s_tilde = (revenue_f - share_f) / (i_f * i_f);
        flows.theta = 0.0;
    } else {
        flows.s_tilde.reset();
        flows.theta = share_f - revenue_f;
    }
    return flows;
}

double total_base_payoff(double delta, double gamma, double l0) {
    const double a = 1.0 / 3.0 - std::abs(delta) / 3.0;
    const double b = 2.0 / 3.0 + std::abs(delta) / 3.0;
    return a * a + b * b - gamma * l0 * l0;
}

namespace {

EquilibriumSolution make_base_solution(const Allocation& alloc, const MarketParams& params,
                                       const DisagreementPoint& d, double u_star) {
    EquilibriumSolution sol;
    sol.regime = SolutionRegime::base_interior;
    sol.alloc = alloc;
    sol.disagreement = d;
    sol.u_excess_star = u_star;

    const PricingOutcome stage2 = interior_prices(alloc, params);
    sol.prices = stage2.prices;
    sol.split = stage2.split;
    sol.flows = money_flows(alloc.i_f, sol.split.n_f, sol.prices.p_f, d.d_f, params.w,
                            u_star, params.c);
    sol.payoffs = nbs_split(u_star, d, params.w);
    return sol;
}

} // namespace

SolveResult solve_base(const MarketParams& params, const DisagreementPoint& d) {
    params.validate();
    const double delta = params.delta();
    if (std::abs(delta) >= 1.0)
        throw regime_error("solve_base covers |delta| < 1; use solve_corner");

    SolveResult result;
    result.report.pi_star = total_base_payoff(delta, params.gamma, params.l0);
    result.report.d = d.total();
    result.report.margin = result.report.pi_star - result.report.d;
    result.report.exists = result.report.margin >= 0.0;
    if (!result.report.exists) return result;

    const double u_star = result.report.margin;
    if (delta > 0.0) {
        result.solutions.push_back(make_base_solution({params.l0, 0.0}, params, d, u_star));
    } else if (delta < 0.0) {
        result.solutions.push_back(
            make_base_solution({params.l0, params.l0}, params, d, u_star));
    } else {
        // Both splits of the leased spectrum are optimal at delta = 0.
        result.solutions.push_back(make_base_solution({params.l0, 0.0}, params, d, u_star));
        result.solutions.push_back(
            make_base_solution({params.l0, params.l0}, params, d, u_star));
    }
    return result;
}

SolveResult solve_corner(const MarketParams& params, const DisagreementPoint& d,
                         const PriceSelection& selection,
                         std::optional<double> interior_i_f) {
    params.validate();
    const double delta = params.delta();
    if (std::abs(delta) < 1.0)
        throw regime_error("solve_corner covers |delta| >= 1; use solve_base");
    if (!(params.gamma < params.s_market))
        throw regime_error("corner solutions require gamma < s_market");

    const PricingOutcome stage2 = corner_prices(params, selection);
    // Operative revenue: p_f - c when SP_F serves everyone, p_l - c when SP_L does.
    const double p_win = delta <= -1.0 ? stage2.prices.p_f : stage2.prices.p_l;

    SolveResult result;
    result.report.pi_star = p_win - params.c - params.gamma * params.l0 * params.l0;
    result.report.d = d.total();
    result.report.margin = result.report.pi_star - result.report.d;
    result.report.exists = result.report.margin >= 0.0;
    if (!result.report.exists) return result;

    const double u_star = result.report.margin;
    std::vector<double> i_f_values = {0.0, params.l0};
    if (interior_i_f) {
        if (*interior_i_f < 0.0 || *interior_i_f > params.l0)
            throw std::invalid_argument("requested i_f outside [0, l0]");
        i_f_values.push_back(*interior_i_f);
    }

    for (double i_f : i_f_values) {
        EquilibriumSolution sol;
        sol.regime = SolutionRegime::base_corner;
        sol.alloc = {params.l0, i_f};
        sol.disagreement = d;
        sol.u_excess_star = u_star;
        sol.prices = stage2.prices;
        sol.split = stage2.split;
        sol.flows = money_flows(i_f, sol.split.n_f, sol.prices.p_f, d.d_f, params.w,
                                u_star, params.c);
        sol.payoffs = nbs_split(u_star, d, params.w);
        result.solutions.push_back(sol);
    }
    return result;
}

double resource_cost_metric(const EquilibriumSolution& solution) {
    if (solution.regime == SolutionRegime::base_corner)
        throw regime_error("resource-cost metric undefined for corner solutions");
    solution.alloc.validate();
    return solution.alloc.i_f / solution.prices.p_f +
           (solution.alloc.i_l - solution.alloc.i_f) / solution.prices.p_l;
}

} // namespace specshare
