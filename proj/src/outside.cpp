#include "specshare/outside.hpp"

#include <cmath>
#include <limits>

namespace specshare {

OutsideAux outside_aux(double i_l, const MarketParams& params) {
    if (!(i_l > 0.0))
        throw degenerate_allocation_error("outside-option coefficients need i_l > 0");
    return {1.0 / (5.0 * i_l) + params.b / 5.0,
            params.b * i_l / 15.0 + 1.0 / 15.0 - params.c / 3.0 + params.k / 3.0};
}

double outside_objective(double i_l, const MarketParams& params) {
    const OutsideAux aux = outside_aux(i_l, params);
    const double combined = aux.f_val * i_l + aux.g_val;
    return 2.0 * params.alpha * aux.g_val * aux.g_val +
           2.0 * params.alpha * combined * combined - params.gamma * i_l * i_l;
}

namespace {

// h(x) = q2 x^2 + q1 x + q0 once f(x) x and g(x) are written as affine maps.
struct ObjectiveQuadratic {
    double q2, q1, q0;
};

ObjectiveQuadratic objective_coefficients(const MarketParams& p) {
    const double g0 = 1.0 / 15.0 + (p.k - p.c) / 3.0;
    const double g1 = p.b / 15.0;
    const double a0 = 4.0 / 15.0 + (p.k - p.c) / 3.0; // f(x) x + g(x) intercept
    const double a1 = 4.0 * p.b / 15.0;
    return {2.0 * p.alpha * (g1 * g1 + a1 * a1) - p.gamma,
            4.0 * p.alpha * (g0 * g1 + a0 * a1),
            2.0 * p.alpha * (g0 * g0 + a0 * a0)};
}

} // namespace

OutsideMaximum maximize_outside_objective(const MarketParams& params) {
    params.validate();
    const ObjectiveQuadratic q = objective_coefficients(params);
    const bool capped = std::isfinite(params.m_cap);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    double x = params.l0;
    if (q.q2 < 0.0) {
        const double vertex = -q.q1 / (2.0 * q.q2);
        x = std::max(params.l0, vertex);
        if (capped) x = std::min(x, params.m_cap);
    } else if (q.q2 > 0.0) {
        if (!capped) return {nan, nan, false};
        // Convex: an endpoint wins.
        x = outside_objective(params.m_cap, params) > outside_objective(params.l0, params)
                ? params.m_cap
                : params.l0;
    } else {
        if (q.q1 > 0.0) {
            if (!capped) return {nan, nan, false};
            x = params.m_cap;
        }
    }
    return {x, outside_objective(x, params), true};
}

double outside_u_excess(const Allocation& alloc, const MarketParams& params,
                        const DisagreementPoint& d) {
    alloc.validate();
    const OutsideAux aux = outside_aux(alloc.i_l, params);
    const double f2 = aux.f_val * aux.f_val;
    const double combined = aux.f_val * alloc.i_l + aux.g_val;
    return 4.0 * params.alpha * f2 * alloc.i_f * alloc.i_f -
           4.0 * params.alpha * f2 * alloc.i_l * alloc.i_f +
           2.0 * params.alpha * aux.g_val * aux.g_val +
           2.0 * params.alpha * combined * combined -
           params.gamma * alloc.i_l * alloc.i_l - d.d_f - d.d_l;
}

namespace {

EquilibriumSolution make_outside_solution(double i_l, double i_f, const MarketParams& params,
                                          const DisagreementPoint& d, double u_star) {
    EquilibriumSolution sol;
    sol.regime = SolutionRegime::outside_interior;
    sol.alloc = {i_l, i_f};
    sol.disagreement = d;
    sol.u_excess_star = u_star;

    const PricingOutcome stage2 = outside_stage2_prices(sol.alloc, params);
    sol.prices = stage2.prices;
    sol.split = stage2.split;
    sol.demand = outside_demand(sol.prices, sol.alloc, sol.split, params);
    // The fee/theta transfer is sized against the demand-adjusted revenue.
    sol.flows = money_flows(i_f, sol.demand->n_tilde_f, sol.prices.p_f, d.d_f, params.w,
                            u_star, params.c);
    sol.payoffs = nbs_split(u_star, d, params.w);
    return sol;
}

} // namespace

OutsideSolveResult solve_outside(const MarketParams& params, const DisagreementPoint& d) {
    params.validate();
    if (params.delta() != 0.0)
        throw regime_error("outside-option solutions are characterized for delta = 0 only");

    OutsideSolveResult result;
    const OutsideMaximum max = maximize_outside_objective(params);
    result.bounded = max.bounded;
    if (!max.bounded) {
        result.report.pi_star = std::numeric_limits<double>::quiet_NaN();
        result.report.d = d.total();
        result.report.margin = std::numeric_limits<double>::quiet_NaN();
        result.report.exists = false;
        return result;
    }

    result.report.pi_star = max.h_star;
    result.report.d = d.total();
    result.report.margin = max.h_star - d.total();
    result.report.interior_ok = params.b == 0.0 || max.i_l_star < 4.0 / params.b;
    result.report.exists = result.report.margin >= 0.0 && result.report.interior_ok;
    if (!result.report.exists) return result;

    const double u_star = result.report.margin;
    result.solutions.push_back(
        make_outside_solution(max.i_l_star, max.i_l_star, params, d, u_star));
    result.solutions.push_back(make_outside_solution(max.i_l_star, 0.0, params, d, u_star));
    return result;
}

} // namespace specshare
