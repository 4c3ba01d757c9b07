#pragma once

#include "specshare/bargaining.hpp"
#include "specshare/market.hpp"

namespace specshare {

/// Demand-side coefficients of the outside-option game:
/// f(i_l) = 1/(5 i_l) + b/5 (> 0), g(i_l) = b i_l/15 + 1/15 - c/3 + k/3.
struct OutsideAux {
    double f_val = 0.0;
    double g_val = 0.0;
};

OutsideAux outside_aux(double i_l, const MarketParams& params);

/// Candidate total payoff at the boundary allocations:
/// h(i_l) = 2 alpha g^2 + 2 alpha (f i_l + g)^2 - gamma i_l^2.
double outside_objective(double i_l, const MarketParams& params);

/** Result of maximizing h over [l0, m_cap]. h is a quadratic in i_l; with a
 * nonnegative leading coefficient and no cap the problem is unbounded, in
 * which case `bounded` is false and the maximizer fields are NaN.
 */
struct OutsideMaximum {
    double i_l_star = 0.0;
    double h_star = 0.0;
    bool bounded = true;
};

OutsideMaximum maximize_outside_objective(const MarketParams& params);

/** Excess profit of the outside-option game at a (possibly interior)
 * allocation; a convex quadratic in i_f with second derivative
 * 8 alpha f(i_l)^2, equal at the two boundaries i_f in {0, i_l}.
 */
double outside_u_excess(const Allocation& alloc, const MarketParams& params,
                        const DisagreementPoint& d);

/// SolveResult plus the boundedness flag of the spectrum optimization.
struct OutsideSolveResult {
    std::vector<EquilibriumSolution> solutions;
    ExistenceReport report;
    bool bounded = true;
};

/** Interior equilibrium-type solutions of the outside-option game
 * (delta = 0 only; regime_error otherwise). Zero or two solutions: both
 * share the maximizing i_l; the first uses i_f = i_l (fee-routed transfer),
 * the second i_f = 0 (theta-routed), with mirrored prices and demands.
 * Existence requires h(i_l_star) >= d_l + d_f and i_l_star < 4/b.
 */
OutsideSolveResult solve_outside(const MarketParams& params, const DisagreementPoint& d);

} // namespace specshare
