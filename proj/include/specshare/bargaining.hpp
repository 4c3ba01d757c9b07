#pragma once

#include <optional>
#include <vector>

#include "specshare/market.hpp"
#include "specshare/pricing.hpp"

namespace specshare {

enum class SolutionRegime { base_interior, base_corner, outside_interior };

const char* to_string(SolutionRegime r);

/** One equilibrium-type solution of the bargaining stage: allocation, money
 * flows, stage-2 prices and subscriptions, payoffs and the excess profit
 * they split. `demand` is set for outside-option solutions.
 */
struct EquilibriumSolution {
    SolutionRegime regime = SolutionRegime::base_interior;
    Allocation alloc;
    MoneyFlows flows;
    PriceProfile prices;
    SubscriptionSplit split;
    std::optional<OutsideSubscriptions> demand;
    PayoffPair payoffs;
    double u_excess_star = 0.0;
    DisagreementPoint disagreement;
};

/** Existence verdict: candidate total payoff against total disagreement.
 * `exists` additionally requires `interior_ok`, which only the
 * outside-option test can clear (candidate optimum at or past 4/b).
 */
struct ExistenceReport {
    double pi_star = 0.0;
    double d = 0.0;
    double margin = 0.0;
    bool exists = false;
    bool interior_ok = true;
};

/// Solutions plus the existence report; empty list when none exist.
struct SolveResult {
    std::vector<EquilibriumSolution> solutions;
    ExistenceReport report;
};

/** Aggregate excess profit of the base game at an allocation, using the
 * interior stage-2 closed forms (valid for |delta| < 1):
 *    ((delta + 2 - t)/3)^2 + ((1 - delta + t)/3)^2 - gamma i_l^2 - d_l - d_f
 * with t = i_f/i_l. Independent of the money flows.
 */
double u_excess(const Allocation& alloc, const MarketParams& params,
                const DisagreementPoint& d);

/// Bargained payoff split: pi_l = (1-w) u_star + d_l, pi_f = w u_star + d_f.
PayoffPair nbs_split(double u_star, const DisagreementPoint& d, double w);

/** Money flows implementing the split, given SP_F's subscription revenue
 * inputs. i_f > 0 routes the transfer through the reservation fee
 * (theta = 0); i_f = 0 routes it through theta (fee not significant).
 */
MoneyFlows money_flows(double i_f, double n_f, double p_f, double d_f, double w,
                       double u_star, double c);

/// Total payoff of any base equilibrium-type solution:
/// (1/3 - |delta|/3)^2 + (2/3 + |delta|/3)^2 - gamma l0^2. Valid for |delta| < 1.
double total_base_payoff(double delta, double gamma, double l0);

/** Base-case equilibrium-type solutions for |delta| < 1.
 *
 * When total_base_payoff >= d_l + d_f: i_l = l0 always; i_f = l0 for
 * delta < 0, i_f = 0 for delta > 0, and both (i_f = 0 listed first) at
 * delta = 0. Otherwise an empty list with the existence report.
 */
SolveResult solve_base(const MarketParams& params, const DisagreementPoint& d);

/** Corner equilibrium-type solutions for |delta| >= 1 (requires
 * gamma < s_market; regime_error otherwise). The whole segment
 * i_f in [0, l0] is optimal; the two endpoints are returned, plus one
 * interior point when `interior_i_f` is given.
 */
SolveResult solve_corner(const MarketParams& params, const DisagreementPoint& d,
                         const PriceSelection& selection = {},
                         std::optional<double> interior_i_f = {});

/** Spectrum delivered per unit of access fee, i_f/p_f + (i_l - i_f)/p_l.
 * Defined for base-interior and outside-interior solutions; corner
 * solutions are rejected with regime_error.
 */
double resource_cost_metric(const EquilibriumSolution& solution);

} // namespace specshare
