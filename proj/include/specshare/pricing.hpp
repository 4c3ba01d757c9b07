#pragma once

#include "specshare/market.hpp"

namespace specshare {

/// Which stage-2 equilibrium family a price profile belongs to.
enum class PricingRegime {
    interior,           ///< |delta| < 1 closed forms
    corner_L_wins,      ///< delta >= 1, all users with SP_L
    corner_F_wins,      ///< delta <= -1, all users with SP_F
    interior_at_delta_1 ///< additional interior profile admitted at delta = 1
};

const char* to_string(PricingRegime r);

struct PricingOutcome {
    PriceProfile prices;
    SubscriptionSplit split;
    PricingRegime regime = PricingRegime::interior;
};

/** Rule for picking a corner price inside its admissible interval.
 *
 * Corner equilibria leave one price free inside an interval; named presets
 * pick an endpoint or the midpoint, `at(x)` pins an explicit value
 * (rejected with invalid_selection_error if outside the interval).
 */
struct PriceSelection {
    enum class Rule { lower, upper, midpoint, value };
    Rule rule = Rule::upper;
    double explicit_value = 0.0;

    static PriceSelection lower() { return {Rule::lower, 0.0}; }
    static PriceSelection upper() { return {Rule::upper, 0.0}; }
    static PriceSelection midpoint() { return {Rule::midpoint, 0.0}; }
    static PriceSelection at(double x) { return {Rule::value, x}; }

    /// Resolves against interval ends (which may arrive in either order).
    double pick(double end_a, double end_b) const;
};

const char* to_string(PriceSelection::Rule r);
PriceSelection selection_from_string(const std::string& text);

/// Whether corner_prices should return the corner profile or the
/// additional interior profile admitted at delta = 1.
enum class CornerVariant { corner, delta_one_interior };

/** Interior stage-2 equilibrium for |delta| < 1:
 *    p_l = c + 2/3 - i_f/(3 i_l) + delta/3
 *    p_f = c + 1/3 + i_f/(3 i_l) - delta/3
 * with shares n_l = p_l - c, n_f = p_f - c. Depends on the allocation only
 * through i_f/i_l. Throws regime_error when |delta| >= 1.
 */
PricingOutcome interior_prices(const Allocation& alloc, const MarketParams& params);

/** Corner stage-2 equilibrium for |delta| >= 1.
 *
 * delta >= 1: n = (1, 0), p_f = p_l - delta, p_l selected in [c+1, c+delta].
 * delta <= -1: n = (0, 1), p_l = p_f + delta - 1, p_f selected in
 * [c+1, c-delta-1]. For -2 < delta <= -1 those interval ends cross; the
 * selection is then resolved against the ends in sorted order.
 * CornerVariant::delta_one_interior returns the delta = 1 interior profile
 * p_l - c = n_l = 2/3, p_f - c = n_f = 1/3.
 */
PricingOutcome corner_prices(const MarketParams& params, const PriceSelection& selection = {},
                             CornerVariant variant = CornerVariant::corner);

/** Stage-2 equilibrium with the outside option (delta = 0):
 *    p_l = 1/15 + 2c/3 + k/3 + t_f/5 - (b/5) i_f + (4b/15) i_l
 *    p_f = 1/15 + 2c/3 + k/3 + t_l/5 + (b/15) i_l + (b/5) i_f
 * The common-pool split is recovered from x0 = t_f + p_f - p_l. Requires
 * i_l < 4/b for the marginal user to be interior (non_interior_error
 * otherwise) and delta = 0 (regime_error otherwise).
 */
PricingOutcome outside_stage2_prices(const Allocation& alloc, const MarketParams& params);

/// Payoff model used when scanning unilateral price deviations.
enum class Stage2Mode { base, outside };

/// Uniform price grid for deviation scans.
struct ProbeGrid {
    double lo = 0.0;
    double hi = 4.0;
    int points = 2001;
};

/** Max unilateral gain either provider can realize by deviating to a grid
 * price while the rival holds. Money flows and acquisition costs are
 * price-independent and drop out. A result below the grid tolerance
 * certifies the profile as a stage-2 equilibrium.
 *
 * Base mode scores n (p - c) with the clamped common-pool split; outside
 * mode scores n_tilde (p - c) with demand floored at zero.
 */
double best_response_gain(const PriceProfile& prices, const Allocation& alloc,
                          const MarketParams& params, Stage2Mode mode, const ProbeGrid& grid);

} // namespace specshare
