#pragma once

#include "specshare/market.hpp"
#include "specshare/pricing.hpp"

namespace specshare {

/** Search controls for the numerical disagreement games.
 *
 * The leader's spectrum choice is scanned on a grid over
 * [max(i_l_lo, delta_part1), i_l_hi] (i_l_lo = 0 means "start at
 * delta_part1") and the incumbent grid optimum is sharpened by
 * `refine_passes` of bracket halving. The follower's best response is
 * solved the same way on [0, i_l] with i_f_points.
 */
struct DisagreementConfig {
    double i_l_lo = 0.0;
    double i_l_hi = 5.0;
    int i_l_points = 10001;
    int i_f_points = 257;
    int refine_passes = 40;
    double convergence_tol = 1e-9;
    PriceSelection price_selection = {};

    void validate(const MarketParams& params) const;
};

/// Disagreement payoffs together with the allocation and prices behind them.
struct DisagreementOutcome {
    DisagreementPoint point;
    Allocation alloc;
    PriceProfile prices;
};

/** Disagreement point of the base game.
 *
 * |delta| >= 1 uses the corner closed forms (requires gamma < s_market,
 * precondition_error otherwise): delta <= -1 has both providers at
 * 1/sqrt(2 s_market); delta >= 1 has SP_L at delta_part1 and SP_F at zero.
 * |delta| < 1 reconstructs the sequential equilibrium numerically: SP_F
 * best-responds in i_f against each candidate i_l, SP_L maximizes
 * anticipating that response.
 */
DisagreementOutcome solve_base_disagreement_detail(const MarketParams& params,
                                                   const DisagreementConfig& cfg = {});
DisagreementPoint solve_base_disagreement(const MarketParams& params,
                                          const DisagreementConfig& cfg = {});

/** Disagreement point of the outside-option game (delta = 0), via the same
 * backward induction with outside-option stage-2 prices and demands. The
 * i_l search stays inside the interior region i_l < 4/b; an empty region
 * raises infeasible_error.
 */
DisagreementOutcome solve_outside_disagreement_detail(const MarketParams& params,
                                                      const DisagreementConfig& cfg = {});
DisagreementPoint solve_outside_disagreement(const MarketParams& params,
                                             const DisagreementConfig& cfg = {});

} // namespace specshare
