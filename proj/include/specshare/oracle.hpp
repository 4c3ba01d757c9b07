#pragma once

#include <cstdint>

#include "specshare/bargaining.hpp"
#include "specshare/market.hpp"
#include "specshare/outside.hpp"
#include "specshare/pricing.hpp"

namespace specshare {

/** Exhaustive grid over candidate allocations: i_l on [i_l_lo, i_l_hi],
 * i_f on [0, i_l] via an equispaced fraction grid per i_l column.
 */
struct GridSpec {
    double i_l_lo = 0.0;
    double i_l_hi = 1.0;
    int i_l_points = 400;
    int i_f_points = 400;
};

/// Best grid point, with the grid resolution and a tolerance derived from it.
struct GridArgmax {
    Allocation alloc;
    double value = 0.0;
    double i_l_step = 0.0;
    double i_f_step = 0.0; ///< i_f spacing in the winning column
    double tolerance = 0.0; ///< step x empirical local slope near the argmax
};

/** Brute-force maximizer of the excess profit (base or outside form) used to
 * verify the closed-form solutions. Deterministic: ties keep the first grid
 * point in scan order.
 */
GridArgmax grid_argmax_u_excess(const MarketParams& params, const DisagreementPoint& d,
                                const GridSpec& grid, Stage2Mode mode);

/// Residuals of the algebraic identities checked over randomized draws.
struct IdentityReport {
    int draws = 0;
    double worst_gap_residual = 0.0;       ///< |[u(0,l0)-u(l0,l0)] - 4 delta/9|
    double worst_convexity_residual = 0.0; ///< relative FD2-vs-8 alpha f^2 error
    double worst_scale_residual = 0.0;     ///< stage-2 drift under allocation scaling
    bool pass = false;
};

/** Randomized identity checks with a fixed seed: the 4 delta/9 boundary gap
 * of the base excess profit (tolerance 1e-12), the finite-difference second
 * derivative of the outside excess profit against 8 alpha f^2 (relative
 * tolerance 1e-5), and invariance of interior stage-2 prices under scaling
 * of (i_l, i_f) (tolerance 1e-12).
 */
IdentityReport identity_suite(std::uint64_t seed = 0x5eedu, int draws = 1000);

} // namespace specshare
