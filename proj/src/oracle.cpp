#include "specshare/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace specshare {

GridArgmax grid_argmax_u_excess(const MarketParams& params, const DisagreementPoint& d,
                                const GridSpec& grid, Stage2Mode mode) {
    if (grid.i_l_points < 2 || grid.i_f_points < 2)
        throw std::invalid_argument("oracle grid needs >= 2 points per axis");
    if (!(grid.i_l_lo > 0.0) || !(grid.i_l_hi >= grid.i_l_lo))
        throw std::invalid_argument("oracle grid needs 0 < i_l_lo <= i_l_hi");

    const auto value_at = [&](const Allocation& a) {
        return mode == Stage2Mode::base ? u_excess(a, params, d)
                                        : outside_u_excess(a, params, d);
    };

    const double l_step =
        (grid.i_l_hi - grid.i_l_lo) / static_cast<double>(grid.i_l_points - 1);
    GridArgmax best;
    bool first = true;
    int best_il = 0, best_if = 0;
    for (int il = 0; il < grid.i_l_points; ++il) {
        const double i_l = grid.i_l_lo + l_step * static_cast<double>(il);
        const double f_step = i_l / static_cast<double>(grid.i_f_points - 1);
        for (int jf = 0; jf < grid.i_f_points; ++jf) {
            const double i_f = std::min(i_l, f_step * static_cast<double>(jf));
            const double v = value_at({i_l, i_f});
            if (first || v > best.value) {
                best.alloc = {i_l, i_f};
                best.value = v;
                best.i_f_step = f_step;
                best_il = il;
                best_if = jf;
                first = false;
            }
        }
    }
    best.i_l_step = l_step;

    // Local slope from the argmax's grid neighbours sets the tolerance scale.
    double slope = 0.0;
    const auto consider = [&](double i_l, double i_f, double dist) {
        if (i_l < grid.i_l_lo || i_l > grid.i_l_hi + 1e-15) return;
        if (i_f < 0.0 || i_f > i_l + 1e-15) return;
        const double v = value_at({i_l, std::min(i_f, i_l)});
        slope = std::max(slope, std::abs(best.value - v) / dist);
    };
    if (best_il > 0) consider(best.alloc.i_l - l_step, best.alloc.i_f, l_step);
    if (best_il + 1 < grid.i_l_points) consider(best.alloc.i_l + l_step, best.alloc.i_f, l_step);
    if (best_if > 0) consider(best.alloc.i_l, best.alloc.i_f - best.i_f_step, best.i_f_step);
    if (best_if + 1 < grid.i_f_points)
        consider(best.alloc.i_l, best.alloc.i_f + best.i_f_step, best.i_f_step);
    const double step = std::max(best.i_l_step, best.i_f_step);
    best.tolerance = slope * step + 1e-12;
    return best;
}

namespace {

// Portable uniform draw; distribution classes differ across standard libraries.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_draw(rng);
}

} // namespace

IdentityReport identity_suite(std::uint64_t seed, int draws) {
    std::mt19937_64 rng(seed);
    IdentityReport report;
    report.draws = draws;

    for (int i = 0; i < draws; ++i) {
        MarketParams p;
        p.v_l = draw_in(rng, -0.99, 0.99);
        p.v_f = 0.0;
        p.gamma = draw_in(rng, 0.05, 2.0);
        p.l0 = draw_in(rng, 0.05, 2.0);
        p.c = draw_in(rng, 0.0, 2.0);
        const DisagreementPoint d{draw_in(rng, -1.0, 1.0), draw_in(rng, -1.0, 1.0),
                                  DisagreementProvenance::user_supplied};

        const double gap = u_excess({p.l0, 0.0}, p, d) - u_excess({p.l0, p.l0}, p, d);
        report.worst_gap_residual =
            std::max(report.worst_gap_residual, std::abs(gap - 4.0 * p.delta() / 9.0));
    }

    for (int i = 0; i < draws; ++i) {
        MarketParams p;
        p.alpha = draw_in(rng, 0.1, 2.0);
        p.b = draw_in(rng, 0.0, 3.0);
        p.k = draw_in(rng, 0.0, 2.0);
        p.c = draw_in(rng, 0.0, 2.0);
        p.gamma = draw_in(rng, 0.05, 2.0);
        const double i_l = draw_in(rng, 0.1, 3.0);
        const double i_f = draw_in(rng, 0.25, 0.75) * i_l;
        const DisagreementPoint d{};

        // The profile is exactly quadratic in i_f, so the central difference
        // has no truncation term; a 1e-2 step keeps the cancellation noise
        // orders of magnitude below the curvature for every draw.
        const double h = 1e-2;
        const auto at = [&](double x) { return outside_u_excess({i_l, x}, p, d); };
        const double fd2 = (at(i_f + h) - 2.0 * at(i_f) + at(i_f - h)) / (h * h);
        const double expected =
            8.0 * p.alpha * outside_aux(i_l, p).f_val * outside_aux(i_l, p).f_val;
        report.worst_convexity_residual = std::max(
            report.worst_convexity_residual, std::abs(fd2 - expected) / expected);
    }

    for (int i = 0; i < draws; ++i) {
        MarketParams p;
        p.v_l = draw_in(rng, -0.99, 0.99);
        const double i_l = draw_in(rng, 0.1, 2.0);
        const double i_f = unit_draw(rng) * i_l;
        const double scale = draw_in(rng, 1.5, 4.0);
        const PricingOutcome a = interior_prices({i_l, i_f}, p);
        const PricingOutcome b = interior_prices({scale * i_l, scale * i_f}, p);
        const double drift =
            std::max(std::abs(a.prices.p_l - b.prices.p_l),
                     std::max(std::abs(a.prices.p_f - b.prices.p_f),
                              std::abs(a.split.n_l - b.split.n_l)));
        report.worst_scale_residual = std::max(report.worst_scale_residual, drift);
    }

    report.pass = report.worst_gap_residual <= 1e-12 &&
                  report.worst_convexity_residual <= 1e-5 &&
                  report.worst_scale_residual <= 1e-12;
    return report;
}

} // namespace specshare
