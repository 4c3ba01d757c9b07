#include "specshare/disagreement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace specshare {

void DisagreementConfig::validate(const MarketParams& params) const {
    if (i_l_lo != 0.0 && i_l_lo < params.delta_part1)
        throw std::invalid_argument("i_l grid must start at or above delta_part1");
    if (i_l_points < 2 || i_f_points < 2)
        throw std::invalid_argument("disagreement grids need >= 2 points per axis");
    if (refine_passes < 0) throw std::invalid_argument("refine_passes must be >= 0");
    if (!(convergence_tol > 0.0)) throw std::invalid_argument("convergence_tol must be > 0");
}

namespace {

struct Maximum {
    double x = 0.0;
    double value = 0.0;
};

// Grid scan plus bracket-halving refinement around the incumbent optimum.
// Strict improvement keeps the lowest grid index, so ties are deterministic.
Maximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                        int points, int passes, double convergence_tol) {
    if (!(hi >= lo)) throw infeasible_error("empty search interval");
    Maximum best{lo, f(lo)};
    double step = points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0;
    for (int i = 1; i < points; ++i) {
        const double x = std::min(hi, lo + step * static_cast<double>(i));
        const double v = f(x);
        if (v > best.value) best = {x, v};
    }

    double last_gain = 0.0;
    for (int pass = 0; pass < passes && step > 0.0; ++pass) {
        const double br_lo = std::max(lo, best.x - step);
        const double br_hi = std::min(hi, best.x + step);
        constexpr int kRefinePoints = 33;
        step = (br_hi - br_lo) / static_cast<double>(kRefinePoints - 1);
        Maximum pass_best = best;
        for (int i = 0; i < kRefinePoints; ++i) {
            const double x = std::min(br_hi, br_lo + step * static_cast<double>(i));
            const double v = f(x);
            if (v > pass_best.value) pass_best = {x, v};
        }
        last_gain = pass_best.value - best.value;
        best = pass_best;
        if (step < 1e-15 * std::max(1.0, std::abs(best.x))) break;
    }
    // Converged once the bracket has collapsed; otherwise the final pass must
    // no longer be finding real improvements.
    const double scale = std::max(1.0, std::abs(best.value));
    const bool collapsed = step < 1e-12 * std::max(1.0, std::abs(best.x));
    if (!collapsed && last_gain > convergence_tol * scale) {
        std::ostringstream msg;
        msg << "refinement still improving after final pass: gain " << last_gain
            << " at x = " << best.x << "; increase refine_passes or grid points";
        throw resolution_error(msg.str());
    }
    return best;
}

// Two-level backward induction: inner follower response in i_f, outer leader
// choice in i_l. Payoff callbacks receive (i_l, i_f).
struct SequentialGame {
    std::function<double(double, double)> payoff_l;
    std::function<double(double, double)> payoff_f;
};

DisagreementOutcome induce(const SequentialGame& game, double lo, double hi,
                           const DisagreementConfig& cfg) {
    const auto follower_best = [&](double i_l) {
        return maximize_scalar([&](double i_f) { return game.payoff_f(i_l, i_f); }, 0.0,
                               i_l, cfg.i_f_points, cfg.refine_passes, cfg.convergence_tol);
    };
    const Maximum leader = maximize_scalar(
        [&](double i_l) { return game.payoff_l(i_l, follower_best(i_l).x); }, lo, hi,
        cfg.i_l_points, cfg.refine_passes, cfg.convergence_tol);

    const Maximum follower = follower_best(leader.x);
    DisagreementOutcome out;
    out.alloc = {leader.x, follower.x};
    out.point = {leader.value, follower.value, DisagreementProvenance::numerical_part1};
    return out;
}

DisagreementOutcome corner_disagreement(const MarketParams& params,
                                        const DisagreementConfig& cfg) {
    if (!(params.s_market > params.gamma))
        throw precondition_error("corner disagreement requires gamma < s_market");
    const double delta = params.delta();
    const PricingOutcome stage2 = corner_prices(params, cfg.price_selection);

    DisagreementOutcome out;
    out.prices = stage2.prices;
    out.point.provenance = DisagreementProvenance::corner_closed_form;
    if (delta <= -1.0) {
        // Both providers hold 1/sqrt(2s); SP_F serves everyone.
        const double invest = 1.0 / std::sqrt(2.0 * params.s_market);
        const double invest_sq = invest * invest;
        out.alloc = {invest, invest};
        out.point.d_f = stage2.prices.p_f - params.c - params.s_market * invest_sq;
        out.point.d_l = params.s_market * invest_sq - params.gamma * invest_sq;
    } else {
        // SP_L at the mandated minimum, SP_F idle.
        out.alloc = {params.delta_part1, 0.0};
        out.point.d_f = 0.0;
        out.point.d_l = stage2.prices.p_l - params.c -
                        params.gamma * params.delta_part1 * params.delta_part1;
    }
    return out;
}

} // namespace

DisagreementOutcome solve_base_disagreement_detail(const MarketParams& params,
                                                   const DisagreementConfig& cfg) {
    params.validate();
    cfg.validate(params);
    const double delta = params.delta();
    if (std::abs(delta) >= 1.0) return corner_disagreement(params, cfg);

    const double s = params.s_market;
    SequentialGame game;
    game.payoff_f = [s, delta](double i_l, double i_f) {
        const double n_f = i_f / (3.0 * i_l) + (1.0 - delta) / 3.0;
        return n_f * n_f - s * i_f * i_f;
    };
    game.payoff_l = [&params, s, delta](double i_l, double i_f) {
        const double n_l = delta / 3.0 + 2.0 / 3.0 - i_f / (3.0 * i_l);
        return n_l * n_l + s * i_f * i_f - params.gamma * i_l * i_l;
    };

    const double lo = cfg.i_l_lo > 0.0 ? cfg.i_l_lo : params.delta_part1;
    const double hi = std::min(cfg.i_l_hi, params.m_cap);
    if (!(hi >= lo)) throw infeasible_error("empty i_l search region");
    DisagreementOutcome out = induce(game, lo, hi, cfg);
    out.prices = interior_prices(out.alloc, params).prices;
    return out;
}

DisagreementOutcome solve_outside_disagreement_detail(const MarketParams& params,
                                                      const DisagreementConfig& cfg) {
    params.validate();
    cfg.validate(params);
    if (params.delta() != 0.0)
        throw regime_error("outside disagreement game is defined for delta = 0");

    const double s = params.s_market;
    const auto stage3 = [&params, s](double i_l, double i_f, bool leader) {
        const Allocation alloc{i_l, i_f};
        const PricingOutcome stage2 = outside_stage2_prices(alloc, params);
        const OutsideSubscriptions demand =
            outside_demand(stage2.prices, alloc, stage2.split, params);
        if (leader)
            return demand.n_tilde_l * (stage2.prices.p_l - params.c) + s * i_f * i_f -
                   params.gamma * i_l * i_l;
        return demand.n_tilde_f * (stage2.prices.p_f - params.c) - s * i_f * i_f;
    };

    SequentialGame game;
    game.payoff_l = [stage3](double i_l, double i_f) { return stage3(i_l, i_f, true); };
    game.payoff_f = [stage3](double i_l, double i_f) { return stage3(i_l, i_f, false); };

    const double lo = cfg.i_l_lo > 0.0 ? cfg.i_l_lo : params.delta_part1;
    double hi = std::min(cfg.i_l_hi, params.m_cap);
    if (params.b > 0.0) hi = std::min(hi, (4.0 / params.b) * (1.0 - 1e-9));
    if (!(hi >= lo)) throw infeasible_error("empty interior i_l search region");
    DisagreementOutcome out = induce(game, lo, hi, cfg);
    out.prices = outside_stage2_prices(out.alloc, params).prices;
    return out;
}

DisagreementPoint solve_base_disagreement(const MarketParams& params,
                                          const DisagreementConfig& cfg) {
    return solve_base_disagreement_detail(params, cfg).point;
}

DisagreementPoint solve_outside_disagreement(const MarketParams& params,
                                             const DisagreementConfig& cfg) {
    return solve_outside_disagreement_detail(params, cfg).point;
}

} // namespace specshare
