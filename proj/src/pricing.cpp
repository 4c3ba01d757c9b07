#include "specshare/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace specshare {

const char* to_string(PricingRegime r) {
    switch (r) {
        case PricingRegime::interior: return "interior";
        case PricingRegime::corner_L_wins: return "corner_L_wins";
        case PricingRegime::corner_F_wins: return "corner_F_wins";
        case PricingRegime::interior_at_delta_1: return "interior_at_delta_1";
    }
    return "unknown";
}

const char* to_string(PriceSelection::Rule r) {
    switch (r) {
        case PriceSelection::Rule::lower: return "lower";
        case PriceSelection::Rule::upper: return "upper";
        case PriceSelection::Rule::midpoint: return "midpoint";
        case PriceSelection::Rule::value: return "value";
    }
    return "unknown";
}

PriceSelection selection_from_string(const std::string& text) {
    if (text == "lower") return PriceSelection::lower();
    if (text == "upper") return PriceSelection::upper();
    if (text == "midpoint") return PriceSelection::midpoint();
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos == text.size()) return PriceSelection::at(v);
    } catch (const std::exception&) {
    }
    throw config_error("unknown price selection '" + text + "'");
}

double PriceSelection::pick(double end_a, double end_b) const {
    const double lo = std::min(end_a, end_b);
    const double hi = std::max(end_a, end_b);
    switch (rule) {
        case Rule::lower: return end_a;
        case Rule::upper: return end_b;
        case Rule::midpoint: return 0.5 * (end_a + end_b);
        case Rule::value:
            if (explicit_value < lo || explicit_value > hi)
                throw invalid_selection_error("corner price outside admissible interval");
            return explicit_value;
    }
    return end_a;
}

PricingOutcome interior_prices(const Allocation& alloc, const MarketParams& params) {
    const double delta = params.delta();
    if (std::abs(delta) >= 1.0)
        throw regime_error("interior prices require |delta| < 1");
    alloc.validate();
    const double ratio = alloc.i_f / alloc.i_l;
    PricingOutcome out;
    out.prices.p_l = params.c + 2.0 / 3.0 - ratio / 3.0 + delta / 3.0;
    out.prices.p_f = params.c + 1.0 / 3.0 + ratio / 3.0 - delta / 3.0;
    const double n_l = out.prices.p_l - params.c;
    out.split = {n_l, 1.0 - n_l, n_l};
    out.regime = PricingRegime::interior;
    return out;
}

PricingOutcome corner_prices(const MarketParams& params, const PriceSelection& selection,
                             CornerVariant variant) {
    const double delta = params.delta();
    if (std::abs(delta) < 1.0)
        throw regime_error("corner prices require |delta| >= 1");

    PricingOutcome out;
    if (variant == CornerVariant::delta_one_interior) {
        if (delta != 1.0)
            throw regime_error("the additional interior profile exists only at delta = 1");
        out.prices = {params.c + 2.0 / 3.0, params.c + 1.0 / 3.0};
        out.split = {2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0};
        out.regime = PricingRegime::interior_at_delta_1;
        return out;
    }

    if (delta >= 1.0) {
        // p_l free in [c+1, c+delta], p_f pinned at p_l - delta.
        const double p_l = selection.pick(params.c + 1.0, params.c + delta);
        out.prices = {p_l, p_l - delta};
        out.split = {1.0, 0.0, 1.0};
        out.regime = PricingRegime::corner_L_wins;
    } else {
        // p_f free in [c+1, c-delta-1], p_l pinned at p_f + delta - 1.
        const double p_f = selection.pick(params.c + 1.0, params.c - delta - 1.0);
        out.prices = {p_f + delta - 1.0, p_f};
        out.split = {0.0, 1.0, 0.0};
        out.regime = PricingRegime::corner_F_wins;
    }
    return out;
}

PricingOutcome outside_stage2_prices(const Allocation& alloc, const MarketParams& params) {
    if (params.delta() != 0.0)
        throw regime_error("outside-option stage-2 prices require delta = 0");
    alloc.validate();
    if (params.b > 0.0 && alloc.i_l >= 4.0 / params.b)
        throw non_interior_error("marginal user not interior: i_l >= 4/b");

    const TransportCosts t = transport_costs(alloc);
    const double base = 1.0 / 15.0 + 2.0 * params.c / 3.0 + params.k / 3.0;
    PricingOutcome out;
    out.prices.p_l = base + t.t_f / 5.0 - params.b * alloc.i_f / 5.0 +
                     4.0 * params.b * alloc.i_l / 15.0;
    out.prices.p_f = base + t.t_l / 5.0 + params.b * alloc.i_l / 15.0 +
                     params.b * alloc.i_f / 5.0;
    const double x0 = t.t_f + out.prices.p_f - out.prices.p_l;
    out.split = {std::clamp(x0, 0.0, 1.0), 1.0 - std::clamp(x0, 0.0, 1.0), x0};
    out.regime = PricingRegime::interior;
    return out;
}

namespace {

// Price-dependent part of each provider's payoff; flow terms drop out.
// Base mode uses the clamped common-pool split. Outside mode scores the
// linear demand system the closed forms solve (pool share unclamped, total
// demand floored at zero): with a clamped pool and a large exclusive base
// the pool-abandon deviation breaks every interior profile, so the linear
// system is the one a certification can be run against.
double score_l(double p_l, double p_f, const Allocation& alloc, const TransportCosts& t,
               const MarketParams& params, Stage2Mode mode) {
    const SubscriptionSplit s = hotelling_split({p_l, p_f}, t, params);
    if (mode == Stage2Mode::base) return s.n_l * (p_l - params.c);
    const SubscriptionSplit linear{s.x0, 1.0 - s.x0, s.x0};
    const OutsideSubscriptions d = outside_demand({p_l, p_f}, alloc, linear, params);
    return std::max(d.n_tilde_l, 0.0) * (p_l - params.c);
}

double score_f(double p_l, double p_f, const Allocation& alloc, const TransportCosts& t,
               const MarketParams& params, Stage2Mode mode) {
    const SubscriptionSplit s = hotelling_split({p_l, p_f}, t, params);
    if (mode == Stage2Mode::base) return s.n_f * (p_f - params.c);
    const SubscriptionSplit linear{s.x0, 1.0 - s.x0, s.x0};
    const OutsideSubscriptions d = outside_demand({p_l, p_f}, alloc, linear, params);
    return std::max(d.n_tilde_f, 0.0) * (p_f - params.c);
}

} // namespace

double best_response_gain(const PriceProfile& prices, const Allocation& alloc,
                          const MarketParams& params, Stage2Mode mode, const ProbeGrid& grid) {
    if (grid.points < 2) throw std::invalid_argument("probe grid needs >= 2 points");
    alloc.validate();
    const TransportCosts t = transport_costs(alloc);

    const double base_l = score_l(prices.p_l, prices.p_f, alloc, t, params, mode);
    const double base_f = score_f(prices.p_l, prices.p_f, alloc, t, params, mode);

    const double step = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);
    double best_l = base_l;
    double best_f = base_f;
    for (int i = 0; i < grid.points; ++i) {
        const double p = grid.lo + step * static_cast<double>(i);
        best_l = std::max(best_l, score_l(p, prices.p_f, alloc, t, params, mode));
        best_f = std::max(best_f, score_f(prices.p_l, p, alloc, t, params, mode));
    }
    return std::max(best_l - base_l, best_f - base_f);
}

} // namespace specshare
