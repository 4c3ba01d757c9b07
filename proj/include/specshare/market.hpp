#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "specshare/errors.hpp"

namespace specshare {

/// m_cap value meaning "no upper bound on leasable spectrum".
inline constexpr double kUnboundedCap = std::numeric_limits<double>::infinity();

/** Exogenous constants of the two-provider spectrum market.
 *
 * SP_L is the operator that leases spectrum from the regulator; SP_F is the
 * virtual operator that uses part of it. End users sit uniformly on [0,1]
 * with SP_L at 0 and SP_F at 1.
 */
struct MarketParams {
    double gamma = 0.5;        ///< regulator fee per squared leased unit
    double c = 1.0;            ///< transaction cost per subscription
    double s_market = 1.0;     ///< market reservation fee used in the disagreement game
    double delta_part1 = 0.01; ///< minimum acquisition in the disagreement game
    double l0 = 0.5;           ///< mandated minimum acquisition under bargaining
    double m_cap = kUnboundedCap; ///< maximum leasable spectrum (infinity = unbounded)
    double w = 0.2;            ///< relative bargaining power of SP_F, in (0,1)
    double v_l = 0.0;          ///< prior end-user preference for SP_L
    double v_f = 0.0;          ///< prior end-user preference for SP_F
    double alpha = 1.0;        ///< outside-option demand scale
    double k = 1.0;            ///< outside-option demand intercept
    double b = 0.0;            ///< outside-option demand sensitivity to spectrum

    /// Prior-preference gap v_l - v_f; |delta| < 1 is the interior regime.
    double delta() const { return v_l - v_f; }

    /// Throws std::invalid_argument on any violated range constraint.
    void validate() const;
};

/// Spectrum pair: SP_L leases i_l from the regulator, SP_F uses i_f of it.
struct Allocation {
    double i_l = 0.0;
    double i_f = 0.0;

    /// Checks 0 <= i_f <= i_l and i_l > 0.
    void validate() const;
    /// Additionally checks l0 <= i_l <= m_cap.
    void validate(const MarketParams& params) const;
};

/// Unit transport costs toward each provider; t_l + t_f = 1.
struct TransportCosts {
    double t_l = 0.0;
    double t_f = 1.0;
};

/// Access fees charged to end users. May fall below c in deviation probes.
struct PriceProfile {
    double p_l = 0.0;
    double p_f = 0.0;
};

/** Split of the common end-user pool.
 *
 * x0 is the indifference location before clamping; n_l = clamp(x0, 0, 1)
 * and n_f = 1 - n_l.
 */
struct SubscriptionSplit {
    double n_l = 0.0;
    double n_f = 0.0;
    double x0 = 0.0;
};

/// Demand-adjusted subscription levels when an outside option exists.
/// Negative levels mark the parameter point infeasible; they are not clamped.
struct OutsideSubscriptions {
    double n_tilde_l = 0.0;
    double n_tilde_f = 0.0;
    bool feasible = true;
};

/** Money flows that implement the bargained payoff split.
 *
 * Exactly one channel is active: with i_f > 0 the reservation fee s_tilde
 * carries the transfer and theta = 0; with i_f = 0 the fee has no
 * significance (nullopt) and theta carries it.
 */
struct MoneyFlows {
    std::optional<double> s_tilde;
    double theta = 0.0;
};

/// Payoffs of (SP_L, SP_F).
struct PayoffPair {
    double pi_l = 0.0;
    double pi_f = 0.0;

    double total() const { return pi_l + pi_f; }
};

/// How a disagreement point was obtained.
enum class DisagreementProvenance {
    corner_closed_form, ///< |delta| >= 1 closed forms
    numerical_part1,    ///< backward induction over the non-cooperative game
    user_supplied,      ///< passed in from outside
};

/// Fallback payoffs if bargaining fails.
struct DisagreementPoint {
    double d_l = 0.0;
    double d_f = 0.0;
    DisagreementProvenance provenance = DisagreementProvenance::user_supplied;

    double total() const { return d_l + d_f; }
};

const char* to_string(DisagreementProvenance p);

/// t_l = i_f/i_l, t_f = 1 - t_l. Throws degenerate_allocation_error if i_l <= 0.
TransportCosts transport_costs(const Allocation& alloc);

/// Utilities (u_l, u_f) of the end user at location x in [0,1]:
/// u_l = v_l - (p_l + t_l x), u_f = v_f - (p_f + t_f (1-x)).
std::pair<double, double> eu_utilities(double x, const PriceProfile& prices,
                                       const TransportCosts& t, const MarketParams& params);

/// Indifference point x0 = delta + p_f - p_l + t_f, clamped into subscription
/// shares. Monotone nondecreasing in (p_f - p_l) and in delta.
SubscriptionSplit hotelling_split(const PriceProfile& prices, const TransportCosts& t,
                                  const MarketParams& params);

/** Payoff accounting of the base game:
 *    pi_f = n_f (p_f - c) - s_tilde i_f^2 + theta
 *    pi_l = n_l (p_l - c) + s_tilde i_f^2 - gamma i_l^2 - theta
 *
 * The sum is independent of the flows. Throws flow_spec_error when i_f > 0
 * and the reservation fee is marked not-significant.
 */
PayoffPair base_payoffs(const Allocation& alloc, const PriceProfile& prices,
                        const SubscriptionSplit& split, const MoneyFlows& flows,
                        const MarketParams& params);

/** Demand-adjusted subscriptions with an outside option:
 *    phi_l = k - p_l + b (i_l - i_f),  phi_f = k - p_f + b i_f
 *    n_tilde = alpha (n + phi)
 *
 * A negative level clears `feasible` instead of clamping.
 */
OutsideSubscriptions outside_demand(const PriceProfile& prices, const Allocation& alloc,
                                    const SubscriptionSplit& split, const MarketParams& params);

/** Parses MarketParams from flat `key = value` text (one pair per line,
 * '#' comments). Keys: gamma, c, s_market, delta_part1, l0, m_cap, w, v_l,
 * v_f, alpha, k, b. m_cap omitted means unbounded.
 *
 * Unknown keys throw config_error unless `unknown` is non-null, in which
 * case they are handed back for the caller to interpret.
 */
MarketParams params_from_kv(std::istream& in,
                            std::map<std::string, std::string>* unknown = nullptr);
MarketParams params_from_kv(const std::string& text,
                            std::map<std::string, std::string>* unknown = nullptr);

} // namespace specshare
