#include "specshare/market.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace specshare {

void MarketParams::validate() const {
    auto bad = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (!(gamma > 0.0)) bad("gamma must be > 0");
    if (!(c >= 0.0)) bad("c must be >= 0");
    if (!(s_market > 0.0)) bad("s_market must be > 0");
    if (!(delta_part1 > 0.0)) bad("delta_part1 must be > 0");
    if (!(l0 > 0.0)) bad("l0 must be > 0");
    if (!(w > 0.0 && w < 1.0)) bad("w must lie strictly in (0,1)");
    if (!(alpha > 0.0)) bad("alpha must be > 0");
    if (!(b >= 0.0)) bad("b must be >= 0");
    if (std::isnan(m_cap) || m_cap < l0) bad("m_cap must be >= l0");
    if (!std::isfinite(v_l) || !std::isfinite(v_f)) bad("v_l, v_f must be finite");
    if (!std::isfinite(k)) bad("k must be finite");
}

void Allocation::validate() const {
    if (!(i_l > 0.0)) throw degenerate_allocation_error("allocation requires i_l > 0");
    if (!(i_f >= 0.0) || !(i_f <= i_l))
        throw std::invalid_argument("allocation requires 0 <= i_f <= i_l");
}

void Allocation::validate(const MarketParams& params) const {
    validate();
    if (i_l < params.l0 || i_l > params.m_cap)
        throw std::invalid_argument("allocation requires l0 <= i_l <= m_cap");
}

const char* to_string(DisagreementProvenance p) {
    switch (p) {
        case DisagreementProvenance::corner_closed_form: return "corner-closed-form";
        case DisagreementProvenance::numerical_part1: return "numerical-part1";
        case DisagreementProvenance::user_supplied: return "user-supplied";
    }
    return "unknown";
}

TransportCosts transport_costs(const Allocation& alloc) {
    if (!(alloc.i_l > 0.0))
        throw degenerate_allocation_error("transport costs undefined for i_l <= 0");
    if (!(alloc.i_f >= 0.0) || !(alloc.i_f <= alloc.i_l))
        throw std::invalid_argument("transport costs require 0 <= i_f <= i_l");
    const double t_l = alloc.i_f / alloc.i_l;
    return {t_l, 1.0 - t_l};
}

std::pair<double, double> eu_utilities(double x, const PriceProfile& prices,
                                       const TransportCosts& t, const MarketParams& params) {
    const double u_l = params.v_l - (prices.p_l + t.t_l * x);
    const double u_f = params.v_f - (prices.p_f + t.t_f * (1.0 - x));
    return {u_l, u_f};
}

SubscriptionSplit hotelling_split(const PriceProfile& prices, const TransportCosts& t,
                                  const MarketParams& params) {
    const double x0 = params.delta() + prices.p_f - prices.p_l + t.t_f;
    const double n_l = std::clamp(x0, 0.0, 1.0);
    return {n_l, 1.0 - n_l, x0};
}

PayoffPair base_payoffs(const Allocation& alloc, const PriceProfile& prices,
                        const SubscriptionSplit& split, const MoneyFlows& flows,
                        const MarketParams& params) {
    alloc.validate();
    if (!flows.s_tilde.has_value() && alloc.i_f > 0.0)
        throw flow_spec_error("reservation fee marked not-significant while i_f > 0");
    const double fee = flows.s_tilde.value_or(0.0) * alloc.i_f * alloc.i_f;
    const double pi_f = split.n_f * (prices.p_f - params.c) - fee + flows.theta;
    const double pi_l = split.n_l * (prices.p_l - params.c) + fee -
                        params.gamma * alloc.i_l * alloc.i_l - flows.theta;
    return {pi_l, pi_f};
}

OutsideSubscriptions outside_demand(const PriceProfile& prices, const Allocation& alloc,
                                    const SubscriptionSplit& split, const MarketParams& params) {
    alloc.validate();
    const double phi_l = params.k - prices.p_l + params.b * (alloc.i_l - alloc.i_f);
    const double phi_f = params.k - prices.p_f + params.b * alloc.i_f;
    OutsideSubscriptions out;
    out.n_tilde_l = params.alpha * (split.n_l + phi_l);
    out.n_tilde_f = params.alpha * (split.n_f + phi_f);
    out.feasible = out.n_tilde_l >= 0.0 && out.n_tilde_f >= 0.0;
    return out;
}

namespace {

// Accepts "key = value" or "key value"; '#' starts a comment.
bool split_kv_line(const std::string& line, std::string& key, std::string& value) {
    std::string body = line.substr(0, line.find('#'));
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r\n");
        if (a == std::string::npos) return std::string{};
        const auto b = s.find_last_not_of(" \t\r\n");
        return s.substr(a, b - a + 1);
    };
    body = trim(body);
    if (body.empty()) return false;
    auto sep = body.find('=');
    if (sep == std::string::npos) sep = body.find_first_of(" \t");
    if (sep == std::string::npos)
        throw config_error("malformed config line: '" + line + "'");
    key = trim(body.substr(0, sep));
    value = trim(body.substr(sep + 1));
    if (key.empty() || value.empty())
        throw config_error("malformed config line: '" + line + "'");
    return true;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "' has non-numeric value '" + value + "'");
    }
}

} // namespace

MarketParams params_from_kv(std::istream& in, std::map<std::string, std::string>* unknown) {
    MarketParams p;
    std::string line, key, value;
    while (std::getline(in, line)) {
        if (!split_kv_line(line, key, value)) continue;
        if (key == "gamma") p.gamma = parse_double(key, value);
        else if (key == "c") p.c = parse_double(key, value);
        else if (key == "s_market") p.s_market = parse_double(key, value);
        else if (key == "delta_part1") p.delta_part1 = parse_double(key, value);
        else if (key == "l0") p.l0 = parse_double(key, value);
        else if (key == "m_cap") p.m_cap = parse_double(key, value);
        else if (key == "w") p.w = parse_double(key, value);
        else if (key == "v_l") p.v_l = parse_double(key, value);
        else if (key == "v_f") p.v_f = parse_double(key, value);
        else if (key == "alpha") p.alpha = parse_double(key, value);
        else if (key == "k") p.k = parse_double(key, value);
        else if (key == "b") p.b = parse_double(key, value);
        else if (unknown) (*unknown)[key] = value;
        else throw config_error("unknown config key '" + key + "'");
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("invalid parameter set: ") + e.what());
    }
    return p;
}

MarketParams params_from_kv(const std::string& text, std::map<std::string, std::string>* unknown) {
    std::istringstream in(text);
    return params_from_kv(in, unknown);
}

} // namespace specshare
