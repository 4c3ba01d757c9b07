#include <doctest.h>

#include <cmath>

#include "specshare/market.hpp"
#include "test_support.hpp"

using namespace specshare;

TEST_CASE("transport costs follow the usage ratio") {
    const TransportCosts full = transport_costs({0.5, 0.5});
    CHECK(full.t_l == doctest::Approx(1.0));
    CHECK(full.t_f == doctest::Approx(0.0));

    const TransportCosts none = transport_costs({0.5, 0.0});
    CHECK(none.t_l == doctest::Approx(0.0));
    CHECK(none.t_f == doctest::Approx(1.0));

    const TransportCosts quarter = transport_costs({0.4, 0.1});
    CHECK(quarter.t_l == doctest::Approx(0.25));
    CHECK(quarter.t_f == doctest::Approx(0.75));

    CHECK_THROWS_AS(transport_costs({0.0, 0.0}), degenerate_allocation_error);
    CHECK_THROWS_AS(transport_costs({1.0, 1.5}), std::invalid_argument);
}

TEST_CASE("transport costs always sum to one") {
    testsupport::Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const double i_l = rng.in(0.01, 5.0);
        const double i_f = rng.unit() * i_l;
        const TransportCosts t = transport_costs({i_l, i_f});
        CHECK(t.t_l + t.t_f == 1.0);
        CHECK(t.t_l >= 0.0);
        CHECK(t.t_f <= 1.0);
    }
}

TEST_CASE("end-user utilities at the endpoints and midpoint") {
    MarketParams p;
    p.v_l = p.v_f = 2.0;
    const PriceProfile prices{1.0, 1.0};
    const TransportCosts t{0.5, 0.5};

    auto [ul0, uf0] = eu_utilities(0.0, prices, t, p);
    CHECK(ul0 == doctest::Approx(1.0));
    CHECK(uf0 == doctest::Approx(0.5));

    auto [ul1, uf1] = eu_utilities(1.0, prices, t, p);
    CHECK(ul1 == doctest::Approx(0.5));
    CHECK(uf1 == doctest::Approx(1.0));

    auto [ulm, ufm] = eu_utilities(0.5, prices, t, p);
    CHECK(ulm == doctest::Approx(0.75));
    CHECK(ufm == doctest::Approx(0.75));
}

TEST_CASE("hotelling split: symmetry, known point, corner clamp") {
    MarketParams p = testsupport::base_params(0.0);
    const SubscriptionSplit even = hotelling_split({1.0, 1.0}, {0.5, 0.5}, p);
    CHECK(even.n_l == doctest::Approx(0.5));
    CHECK(even.n_f == doctest::Approx(0.5));

    // Full-lease outcome at delta = -1/2 with c = 1.
    MarketParams q = testsupport::base_params(-0.5);
    const SubscriptionSplit known = hotelling_split({7.0 / 6.0, 11.0 / 6.0}, {1.0, 0.0}, q);
    CHECK(known.n_l == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(known.n_f == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

    MarketParams r = testsupport::base_params(2.0);
    const SubscriptionSplit corner = hotelling_split({1.0, 1.0}, {0.5, 0.5}, r);
    CHECK(corner.n_l == 1.0);
    CHECK(corner.n_f == 0.0);
    CHECK(corner.x0 > 1.0);
}

TEST_CASE("hotelling split properties: shares sum to one, monotone, indifferent at x0") {
    testsupport::Rng rng(29);
    for (int i = 0; i < 300; ++i) {
        MarketParams p = testsupport::base_params(rng.in(-2.0, 2.0));
        const double t_l = rng.unit();
        const TransportCosts t{t_l, 1.0 - t_l};
        const PriceProfile prices{rng.in(-1.0, 3.0), rng.in(-1.0, 3.0)};
        const SubscriptionSplit s = hotelling_split(prices, t, p);
        CHECK(s.n_l + s.n_f == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(s.n_l >= 0.0);
        CHECK(s.n_l <= 1.0);

        // Raising the rival's price never loses customers.
        const SubscriptionSplit pricier =
            hotelling_split({prices.p_l, prices.p_f + rng.unit()}, t, p);
        CHECK(pricier.n_l >= s.n_l);

        MarketParams stronger = p;
        stronger.v_l += rng.unit();
        CHECK(hotelling_split(prices, t, stronger).n_l >= s.n_l);

        if (s.x0 > 0.0 && s.x0 < 1.0) {
            auto [u_l, u_f] = eu_utilities(s.x0, prices, t, p);
            CHECK(std::abs(u_l - u_f) <= 1e-12);
        }
    }
}

TEST_CASE("base payoffs: empty firm, known equilibrium sum, flow invariance") {
    MarketParams p = testsupport::base_params(-0.5);

    const PayoffPair empty =
        base_payoffs({0.5, 0.0}, {1.5, 2.0}, {1.0, 0.0, 1.0}, {std::nullopt, 0.0}, p);
    CHECK(empty.pi_f == doctest::Approx(0.0));

    // Full-lease equilibrium at delta = -1/2, gamma = 1/2, l0 = 1/2, c = 1.
    MoneyFlows flows;
    flows.s_tilde = 2.3;
    const PayoffPair known = base_payoffs({0.5, 0.5}, {7.0 / 6.0, 11.0 / 6.0},
                                          {1.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0}, flows, p);
    CHECK(known.total() == doctest::Approx(0.5972222222222222).epsilon(1e-12));

    CHECK_THROWS_AS(
        base_payoffs({0.5, 0.5}, {1.0, 1.0}, {0.5, 0.5, 0.5}, {std::nullopt, 0.0}, p),
        flow_spec_error);
}

TEST_CASE("payoff sum ignores how the transfer is routed") {
    testsupport::Rng rng(31);
    MarketParams p = testsupport::base_params(0.2);
    for (int i = 0; i < 200; ++i) {
        const double i_l = rng.in(0.5, 2.0);
        const Allocation alloc{i_l, rng.in(0.6, 1.0) * i_l};
        const PriceProfile prices{rng.in(0.0, 3.0), rng.in(0.0, 3.0)};
        const SubscriptionSplit split = hotelling_split(prices, transport_costs(alloc), p);

        // Same net transfer through different (s_tilde, theta) pairs.
        const double net = rng.in(-1.0, 1.0);
        MoneyFlows a{net / (alloc.i_f * alloc.i_f), 0.0};
        const double s_b = rng.in(-2.0, 2.0);
        MoneyFlows b{s_b, s_b * alloc.i_f * alloc.i_f - net};

        const PayoffPair pa = base_payoffs(alloc, prices, split, a, p);
        const PayoffPair pb = base_payoffs(alloc, prices, split, b, p);
        CHECK(std::abs(pa.total() - pb.total()) <= 1e-12);
    }
}

TEST_CASE("outside demand: composition, b=0 reduction, mirrored point, infeasible flag") {
    MarketParams p = testsupport::outside_params();

    // Demand levels at the full-lease outside equilibrium with i_l = 1.
    const Allocation full{1.0, 1.0};
    const PriceProfile prices{1.2, 1.8};
    const SubscriptionSplit split = hotelling_split(prices, transport_costs(full), p);
    CHECK(split.n_l == doctest::Approx(0.6).epsilon(1e-12));
    const OutsideSubscriptions demand = outside_demand(prices, full, split, p);
    CHECK(demand.n_tilde_l == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(demand.n_tilde_f == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(demand.feasible);

    // Swapped prices with the lease withheld mirror the levels.
    const Allocation none{1.0, 0.0};
    const PriceProfile swapped{1.8, 1.2};
    const SubscriptionSplit split2 = hotelling_split(swapped, transport_costs(none), p);
    const OutsideSubscriptions mirrored = outside_demand(swapped, none, split2, p);
    CHECK(mirrored.n_tilde_l == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(mirrored.n_tilde_f == doctest::Approx(0.4).epsilon(1e-12));

    MarketParams flat = p;
    flat.b = 0.0;
    flat.k = 1.3;
    flat.alpha = 1.7;
    const PriceProfile at_k{1.3, 1.3};
    const SubscriptionSplit s3 = hotelling_split(at_k, {0.25, 0.75}, flat);
    const OutsideSubscriptions reduced = outside_demand(at_k, {2.0, 0.5}, s3, flat);
    CHECK(reduced.n_tilde_l == doctest::Approx(flat.alpha * s3.n_l).epsilon(1e-15));
    CHECK(reduced.n_tilde_f == doctest::Approx(flat.alpha * s3.n_f).epsilon(1e-15));

    MarketParams pricey = p;
    pricey.k = -5.0;
    const OutsideSubscriptions starved = outside_demand(prices, full, split, pricey);
    CHECK_FALSE(starved.feasible);
    CHECK(starved.n_tilde_l < 0.0);
}

TEST_CASE("market params parse from flat key-value text") {
    const std::string text =
        "gamma = 0.5\n"
        "c = 1\n"
        "s_market = 2 # comment\n"
        "delta_part1 = 0.1\n"
        "l0 0.4\n"
        "w = 0.2\n"
        "v_l = -0.5\n"
        "v_f = 0\n"
        "alpha = 1\n"
        "k = 1\n"
        "b = 2\n";
    const MarketParams p = params_from_kv(text);
    CHECK(p.gamma == 0.5);
    CHECK(p.l0 == 0.4);
    CHECK(p.delta() == -0.5);
    CHECK(std::isinf(p.m_cap)); // omitted -> unbounded

    CHECK_THROWS_AS(params_from_kv("gamma = 0.5\nnope = 1\n"), config_error);
    CHECK_THROWS_AS(params_from_kv("gamma = fast\n"), config_error);
    CHECK_THROWS_AS(params_from_kv("w = 1.5\n"), config_error);
    CHECK_THROWS_AS(params_from_kv("l0 = 2\nm_cap = 1\n"), config_error);
}

TEST_CASE("allocation bounds check against params") {
    MarketParams p = testsupport::base_params(0.0);
    p.m_cap = 1.0;
    const Allocation inside{0.7, 0.2};
    const Allocation below{0.3, 0.1};
    const Allocation above{1.4, 0.1};
    CHECK_NOTHROW(inside.validate(p));
    CHECK_THROWS_AS(below.validate(p), std::invalid_argument);
    CHECK_THROWS_AS(above.validate(p), std::invalid_argument);
}
