#include <doctest.h>

#include <cmath>

#include "specshare/pricing.hpp"
#include "test_support.hpp"

using namespace specshare;

TEST_CASE("interior prices match the closed forms") {
    MarketParams even = testsupport::base_params(0.0, 0.5, 0.5, 1.0);
    const PricingOutcome none = interior_prices({0.5, 0.0}, even);
    CHECK(none.prices.p_l == doctest::Approx(even.c + 2.0 / 3.0).epsilon(1e-12));
    CHECK(none.prices.p_f == doctest::Approx(even.c + 1.0 / 3.0).epsilon(1e-12));
    CHECK(none.split.n_l == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(none.split.n_f == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    MarketParams fans = testsupport::base_params(-0.5);
    const PricingOutcome full = interior_prices({0.5, 0.5}, fans);
    CHECK(full.prices.p_l == doctest::Approx(7.0 / 6.0).epsilon(1e-12));
    CHECK(full.prices.p_f == doctest::Approx(11.0 / 6.0).epsilon(1e-12));
    CHECK(full.split.n_l == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(full.split.n_f == doctest::Approx(5.0 / 6.0).epsilon(1e-12));

    const PricingOutcome half = interior_prices({1.0, 0.5}, even);
    CHECK(half.prices.p_l == doctest::Approx(even.c + 0.5).epsilon(1e-12));
    CHECK(half.prices.p_f == doctest::Approx(even.c + 0.5).epsilon(1e-12));
    CHECK(half.split.n_l == doctest::Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(interior_prices({0.5, 0.0}, testsupport::base_params(1.0)),
                    regime_error);
}

TEST_CASE("interior identities: shares track margins, scale invariance") {
    testsupport::Rng rng(43);
    for (int i = 0; i < 300; ++i) {
        MarketParams p = testsupport::base_params(rng.in(-0.99, 0.99), 0.5, 0.5,
                                                  rng.in(0.0, 2.0));
        const double i_l = rng.in(0.05, 3.0);
        const Allocation alloc{i_l, rng.unit() * i_l};
        const PricingOutcome out = interior_prices(alloc, p);

        CHECK(out.split.n_l == out.prices.p_l - p.c);
        CHECK(out.split.n_f == doctest::Approx(out.prices.p_f - p.c).epsilon(1e-12));
        CHECK(out.split.n_l + out.split.n_f == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(out.split.n_l > 0.0);
        CHECK(out.split.n_l < 1.0);

        const double lambda = rng.in(1.0, 5.0);
        const PricingOutcome scaled =
            interior_prices({lambda * alloc.i_l, lambda * alloc.i_f}, p);
        CHECK(std::abs(scaled.prices.p_l - out.prices.p_l) <= 1e-12);
        CHECK(std::abs(scaled.prices.p_f - out.prices.p_f) <= 1e-12);
        CHECK(std::abs(scaled.split.n_l - out.split.n_l) <= 1e-12);
    }
}

TEST_CASE("corner prices: selection rules and regimes") {
    MarketParams ahead = testsupport::base_params(2.0);
    const PricingOutcome upper = corner_prices(ahead, PriceSelection::upper());
    CHECK(upper.prices.p_l == doctest::Approx(3.0));
    CHECK(upper.prices.p_f == doctest::Approx(1.0));
    CHECK(upper.split.n_l == 1.0);
    CHECK(upper.split.n_f == 0.0);
    CHECK(upper.regime == PricingRegime::corner_L_wins);

    const PricingOutcome mid = corner_prices(ahead, PriceSelection::midpoint());
    CHECK(mid.prices.p_l == doctest::Approx(2.5));

    MarketParams tied = testsupport::base_params(1.0, 0.5, 0.5, 0.0);
    const PricingOutcome interior =
        corner_prices(tied, PriceSelection::upper(), CornerVariant::delta_one_interior);
    CHECK(interior.prices.p_l == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(interior.prices.p_f == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(interior.split.n_l == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(interior.regime == PricingRegime::interior_at_delta_1);

    MarketParams behind = testsupport::base_params(-3.0);
    const PricingOutcome lower = corner_prices(behind, PriceSelection::lower());
    CHECK(lower.prices.p_f == doctest::Approx(2.0));
    CHECK(lower.prices.p_l == doctest::Approx(-2.0));
    CHECK(lower.split.n_f == 1.0);
    CHECK(lower.regime == PricingRegime::corner_F_wins);

    // With -2 < delta <= -1 the nominal interval ends cross; presets still
    // resolve to the named end.
    MarketParams slight = testsupport::base_params(-1.5);
    CHECK(corner_prices(slight, PriceSelection::upper()).prices.p_f ==
          doctest::Approx(1.5));
    CHECK(corner_prices(slight, PriceSelection::lower()).prices.p_f ==
          doctest::Approx(2.0));

    CHECK_THROWS_AS(corner_prices(ahead, PriceSelection::at(3.5)),
                    invalid_selection_error);
    CHECK_THROWS_AS(corner_prices(testsupport::base_params(0.5)), regime_error);
    CHECK_THROWS_AS(
        corner_prices(ahead, PriceSelection::upper(), CornerVariant::delta_one_interior),
        regime_error);
    CHECK(corner_prices(ahead, PriceSelection::at(2.2)).prices.p_l ==
          doctest::Approx(2.2));
}

TEST_CASE("outside stage-2 prices and their composition with demand") {
    MarketParams p = testsupport::outside_params();

    const PricingOutcome full = outside_stage2_prices({1.0, 1.0}, p);
    CHECK(full.prices.p_l == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(full.prices.p_f == doctest::Approx(1.8).epsilon(1e-12));

    const PricingOutcome none = outside_stage2_prices({1.0, 0.0}, p);
    CHECK(none.prices.p_l == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(none.prices.p_f == doctest::Approx(1.2).epsilon(1e-12));

    // Closed-form demand levels recovered through the demand equations.
    const OutsideSubscriptions demand =
        outside_demand(full.prices, {1.0, 1.0}, full.split, p);
    const double expect_l = 2.0 / 15.0 + 2.0 * p.k / 3.0 + 2.0 * p.b / 15.0 - 2.0 * p.c / 3.0;
    const double expect_f = 8.0 / 15.0 + 2.0 * p.k / 3.0 - 2.0 * p.c / 3.0 + 8.0 * p.b / 15.0;
    CHECK(std::abs(demand.n_tilde_l - expect_l) <= 1e-12);
    CHECK(std::abs(demand.n_tilde_f - expect_f) <= 1e-12);

    MarketParams flat = p;
    flat.b = 0.0;
    flat.k = flat.c;
    const PricingOutcome no_b = outside_stage2_prices({1.0, 1.0}, flat);
    CHECK(no_b.prices.p_l == doctest::Approx(flat.c + 1.0 / 15.0).epsilon(1e-12));
    CHECK(no_b.prices.p_f == doctest::Approx(flat.c + 4.0 / 15.0).epsilon(1e-12));
    // Cross-check the derived point by certifying it as a stage-2 equilibrium.
    CHECK(best_response_gain(no_b.prices, {1.0, 1.0}, flat, Stage2Mode::outside,
                             {flat.c - 1.0, flat.c + 3.0, 2001}) <= 1e-6);

    CHECK_THROWS_AS(outside_stage2_prices({2.0, 1.0}, p), non_interior_error);
    CHECK_THROWS_AS(outside_stage2_prices({1.0, 1.0}, testsupport::base_params(0.5)),
                    regime_error);
}

TEST_CASE("deviation scan certifies the closed-form equilibria") {
    MarketParams p = testsupport::base_params(0.0);
    const Allocation alloc{0.5, 0.0};
    const PricingOutcome out = interior_prices(alloc, p);
    const ProbeGrid grid{p.c - 1.0, p.c + 3.0, 2001};

    CHECK(best_response_gain(out.prices, alloc, p, Stage2Mode::base, grid) <= 1e-6);

    PriceProfile nudged = out.prices;
    nudged.p_l += 0.1;
    CHECK(best_response_gain(nudged, alloc, p, Stage2Mode::base, grid) > 0.0);

    MarketParams ahead = testsupport::base_params(2.0);
    const PricingOutcome corner = corner_prices(ahead, PriceSelection::upper());
    CHECK(best_response_gain(corner.prices, {0.5, 0.0}, ahead, Stage2Mode::base, grid) <=
          1e-6);

    MarketParams q = testsupport::outside_params();
    const PricingOutcome outside = outside_stage2_prices({1.0, 1.0}, q);
    CHECK(best_response_gain(outside.prices, {1.0, 1.0}, q, Stage2Mode::outside, grid) <=
          1e-6);
}

TEST_CASE("interior prices certify across preference gaps and allocations") {
    testsupport::Rng rng(59);
    const ProbeGrid grid{0.0, 4.0, 1501};
    for (int i = 0; i < 25; ++i) {
        MarketParams p = testsupport::base_params(rng.in(-0.9, 0.9));
        const double i_l = rng.in(0.2, 2.0);
        const Allocation alloc{i_l, rng.unit() * i_l};
        const PricingOutcome out = interior_prices(alloc, p);
        CHECK(best_response_gain(out.prices, alloc, p, Stage2Mode::base, grid) <= 2e-6);
    }
}
