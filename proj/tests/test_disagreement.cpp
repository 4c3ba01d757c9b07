#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include "specshare/disagreement.hpp"
#include "specshare/pricing.hpp"
#include "test_support.hpp"

using namespace specshare;

namespace {

// Light search settings keep the unit tests fast; accuracy is still far
// below the 1e-6 tolerances asserted here.
DisagreementConfig light_config() {
    DisagreementConfig cfg;
    cfg.i_l_points = 2001;
    cfg.i_f_points = 129;
    cfg.refine_passes = 35;
    return cfg;
}

} // namespace

TEST_CASE("corner disagreement closed forms") {
    MarketParams p = testsupport::base_params(-1.5);
    p.s_market = 2.0;
    const DisagreementOutcome out = solve_base_disagreement_detail(p);
    CHECK(out.point.provenance == DisagreementProvenance::corner_closed_form);
    CHECK(out.alloc.i_l == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.alloc.i_f == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.prices.p_f == doctest::Approx(1.5).epsilon(1e-12)); // upper selection
    CHECK(out.point.total() == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(out.point.d_f == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out.point.d_l == doctest::Approx(0.375).epsilon(1e-12));

    MarketParams q = testsupport::base_params(1.5);
    q.delta_part1 = 0.1;
    const DisagreementOutcome ahead = solve_base_disagreement_detail(q);
    CHECK(ahead.point.d_f == 0.0);
    CHECK(ahead.point.d_l == doctest::Approx(1.495).epsilon(1e-12));
    CHECK(ahead.alloc.i_l == doctest::Approx(0.1));
    CHECK(ahead.alloc.i_f == 0.0);

    MarketParams cheap = q;
    cheap.s_market = 0.4; // below gamma
    CHECK_THROWS_AS(solve_base_disagreement(cheap), precondition_error);
}

TEST_CASE("numerical base disagreement is a mutual best response") {
    MarketParams p = testsupport::base_params(-0.5);
    p.s_market = 1.0;
    p.delta_part1 = 0.01;
    const DisagreementConfig cfg = light_config();
    const DisagreementOutcome out = solve_base_disagreement_detail(p, cfg);
    CHECK(out.point.provenance == DisagreementProvenance::numerical_part1);
    CHECK(out.alloc.i_l > p.delta_part1);

    const auto payoff_f = [&](double i_l, double i_f) {
        const double n_f = i_f / (3.0 * i_l) + (1.0 - p.delta()) / 3.0;
        return n_f * n_f - p.s_market * i_f * i_f;
    };
    const auto payoff_l = [&](double i_l, double i_f) {
        const double n_l = p.delta() / 3.0 + 2.0 / 3.0 - i_f / (3.0 * i_l);
        return n_l * n_l + p.s_market * i_f * i_f - p.gamma * i_l * i_l;
    };

    // Follower scan: nothing on [0, i_l*] beats the solved response.
    const double base_f = payoff_f(out.alloc.i_l, out.alloc.i_f);
    for (int i = 0; i <= 2000; ++i) {
        const double i_f = out.alloc.i_l * static_cast<double>(i) / 2000.0;
        CHECK(payoff_f(out.alloc.i_l, i_f) <= base_f + 1e-9);
    }

    // Leader scan with an independent follower resolution at each point.
    const double base_l = payoff_l(out.alloc.i_l, out.alloc.i_f);
    for (int i = 0; i <= 200; ++i) {
        const double i_l = 0.01 + (3.0 - 0.01) * static_cast<double>(i) / 200.0;
        double best_f = -1e300, arg_f = 0.0;
        for (int j = 0; j <= 800; ++j) {
            const double i_f = i_l * static_cast<double>(j) / 800.0;
            const double v = payoff_f(i_l, i_f);
            if (v > best_f) {
                best_f = v;
                arg_f = i_f;
            }
        }
        CHECK(payoff_l(i_l, arg_f) <= base_l + 1e-4);
    }
}

TEST_CASE("starved refinement raises a resolution error with diagnostics") {
    MarketParams p = testsupport::base_params(-0.5);
    DisagreementConfig starved;
    starved.i_l_points = 9;
    starved.i_f_points = 9;
    starved.refine_passes = 1;
    starved.convergence_tol = 1e-12;
    try {
        solve_base_disagreement(p, starved);
        FAIL("expected a resolution error");
    } catch (const resolution_error& e) {
        CHECK(std::string(e.what()).find("refine_passes") != std::string::npos);
    }

    DisagreementConfig bad;
    bad.i_l_lo = 0.001; // below the mandated search floor
    CHECK_THROWS_AS(solve_base_disagreement(p, bad), std::invalid_argument);
    DisagreementConfig tiny;
    tiny.i_l_points = 1;
    CHECK_THROWS_AS(solve_base_disagreement(p, tiny), std::invalid_argument);
}

TEST_CASE("refinement is converged: denser grids move the point below tolerance") {
    MarketParams p = testsupport::base_params(-0.5);
    p.s_market = 1.0;
    DisagreementConfig coarse = light_config();
    DisagreementConfig dense = light_config();
    dense.i_l_points = 2 * coarse.i_l_points;
    dense.i_f_points = 2 * coarse.i_f_points;
    const DisagreementPoint a = solve_base_disagreement(p, coarse);
    const DisagreementPoint b = solve_base_disagreement(p, dense);
    CHECK(std::abs(a.d_l - b.d_l) <= 1e-6);
    CHECK(std::abs(a.d_f - b.d_f) <= 1e-6);
}

TEST_CASE("outside disagreement: idle follower bound and vanishing demand scale") {
    MarketParams p = testsupport::outside_params();
    p.b = 0.0;
    p.k = p.c;
    const DisagreementConfig cfg = light_config();
    const DisagreementOutcome out = solve_outside_disagreement_detail(p, cfg);
    CHECK(out.point.d_f >= 0.0); // the follower can always sit out

    MarketParams tiny = testsupport::outside_params();
    tiny.alpha = 1e-8;
    tiny.delta_part1 = 0.01;
    const DisagreementOutcome faded = solve_outside_disagreement_detail(tiny, cfg);
    CHECK(std::abs(faded.point.d_f) <= 1e-6);
    CHECK(faded.point.d_l ==
          doctest::Approx(-tiny.gamma * tiny.delta_part1 * tiny.delta_part1)
              .epsilon(1e-3));

    CHECK_THROWS_AS(solve_outside_disagreement(testsupport::base_params(0.5), cfg),
                    regime_error);
}

TEST_CASE("outside disagreement respects the interior region and the cap") {
    MarketParams p = testsupport::outside_params();
    const DisagreementConfig cfg = light_config();
    const DisagreementOutcome out = solve_outside_disagreement_detail(p, cfg);
    CHECK(out.alloc.i_l < 4.0 / p.b);

    MarketParams capped = p;
    capped.m_cap = 0.31;
    const DisagreementOutcome squeezed = solve_outside_disagreement_detail(capped, cfg);
    CHECK(squeezed.alloc.i_l <= 0.31 + 1e-12);

    MarketParams dense = p;
    dense.b = 500.0; // interior region [delta_part1, 4/b) is empty
    dense.delta_part1 = 0.05;
    CHECK_THROWS_AS(solve_outside_disagreement(dense, cfg), infeasible_error);
}

TEST_CASE("golden disagreement fixtures") {
    std::ifstream in(std::string(SPECSHARE_FIXTURE_DIR) + "/disagreement_golden.csv");
    REQUIRE_MESSAGE(in.good(), "missing tests/fixtures/disagreement_golden.csv");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const auto rows = testsupport::parse_csv(text);
    REQUIRE(rows.size() >= 3); // header + at least one base and one outside case

    const auto& header = rows.front();
    const auto col = [&](const char* name) {
        const int idx = testsupport::column_index(header, name);
        REQUIRE(idx >= 0);
        return static_cast<std::size_t>(idx);
    };
    const std::size_t c_case = col("case"), c_gamma = col("gamma"), c_c = col("c"),
                      c_s = col("s_market"), c_dp = col("delta_part1"), c_vl = col("v_l"),
                      c_vf = col("v_f"), c_alpha = col("alpha"), c_k = col("k"),
                      c_b = col("b"), c_dl = col("d_l"), c_df = col("d_f"),
                      c_il = col("i_l"), c_if = col("i_f");

    // Same search profile the fixture generator uses; the leader payoff has a
    // flat top, so a different profile can move the argmax by ~1e-6.
    DisagreementConfig cfg;
    cfg.i_l_points = 3001;
    cfg.i_f_points = 97;
    cfg.refine_passes = 30;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        MarketParams p;
        p.gamma = std::stod(row[c_gamma]);
        p.c = std::stod(row[c_c]);
        p.s_market = std::stod(row[c_s]);
        p.delta_part1 = std::stod(row[c_dp]);
        p.v_l = std::stod(row[c_vl]);
        p.v_f = std::stod(row[c_vf]);
        p.alpha = std::stod(row[c_alpha]);
        p.k = std::stod(row[c_k]);
        p.b = std::stod(row[c_b]);

        const bool outside = row[c_case].rfind("outside", 0) == 0;
        const DisagreementOutcome out = outside
                                            ? solve_outside_disagreement_detail(p, cfg)
                                            : solve_base_disagreement_detail(p, cfg);
        INFO("fixture case ", row[c_case]);
        CHECK(std::abs(out.point.d_l - std::stod(row[c_dl])) <= 1e-6);
        CHECK(std::abs(out.point.d_f - std::stod(row[c_df])) <= 1e-6);
        CHECK(std::abs(out.alloc.i_l - std::stod(row[c_il])) <= 1e-4);
        CHECK(std::abs(out.alloc.i_f - std::stod(row[c_if])) <= 1e-4);
    }
}
