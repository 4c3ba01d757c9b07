// Regenerates the golden fixtures under tests/fixtures/. The values are
// produced by the numerical disagreement solver once and then committed;
// the test suites compare against the committed copies.
#include <fstream>
#include <iostream>
#include <string>

#include "specshare/csv.hpp"
#include "specshare/disagreement.hpp"

using namespace specshare;

namespace {

DisagreementConfig fixture_config() {
    DisagreementConfig cfg;
    cfg.i_l_points = 3001;
    cfg.i_f_points = 97;
    cfg.refine_passes = 30;
    return cfg;
}

void write_disagreement_golden(const std::string& dir) {
    std::ofstream out(dir + "/disagreement_golden.csv");
    csv::Writer w(out);
    w.row({"case", "gamma", "c", "s_market", "delta_part1", "l0", "m_cap", "w", "v_l",
           "v_f", "alpha", "k", "b", "d_l", "d_f", "i_l", "i_f"});

    const auto emit = [&w](const std::string& name, const MarketParams& p, bool outside) {
        const DisagreementOutcome r = outside
                                          ? solve_outside_disagreement_detail(p, fixture_config())
                                          : solve_base_disagreement_detail(p, fixture_config());
        w.field(name).field(p.gamma).field(p.c).field(p.s_market).field(p.delta_part1);
        w.field(p.l0).field("inf").field(p.w).field(p.v_l).field(p.v_f);
        w.field(p.alpha).field(p.k).field(p.b);
        w.field(r.point.d_l).field(r.point.d_f).field(r.alloc.i_l).field(r.alloc.i_f);
        w.end_row();
        std::cout << name << ": d = (" << csv::format_number(r.point.d_l) << ", "
                  << csv::format_number(r.point.d_f) << ") at i = ("
                  << csv::format_number(r.alloc.i_l) << ", "
                  << csv::format_number(r.alloc.i_f) << ")\n";
    };

    MarketParams base;
    base.gamma = 0.5;
    base.c = 1.0;
    base.s_market = 1.0;
    base.delta_part1 = 0.01;
    base.v_l = -0.5;
    base.v_f = 0.0;
    emit("base_delta_-0.5_s_1", base, false);

    MarketParams ahead = base;
    ahead.v_l = 0.5;
    emit("base_delta_0.5_s_1", ahead, false);

    MarketParams outside;
    outside.gamma = 0.8;
    outside.c = 1.0;
    outside.k = 1.0;
    outside.b = 2.0;
    outside.alpha = 1.0;
    outside.s_market = 2.0;
    outside.delta_part1 = 0.01;
    emit("outside_preset_s_2", outside, true);
}

void write_payoffs_vs_s_golden(const std::string& dir) {
    std::ofstream out(dir + "/payoffs_vs_s_golden.csv");
    csv::Writer w(out);
    w.row({"s_market", "d_l", "d_f"});
    for (double s : {0.8, 1.1, 1.4, 1.7, 2.0}) {
        MarketParams p;
        p.gamma = 0.5;
        p.c = 1.0;
        p.s_market = s;
        p.delta_part1 = 0.01;
        p.v_l = -0.5;
        p.v_f = 0.0;
        const DisagreementPoint d = solve_base_disagreement(p, fixture_config());
        w.field(s).field(d.d_l).field(d.d_f).end_row();
        std::cout << "s = " << csv::format_number(s) << ": d = ("
                  << csv::format_number(d.d_l) << ", " << csv::format_number(d.d_f)
                  << ")\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "tests/fixtures";
    write_disagreement_golden(dir);
    write_payoffs_vs_s_golden(dir);
    std::cout << "fixtures written to " << dir << "\n";
    return 0;
}
