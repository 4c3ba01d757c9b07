// Python bindings for the solver core: parameter handling, the stage
// primitives, both bargaining solvers, the disagreement games and the
// brute-force oracle.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "specshare/bargaining.hpp"
#include "specshare/disagreement.hpp"
#include "specshare/experiments.hpp"
#include "specshare/market.hpp"
#include "specshare/oracle.hpp"
#include "specshare/outside.hpp"
#include "specshare/pricing.hpp"

namespace py = pybind11;
using namespace specshare;

namespace {

PriceSelection selection_from_object(const py::object& obj) {
    if (obj.is_none()) return {};
    if (py::isinstance<py::str>(obj)) return selection_from_string(obj.cast<std::string>());
    return PriceSelection::at(obj.cast<double>());
}

} // namespace

PYBIND11_MODULE(_specshare, m) {
    m.doc() = "Equilibrium solvers for the two-provider spectrum-sharing game";

    py::register_exception<error>(m, "SolverError");

    py::class_<MarketParams>(m, "MarketParams")
        .def(py::init<>())
        .def_readwrite("gamma", &MarketParams::gamma)
        .def_readwrite("c", &MarketParams::c)
        .def_readwrite("s_market", &MarketParams::s_market)
        .def_readwrite("delta_part1", &MarketParams::delta_part1)
        .def_readwrite("l0", &MarketParams::l0)
        .def_readwrite("m_cap", &MarketParams::m_cap)
        .def_readwrite("w", &MarketParams::w)
        .def_readwrite("v_l", &MarketParams::v_l)
        .def_readwrite("v_f", &MarketParams::v_f)
        .def_readwrite("alpha", &MarketParams::alpha)
        .def_readwrite("k", &MarketParams::k)
        .def_readwrite("b", &MarketParams::b)
        .def("delta", &MarketParams::delta)
        .def("validate", &MarketParams::validate)
        .def("__repr__", [](const MarketParams& p) {
            std::ostringstream out;
            out << "MarketParams(gamma=" << p.gamma << ", c=" << p.c
                << ", s_market=" << p.s_market << ", l0=" << p.l0 << ", w=" << p.w
                << ", delta=" << p.delta() << ")";
            return out.str();
        });

    py::class_<Allocation>(m, "Allocation")
        .def(py::init<double, double>(), py::arg("i_l"), py::arg("i_f"))
        .def_readwrite("i_l", &Allocation::i_l)
        .def_readwrite("i_f", &Allocation::i_f);

    py::class_<TransportCosts>(m, "TransportCosts")
        .def_readonly("t_l", &TransportCosts::t_l)
        .def_readonly("t_f", &TransportCosts::t_f);

    py::class_<PriceProfile>(m, "PriceProfile")
        .def(py::init<double, double>(), py::arg("p_l"), py::arg("p_f"))
        .def_readwrite("p_l", &PriceProfile::p_l)
        .def_readwrite("p_f", &PriceProfile::p_f);

    py::class_<SubscriptionSplit>(m, "SubscriptionSplit")
        .def_readonly("n_l", &SubscriptionSplit::n_l)
        .def_readonly("n_f", &SubscriptionSplit::n_f)
        .def_readonly("x0", &SubscriptionSplit::x0);

    py::class_<OutsideSubscriptions>(m, "OutsideSubscriptions")
        .def_readonly("n_tilde_l", &OutsideSubscriptions::n_tilde_l)
        .def_readonly("n_tilde_f", &OutsideSubscriptions::n_tilde_f)
        .def_readonly("feasible", &OutsideSubscriptions::feasible);

    py::class_<MoneyFlows>(m, "MoneyFlows")
        .def_property_readonly("s_tilde",
                               [](const MoneyFlows& f) { return f.s_tilde; })
        .def_readonly("theta", &MoneyFlows::theta);

    py::class_<PayoffPair>(m, "PayoffPair")
        .def_readonly("pi_l", &PayoffPair::pi_l)
        .def_readonly("pi_f", &PayoffPair::pi_f)
        .def("total", &PayoffPair::total);

    py::class_<DisagreementPoint>(m, "DisagreementPoint")
        .def(py::init([](double d_l, double d_f) {
                 return DisagreementPoint{d_l, d_f, DisagreementProvenance::user_supplied};
             }),
             py::arg("d_l") = 0.0, py::arg("d_f") = 0.0)
        .def_readwrite("d_l", &DisagreementPoint::d_l)
        .def_readwrite("d_f", &DisagreementPoint::d_f)
        .def("total", &DisagreementPoint::total)
        .def_property_readonly("provenance", [](const DisagreementPoint& d) {
            return std::string(to_string(d.provenance));
        });

    py::class_<PricingOutcome>(m, "PricingOutcome")
        .def_readonly("prices", &PricingOutcome::prices)
        .def_readonly("split", &PricingOutcome::split)
        .def_property_readonly("regime", [](const PricingOutcome& o) {
            return std::string(to_string(o.regime));
        });

    py::class_<EquilibriumSolution>(m, "EquilibriumSolution")
        .def_readonly("alloc", &EquilibriumSolution::alloc)
        .def_readonly("flows", &EquilibriumSolution::flows)
        .def_readonly("prices", &EquilibriumSolution::prices)
        .def_readonly("split", &EquilibriumSolution::split)
        .def_readonly("demand", &EquilibriumSolution::demand)
        .def_readonly("payoffs", &EquilibriumSolution::payoffs)
        .def_readonly("u_excess_star", &EquilibriumSolution::u_excess_star)
        .def_property_readonly("regime", [](const EquilibriumSolution& s) {
            return std::string(to_string(s.regime));
        });

    py::class_<ExistenceReport>(m, "ExistenceReport")
        .def_readonly("pi_star", &ExistenceReport::pi_star)
        .def_readonly("d", &ExistenceReport::d)
        .def_readonly("margin", &ExistenceReport::margin)
        .def_readonly("exists", &ExistenceReport::exists)
        .def_readonly("interior_ok", &ExistenceReport::interior_ok);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("solutions", &SolveResult::solutions)
        .def_readonly("report", &SolveResult::report);

    py::class_<OutsideSolveResult>(m, "OutsideSolveResult")
        .def_readonly("solutions", &OutsideSolveResult::solutions)
        .def_readonly("report", &OutsideSolveResult::report)
        .def_readonly("bounded", &OutsideSolveResult::bounded);

    py::class_<OutsideMaximum>(m, "OutsideMaximum")
        .def_readonly("i_l_star", &OutsideMaximum::i_l_star)
        .def_readonly("h_star", &OutsideMaximum::h_star)
        .def_readonly("bounded", &OutsideMaximum::bounded);

    m.def("params_from_text",
          [](const std::string& text) { return params_from_kv(text); },
          py::arg("text"), "Parse MarketParams from flat key = value text");

    m.def("transport_costs", &transport_costs, py::arg("alloc"));
    m.def("eu_utilities", &eu_utilities, py::arg("x"), py::arg("prices"), py::arg("t"),
          py::arg("params"));
    m.def("hotelling_split", &hotelling_split, py::arg("prices"), py::arg("t"),
          py::arg("params"));
    m.def("base_payoffs", &base_payoffs, py::arg("alloc"), py::arg("prices"),
          py::arg("split"), py::arg("flows"), py::arg("params"));
    m.def("outside_demand", &outside_demand, py::arg("prices"), py::arg("alloc"),
          py::arg("split"), py::arg("params"));

    m.def("interior_prices", &interior_prices, py::arg("alloc"), py::arg("params"));
    m.def(
        "corner_prices",
        [](const MarketParams& p, const py::object& selection, bool delta_one_interior) {
            return corner_prices(p, selection_from_object(selection),
                                 delta_one_interior ? CornerVariant::delta_one_interior
                                                    : CornerVariant::corner);
        },
        py::arg("params"), py::arg("selection") = py::none(),
        py::arg("delta_one_interior") = false);
    m.def("outside_stage2_prices", &outside_stage2_prices, py::arg("alloc"),
          py::arg("params"));
    m.def(
        "best_response_gain",
        [](const PriceProfile& prices, const Allocation& alloc, const MarketParams& p,
           const std::string& mode, double lo, double hi, int points) {
            return best_response_gain(prices, alloc, p,
                                      mode == "outside" ? Stage2Mode::outside
                                                        : Stage2Mode::base,
                                      ProbeGrid{lo, hi, points});
        },
        py::arg("prices"), py::arg("alloc"), py::arg("params"), py::arg("mode") = "base",
        py::arg("lo") = 0.0, py::arg("hi") = 4.0, py::arg("points") = 2001);

    m.def("u_excess", &u_excess, py::arg("alloc"), py::arg("params"), py::arg("d"));
    m.def("nbs_split", &nbs_split, py::arg("u_star"), py::arg("d"), py::arg("w"));
    m.def("money_flows", &money_flows, py::arg("i_f"), py::arg("n_f"), py::arg("p_f"),
          py::arg("d_f"), py::arg("w"), py::arg("u_star"), py::arg("c"));
    m.def("total_base_payoff", &total_base_payoff, py::arg("delta"), py::arg("gamma"),
          py::arg("l0"));
    m.def("solve_base", &solve_base, py::arg("params"), py::arg("d"));
    m.def(
        "solve_corner",
        [](const MarketParams& p, const DisagreementPoint& d, const py::object& selection,
           const std::optional<double>& interior_i_f) {
            return solve_corner(p, d, selection_from_object(selection), interior_i_f);
        },
        py::arg("params"), py::arg("d"), py::arg("selection") = py::none(),
        py::arg("interior_i_f") = py::none());
    m.def("resource_cost_metric", &resource_cost_metric, py::arg("solution"));

    m.def("outside_objective", &outside_objective, py::arg("i_l"), py::arg("params"));
    m.def("maximize_outside_objective", &maximize_outside_objective, py::arg("params"));
    m.def("outside_u_excess", &outside_u_excess, py::arg("alloc"), py::arg("params"),
          py::arg("d"));
    m.def("solve_outside", &solve_outside, py::arg("params"), py::arg("d"));

    m.def(
        "solve_base_disagreement",
        [](const MarketParams& p, int i_l_points, int i_f_points, int refine_passes) {
            DisagreementConfig cfg;
            if (i_l_points > 0) cfg.i_l_points = i_l_points;
            if (i_f_points > 0) cfg.i_f_points = i_f_points;
            if (refine_passes >= 0) cfg.refine_passes = refine_passes;
            return solve_base_disagreement(p, cfg);
        },
        py::arg("params"), py::arg("i_l_points") = 0, py::arg("i_f_points") = 0,
        py::arg("refine_passes") = -1);
    m.def(
        "solve_outside_disagreement",
        [](const MarketParams& p, int i_l_points, int i_f_points, int refine_passes) {
            DisagreementConfig cfg;
            if (i_l_points > 0) cfg.i_l_points = i_l_points;
            if (i_f_points > 0) cfg.i_f_points = i_f_points;
            if (refine_passes >= 0) cfg.refine_passes = refine_passes;
            return solve_outside_disagreement(p, cfg);
        },
        py::arg("params"), py::arg("i_l_points") = 0, py::arg("i_f_points") = 0,
        py::arg("refine_passes") = -1);

    m.def(
        "grid_argmax_u_excess",
        [](const MarketParams& p, const DisagreementPoint& d, double i_l_lo, double i_l_hi,
           int i_l_points, int i_f_points, const std::string& mode) {
            const GridArgmax r = grid_argmax_u_excess(
                p, d, GridSpec{i_l_lo, i_l_hi, i_l_points, i_f_points},
                mode == "outside" ? Stage2Mode::outside : Stage2Mode::base);
            return py::make_tuple(r.alloc, r.value, r.tolerance);
        },
        py::arg("params"), py::arg("d"), py::arg("i_l_lo"), py::arg("i_l_hi"),
        py::arg("i_l_points") = 400, py::arg("i_f_points") = 400, py::arg("mode") = "base");
}
