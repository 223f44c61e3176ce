#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rateopt/errors.hpp"
#include "rateopt/fading.hpp"
#include "rateopt/framework.hpp"
#include "rateopt/oracle.hpp"
#include "rateopt/relay.hpp"
#include "rateopt/report.hpp"
#include "rateopt/scenario.hpp"
#include "rateopt/signal_sim.hpp"
#include "rateopt/sweep.hpp"

namespace py = pybind11;
using namespace rateopt;

namespace {

verify::Objective make_objective(const std::string& mode, double a1, double a2, double prelog) {
    const auto m = cli::parse_mode(mode);
    if (m == cli::Mode::WeightedSum) {
        return verify::WeightedObjective{a1, a2, prelog};
    }
    if (m == cli::Mode::CommonRate) {
        return verify::MaxMinObjective{};
    }
    throw ConfigError("field 'mode': grid search needs common-rate or weighted-sum");
}

framework::FeasibleRegion simplex(const std::vector<double>& costs, double budget) {
    return framework::FeasibleRegion::whole_simplex(
        framework::SimplexBound(framework::CostVector(costs), budget));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed-form power allocation for two-way relaying";

    py::register_exception<WeightTooSkewed>(m, "WeightTooSkewed", PyExc_ValueError);
    py::register_exception<Unachievable>(m, "Unachievable", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<relay::ChannelState>(m, "ChannelState")
        .def(py::init<relay::cvec, relay::cvec, double>(), py::arg("h1"), py::arg("h2"),
             py::arg("sigma2"))
        .def_static("from_gains", &relay::ChannelState::from_gains, py::arg("norm1_sq"),
                    py::arg("norm2_sq"), py::arg("sigma2"), py::arg("nr") = 1)
        .def_property_readonly("h1", &relay::ChannelState::h1)
        .def_property_readonly("h2", &relay::ChannelState::h2)
        .def_property_readonly("sigma2", &relay::ChannelState::sigma2)
        .def_property_readonly("nr", &relay::ChannelState::nr)
        .def_property_readonly("norm1_sq", &relay::ChannelState::norm1_sq)
        .def_property_readonly("norm2_sq", &relay::ChannelState::norm2_sq);

    py::class_<relay::PowerAllocation>(m, "PowerAllocation")
        .def(py::init(&relay::PowerAllocation::make), py::arg("p1"), py::arg("p2"),
             py::arg("pr"), py::arg("pt"))
        .def_static("from_alpha_beta", &relay::PowerAllocation::from_alpha_beta,
                    py::arg("alpha"), py::arg("beta"), py::arg("pt"))
        .def_readonly("p1", &relay::PowerAllocation::p1)
        .def_readonly("p2", &relay::PowerAllocation::p2)
        .def_readonly("pr", &relay::PowerAllocation::pr)
        .def_readonly("pt", &relay::PowerAllocation::pt)
        .def_property_readonly("alpha", &relay::PowerAllocation::alpha)
        .def_property_readonly("beta", &relay::PowerAllocation::beta)
        .def("__repr__", [](const relay::PowerAllocation& p) {
            std::ostringstream s;
            s << "PowerAllocation(p1=" << p.p1 << ", p2=" << p.p2 << ", pr=" << p.pr
              << ", pt=" << p.pt << ")";
            return s.str();
        });

    py::class_<relay::SnrPair>(m, "SnrPair")
        .def(py::init<double, double>(), py::arg("gamma1"), py::arg("gamma2"))
        .def_readonly("gamma1", &relay::SnrPair::gamma1)
        .def_readonly("gamma2", &relay::SnrPair::gamma2)
        .def("__iter__", [](const relay::SnrPair& s) {
            return py::iter(py::make_tuple(s.gamma1, s.gamma2));
        });

    py::class_<relay::EffectiveGains>(m, "EffectiveGains")
        .def(py::init<double, double>(), py::arg("gamma1r"), py::arg("gamma2r"))
        .def_readonly("gamma1r", &relay::EffectiveGains::gamma1r)
        .def_readonly("gamma2r", &relay::EffectiveGains::gamma2r);

    m.def("snr_pair", &relay::snr_pair, py::arg("powers"), py::arg("channel"));
    m.def("effective_gains", &relay::effective_gains, py::arg("channel"), py::arg("pt"));
    m.def("snr_sum_budget", &relay::snr_sum_budget, py::arg("gains"));
    m.def("common_rate_alpha", &relay::common_rate_alpha, py::arg("gains"));
    m.def("common_rate_powers", &relay::common_rate_powers, py::arg("channel"), py::arg("pt"));
    m.def("weighted_optimal_snrs", &relay::weighted_optimal_snrs, py::arg("a1"), py::arg("a2"),
          py::arg("gains"));
    m.def("recover_powers", &relay::recover_powers, py::arg("target"), py::arg("channel"),
          py::arg("pt"), py::arg("tol") = relay::kRecoverTol);
    m.def("weighted_sum_rate", &relay::weighted_sum_rate, py::arg("snrs"), py::arg("a1"),
          py::arg("a2"), py::arg("prelog") = relay::kDefaultPrelog);
    m.def("common_rate", &relay::common_rate, py::arg("snrs"),
          py::arg("prelog") = relay::kDefaultPrelog);

    m.def(
        "omega_contains",
        [](const std::vector<double>& x, const std::vector<double>& costs, double budget) {
            return framework::omega_contains(
                x, framework::SimplexBound(framework::CostVector(costs), budget));
        },
        py::arg("x"), py::arg("costs"), py::arg("budget"));
    m.def(
        "theta_point",
        [](const std::vector<double>& weights, const std::vector<double>& costs, double budget) {
            return framework::theta_point(
                framework::WeightVector(weights),
                framework::SimplexBound(framework::CostVector(costs), budget));
        },
        py::arg("weights"), py::arg("costs"), py::arg("budget"));
    m.def(
        "max_min_point",
        [](const std::vector<double>& costs, double budget) {
            return framework::solve_max_min(simplex(costs, budget)).point;
        },
        py::arg("costs"), py::arg("budget"));

    py::class_<verify::GridSearchResult>(m, "GridSearchResult")
        .def_readonly("best_alpha", &verify::GridSearchResult::best_alpha)
        .def_readonly("best_beta", &verify::GridSearchResult::best_beta)
        .def_readonly("best_powers", &verify::GridSearchResult::best_powers)
        .def_readonly("best_snrs", &verify::GridSearchResult::best_snrs)
        .def_readonly("objective", &verify::GridSearchResult::objective)
        .def_readonly("step", &verify::GridSearchResult::step);

    m.def(
        "grid_search",
        [](const relay::ChannelState& ch, double pt, const std::string& mode, double a1,
           double a2, double step, unsigned threads, double prelog) {
            const auto obj = make_objective(mode, a1, a2, prelog);
            py::gil_scoped_release release;
            return verify::grid_search(obj, ch, pt, step, threads);
        },
        py::arg("channel"), py::arg("pt"), py::arg("mode") = "common-rate", py::arg("a1") = 1.0,
        py::arg("a2") = 1.0, py::arg("step") = 0.001, py::arg("threads") = 1,
        py::arg("prelog") = relay::kDefaultPrelog);
    m.def("upa_allocation", &verify::upa_allocation, py::arg("pt"));
    m.def(
        "draw_channel",
        [](std::size_t nr, double var1, double var2, double noise_var, std::uint64_t seed) {
            return verify::draw_channel({nr, var1, var2, noise_var}, seed);
        },
        py::arg("nr"), py::arg("var1"), py::arg("var2"), py::arg("noise_var"), py::arg("seed"));
    m.def("mix_seed", &verify::mix_seed, py::arg("master"), py::arg("budget_index"),
          py::arg("trial_index"));
    m.def(
        "signal_snr_estimate",
        [](const relay::PowerAllocation& p, const relay::ChannelState& ch, std::size_t symbols,
           std::uint64_t seed) {
            py::gil_scoped_release release;
            return verify::signal_snr_estimate(p, ch, symbols, seed);
        },
        py::arg("powers"), py::arg("channel"), py::arg("symbols"), py::arg("seed"));

    // Scenario-level entry points take and return JSON text.
    m.def(
        "solve",
        [](const std::string& scenario) {
            return cli::to_json(cli::cmd_solve(cli::parse_scenario_text(scenario))).dump();
        },
        py::arg("scenario"));
    m.def(
        "verify",
        [](const std::string& scenario, unsigned threads) {
            const auto config = cli::parse_scenario_text(scenario);
            py::gil_scoped_release release;
            return cli::to_json(cli::cmd_verify(config, threads)).dump();
        },
        py::arg("scenario"), py::arg("threads") = 1);
    m.def(
        "sweep_csv",
        [](const std::string& scenario, unsigned threads) {
            const auto config = cli::parse_scenario_text(scenario);
            py::gil_scoped_release release;
            std::ostringstream out;
            cli::cmd_sweep(config, out, threads);
            return out.str();
        },
        py::arg("scenario"), py::arg("threads") = 1);
}
