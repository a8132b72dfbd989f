// SPDX-License-Identifier: Apache-2.0
//
// pnmimo: massive MIMO downlink simulation under oscillator phase noise
// Copyright (C) 2026 The pnmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "pnmimo/analytics.hpp"
#include "pnmimo/config_file.hpp"
#include "pnmimo/link_sim.hpp"
#include "pnmimo/phase_noise.hpp"
#include "pnmimo/presets.hpp"
#include "pnmimo/rates.hpp"
#include "pnmimo/results_io.hpp"
#include "pnmimo/rmt.hpp"

namespace py = pybind11;
using namespace pnmimo;

namespace {

std::string table_csv(const sim::ResultTable &t)
{
    std::ostringstream os;
    sim::write_csv(os, t);
    return os.str();
}

sim::SweepPlan with_overrides(sim::SweepPlan plan, std::optional<std::uint64_t> seed,
                              std::optional<std::size_t> realizations, std::optional<unsigned> parallelism)
{
    sim::apply_overrides(plan, {seed, realizations, parallelism});
    plan.validate();
    return plan;
}

} // namespace

PYBIND11_MODULE(_pnmimo, m)
{
    m.doc() = "Massive MIMO downlink under oscillator phase noise";
    m.attr("__version__") = "0.1.0";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<PrecoderKind>(m, "PrecoderKind")
        .value("rzf", PrecoderKind::rzf)
        .value("zf", PrecoderKind::zf)
        .value("mf", PrecoderKind::mf);
    py::enum_<SnrReference>(m, "SnrReference").value("per_ue", SnrReference::per_ue).value("total", SnrReference::total);
    py::enum_<AlphaMode>(m, "AlphaMode")
        .value("optimal", AlphaMode::optimal)
        .value("fixed", AlphaMode::fixed)
        .value("zf", AlphaMode::zf)
        .value("mf", AlphaMode::mf);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("M", &SystemConfig::M)
        .def_readwrite("K", &SystemConfig::K)
        .def_readwrite("M_osc", &SystemConfig::M_osc)
        .def_readwrite("q0", &SystemConfig::q0)
        .def_readwrite("sigma_deg_bs", &SystemConfig::sigma_deg_bs)
        .def_readwrite("sigma_deg_ue", &SystemConfig::sigma_deg_ue)
        .def_readwrite("tau", &SystemConfig::tau)
        .def_readwrite("T_c", &SystemConfig::T_c)
        .def_readwrite("snr_db", &SystemConfig::snr_db)
        .def_readwrite("snr_reference", &SystemConfig::snr_reference)
        .def_readwrite("sigma_w2", &SystemConfig::sigma_w2)
        .def_readwrite("powers", &SystemConfig::powers)
        .def_readwrite("alpha_mode", &SystemConfig::alpha_mode)
        .def_readwrite("alpha", &SystemConfig::alpha)
        .def_readwrite("n_realizations", &SystemConfig::n_realizations)
        .def_readwrite("master_seed", &SystemConfig::master_seed)
        .def_readwrite("parallelism", &SystemConfig::parallelism)
        .def_readwrite("condition_cap", &SystemConfig::condition_cap)
        .def("validate", &SystemConfig::validate)
        .def_property_readonly("beta", &SystemConfig::beta)
        .def_property_readonly("oscillators", &SystemConfig::oscillators)
        .def_property_readonly("noise_variance", &SystemConfig::noise_variance)
        .def_property_readonly("e_tpn2", &SystemConfig::e_tpn2)
        .def("set", &sim::set_config_key, py::arg("key"), py::arg("value"));

    py::class_<analytics::SinrPrediction>(m, "SinrPrediction")
        .def_readonly("sinr", &analytics::SinrPrediction::sinr)
        .def_readonly("kind", &analytics::SinrPrediction::kind)
        .def_readonly("q_eff", &analytics::SinrPrediction::q_eff)
        .def_readonly("alpha", &analytics::SinrPrediction::alpha)
        .def_property_readonly("m", [](const analytics::SinrPrediction &p) { return p.equivalents.m; })
        .def_property_readonly("t", [](const analytics::SinrPrediction &p) { return p.equivalents.t; })
        .def_property_readonly("t2", [](const analytics::SinrPrediction &p) { return p.equivalents.t2; })
        .def_property_readonly("xi", [](const analytics::SinrPrediction &p) { return p.equivalents.xi; });

    m.def("predict", &analytics::predict, py::arg("config"), py::arg("kind"), py::arg("k") = 0);
    m.def("sinr_rzf", &analytics::sinr_rzf, py::arg("config"), py::arg("alpha"), py::arg("k") = 0);
    m.def("sinr_zf", &analytics::sinr_zf, py::arg("config"), py::arg("k") = 0);
    m.def("sinr_mf", &analytics::sinr_mf, py::arg("config"), py::arg("k") = 0);
    m.def("sinr_mf_finite_users", &analytics::sinr_mf_finite_users, py::arg("config"), py::arg("k") = 0);
    m.def("optimal_alpha", &analytics::optimal_alpha, py::arg("config"));
    m.def("numeric_argmax_alpha", &analytics::numeric_argmax_alpha, py::arg("config"), py::arg("k") = 0,
          py::arg("lo") = 1e-6, py::arg("hi") = 1e4);

    py::class_<linksim::SinrEstimate>(m, "SinrEstimate")
        .def_readonly("sinr", &linksim::SinrEstimate::sinr)
        .def_readonly("mean_sig_power", &linksim::SinrEstimate::mean_sig_power)
        .def_readonly("mean_int_power", &linksim::SinrEstimate::mean_int_power)
        .def_readonly("noise_var", &linksim::SinrEstimate::noise_var)
        .def_readonly("n_realizations", &linksim::SinrEstimate::n_realizations)
        .def_readonly("n_rejected", &linksim::SinrEstimate::n_rejected)
        .def_readonly("std_error", &linksim::SinrEstimate::std_error);
    m.def("empirical_sinr", &linksim::empirical_sinr, py::arg("config"), py::arg("kind"), py::arg("ue") = py::none(),
          py::call_guard<py::gil_scoped_release>());

    m.def("stieltjes_mp", &rmt::stieltjes_mp, py::arg("alpha"), py::arg("beta"));
    m.def("stieltjes_mp_derivative", &rmt::stieltjes_mp_derivative, py::arg("alpha"), py::arg("beta"));
    m.def("t_pn_second_moment", &phase_noise::t_pn_second_moment, py::arg("M_osc"), py::arg("tau"),
          py::arg("sigma2_bs"));
    m.def("degrees_to_variance", &phase_noise::degrees_to_variance, py::arg("sigma_deg"));

    py::class_<rates::RateReport>(m, "RateReport")
        .def_readonly("rate_awgn_bound", &rates::RateReport::rate_awgn_bound)
        .def_readonly("rate_lapidoth", &rates::RateReport::rate_lapidoth)
        .def_readonly("rate_min", &rates::RateReport::rate_min)
        .def_readonly("rate_ergodic", &rates::RateReport::rate_ergodic)
        .def_readonly("delta_pn", &rates::RateReport::delta_pn);
    m.def("rate_awgn_bound", &rates::rate_awgn_bound, py::arg("sinr"));
    m.def("rate_lapidoth", &rates::rate_lapidoth, py::arg("sinr"), py::arg("tau"), py::arg("sigma2_ue"),
          py::arg("sigma2_bs"), py::arg("M_osc"));
    m.def("rate_report", &rates::rate_report, py::arg("sinr"), py::arg("tau"), py::arg("sigma2_ue"),
          py::arg("sigma2_bs"), py::arg("M_osc"));

    m.def("list_presets", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto &p : sim::list_presets())
            out.emplace_back(p.name, p.description);
        return out;
    });
    m.def(
        "run_preset",
        [](const std::string &name, std::optional<std::uint64_t> seed, std::optional<std::size_t> realizations,
           std::optional<unsigned> parallelism) {
            const auto plan = with_overrides(sim::find_preset(name).build(), seed, realizations, parallelism);
            py::gil_scoped_release release;
            return table_csv(sim::run_plan(plan));
        },
        py::arg("name"), py::arg("seed") = py::none(), py::arg("realizations") = py::none(),
        py::arg("parallelism") = py::none(), "Run a built-in scenario and return the results as CSV text.");
    m.def(
        "run_config",
        [](const std::string &text, std::optional<std::uint64_t> seed, std::optional<std::size_t> realizations,
           std::optional<unsigned> parallelism) {
            std::istringstream is(text);
            const auto plan = with_overrides(sim::parse_plan(is, "<string>"), seed, realizations, parallelism);
            py::gil_scoped_release release;
            return table_csv(sim::run_plan(plan));
        },
        py::arg("text"), py::arg("seed") = py::none(), py::arg("realizations") = py::none(),
        py::arg("parallelism") = py::none(), "Run a sweep described in config-file syntax and return CSV text.");
}
