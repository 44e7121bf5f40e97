// SPDX-License-Identifier: Apache-2.0
//
// cslacc: compressive subspace learning with antenna cross-correlations
// Copyright (C) 2026 The cslacc authors
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

// Python bindings

#include "cslacc/harness.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cslacc;

namespace
{
    py::dict row_to_dict(const ResultRow &r)
    {
        py::dict d;
        d["point"] = r.point;
        d["label"] = r.label;
        d["M"] = r.antennas;
        d["K"] = r.pu_count;
        d["P"] = r.sub_samples;
        d["Q"] = r.nyquist_samples;
        d["L"] = r.segments;
        d["compression_ratio"] = r.compression_ratio;
        d["rho_abs"] = r.rho_abs;
        d["snr_db"] = r.snr_db;
        d["algorithm"] = r.algorithm;
        d["pd"] = r.pd;
        d["pf"] = r.pf;
        d["pd_stderr"] = r.pd_stderr;
        d["pf_stderr"] = r.pf_stderr;
        d["threshold"] = r.threshold;
        d["trials"] = r.trials;
        d["wall_time_s"] = r.wall_time;
        return d;
    }

    ExperimentPlan plan_from_args(const std::string &preset, std::optional<std::size_t> trials,
                                  std::optional<std::uint64_t> seed, const std::vector<std::string> &overrides)
    {
        ConfigMap cfg = parse_overrides(overrides);
        cfg["plan.preset"] = preset;
        if (trials)
            cfg["plan.trials"] = std::to_string(*trials);
        if (seed)
            cfg["plan.seed"] = std::to_string(*seed);
        return plan_from_config(cfg);
    }
}

PYBIND11_MODULE(_cslacc, m)
{
    m.doc() = "Compressive subspace learning with antenna cross-correlations";

    // Library errors become cslacc.Error with a `code` attribute naming the condition
    static PyObject *error_type = py::exception<Error>(m, "Error", PyExc_RuntimeError).release().ptr();
    py::register_exception_translator(
        [](std::exception_ptr p)
        {
            try
            {
                if (p)
                    std::rethrow_exception(p);
            }
            catch (const Error &e)
            {
                py::object code = py::str(std::string(to_string(e.code())));
                py::object exc = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
                exc.attr("code") = code;
                PyErr_SetObject(error_type, exc.ptr());
            }
        });

    // numerics
    m.def("hermitian_sqrt", &hermitian_sqrt, py::arg("q"));
    m.def("singular_values", &singular_values, py::arg("a"));
    m.def("kronecker", [](const ComplexMatrix &a, const ComplexMatrix &b) { return kronecker(a, b); },
          py::arg("a"), py::arg("b"));

    // scenario
    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("antennas", &ScenarioConfig::antennas)
        .def_readwrite("pu_count", &ScenarioConfig::pu_count)
        .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
        .def_readwrite("pu_bandwidth_hz", &ScenarioConfig::pu_bandwidth_hz)
        .def_readwrite("nyquist_samples", &ScenarioConfig::nyquist_samples)
        .def_readwrite("sub_samples", &ScenarioConfig::sub_samples)
        .def_readwrite("segments", &ScenarioConfig::segments)
        .def_readwrite("rho", &ScenarioConfig::rho)
        .def_readwrite("snr_db", &ScenarioConfig::snr_db)
        .def_readwrite("tx_powers", &ScenarioConfig::tx_powers)
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def("band_count", &ScenarioConfig::band_count)
        .def("noise_variance", &ScenarioConfig::noise_variance)
        .def("validate", &ScenarioConfig::validate);

    m.def("exponential_correlation",
          [](std::size_t size, Complex rho) { return build_exponential_correlation(size, rho).matrix; },
          py::arg("m"), py::arg("rho"));

    // sampler
    m.def("random_demodulator",
          [](std::size_t p, std::size_t q, std::uint64_t seed)
          {
              SeededRng rng(seed);
              const MeasurementOperator op = build_random_demodulator(p, q, rng);
              return py::make_tuple(op.omega, op.a);
          },
          py::arg("p"), py::arg("q"), py::arg("seed") = 1,
          "Returns (omega, a) where a = omega times the unitary inverse DFT");

    // theory
    m.def("gain_mcslacc", &gain_mcslacc, py::arg("i"), py::arg("j"), py::arg("r"), py::arg("rho"));
    m.def("gain_mcslsacc", &gain_mcslsacc, py::arg("i"), py::arg("j"), py::arg("m"), py::arg("rho"));
    m.def("bounds_vcslacc_r0",
          [](std::size_t i, std::size_t j, Complex rho)
          {
              const Bounds b = bounds_vcslacc_r0(i, j, rho);
              return py::make_tuple(b.lower, b.upper);
          },
          py::arg("i"), py::arg("j"), py::arg("rho"));
    m.def("bounds_vcslacc_noisefree",
          [](std::size_t i, std::size_t j, int r, Complex rho)
          {
              const Bounds b = bounds_vcslacc_noisefree(i, j, r, rho);
              return py::make_tuple(b.lower, b.upper);
          },
          py::arg("i"), py::arg("j"), py::arg("r"), py::arg("rho"));
    m.def("trace_bound_vcslacc",
          [](std::size_t i, std::size_t j, int r, Complex rho)
          {
              const TraceBound t = trace_bound_vcslacc(i, j, r, rho);
              return py::make_tuple(t.sqrt_trace_avg, t.sigma_max);
          },
          py::arg("i"), py::arg("j"), py::arg("r"), py::arg("rho"));
    m.def("correlation_block",
          [](std::size_t i, std::size_t j, int r, Complex rho, std::size_t size)
          { return correlation_block(i, j, r, rho, size).t; },
          py::arg("i"), py::arg("j"), py::arg("r"), py::arg("rho"), py::arg("m"));
    m.def("theory_csv",
          [](const std::string &sweep)
          {
              std::vector<AmplificationReport> rows;
              if (sweep == "rho")
                  rows = sweep_gain_vs_rho();
              else if (sweep == "width")
                  rows = sweep_gain_vs_width();
              else if (sweep == "grid")
                  rows = sweep_theory_grid(default_theory_grid());
              else
                  throw Error(ErrorCode::InvalidConfig, "sweep must be rho, width or grid");
              std::ostringstream os;
              write_theory_csv(os, rows);
              return os.str();
          },
          py::arg("sweep") = "rho");

    // recovery
    m.def("somp",
          [](const ComplexMatrix &y, const ComplexMatrix &a, double epsilon, std::size_t max_sparsity,
             std::size_t band_count)
          {
              const RecoveryResult r = somp(y, a, {epsilon, max_sparsity, band_count});
              return py::make_tuple(r.z_hat, r.support_bins, r.support_bands);
          },
          py::arg("y"), py::arg("a"), py::arg("epsilon") = 0.0, py::arg("max_sparsity") = 0,
          py::arg("band_count") = 1, "Returns (z_hat, support_bins, support_bands)");
    m.def("calibrate_threshold", &calibrate_threshold, py::arg("noise_statistics"), py::arg("target_pf") = 0.1);

    // harness
    m.def("algorithms", []
          {
              std::vector<std::string> names;
              for (const auto &a : default_algorithms())
                  names.push_back(a.name());
              return names;
          });
    m.def("montecarlo",
          [](const std::string &preset, std::optional<std::size_t> trials, std::optional<std::uint64_t> seed,
             std::size_t workers, const std::vector<std::string> &overrides)
          {
              const ExperimentPlan plan = plan_from_args(preset, trials, seed, overrides);
              std::vector<ResultRow> rows;
              {
                  py::gil_scoped_release release;
                  rows = run_plan(plan, workers);
              }
              py::list out;
              for (const auto &r : rows)
                  out.append(row_to_dict(r));
              return out;
          },
          py::arg("preset") = "custom", py::arg("trials") = py::none(), py::arg("seed") = py::none(),
          py::arg("workers") = 1, py::arg("overrides") = std::vector<std::string>{},
          "Runs a preset sweep; overrides are 'section.key=value' strings");
    m.def("workers_from_env", &workers_from_env, py::arg("fallback") = 1);
    m.def("verify",
          [](std::size_t workers)
          {
              std::vector<PropertyCheck> checks;
              {
                  py::gil_scoped_release release;
                  checks = run_property_suite(workers);
              }
              py::list out;
              for (const auto &c : checks)
                  out.append(py::make_tuple(c.name, c.passed, c.detail));
              return out;
          },
          py::arg("workers") = 1);
}
