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

#ifndef CSLACC_HARNESS_HPP
#define CSLACC_HARNESS_HPP

#include "cslacc/csl.hpp"
#include "cslacc/sampler.hpp"
#include "cslacc/scenario.hpp"
#include "cslacc/sensing.hpp"
#include "cslacc/theory.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cslacc
{
    enum class Preset
    {
        fig2_gain_vs_rho,
        fig3_gain_vs_antennas,
        fig4_pd_vs_compression,
        fig5_pd_vs_pu_count,
        fig6_pd_vs_snr,
        custom
    };

    std::string_view to_string(Preset preset) noexcept;
    Preset parse_preset(std::string_view text); // "fig4" or "fig4_pd_vs_compression"
    bool is_theory_preset(Preset preset) noexcept;

    struct SweepPoint
    {
        std::string label;
        ScenarioConfig scenario;
        std::vector<Algorithm> algorithms; // empty means the plan's list
    };

    struct ExperimentPlan
    {
        Preset preset = Preset::custom;
        ScenarioConfig base;
        std::vector<SweepPoint> sweep;
        std::vector<Algorithm> algorithms;
        std::size_t trials = 500;
        std::size_t calibration_trials = 100; // PU-free runs per point for the threshold
        std::size_t sub_i = 2;
        std::size_t sub_j = 3;
        double target_pf = 0.1;
        RankRule rank_rule;
        std::optional<double> epsilon;           // SOMP residual-energy bound; noise-floor rule when absent
        std::optional<std::size_t> max_sparsity; // K * Q / N_b capped at P when absent
        std::uint64_t seed = 1;

        void validate() const;
    };

    struct ResultRow
    {
        std::size_t point = 0;
        std::string label;
        std::size_t antennas = 0, pu_count = 0, sub_samples = 0, nyquist_samples = 0, segments = 0;
        double compression_ratio = 0.0;
        double rho_abs = 0.0;
        double snr_db = 0.0;
        std::string algorithm;
        double pd = 0.0, pf = 0.0;
        double pd_stderr = 0.0, pf_stderr = 0.0;
        double threshold = 0.0;
        std::size_t trials = 0;
        double wall_time = 0.0; // seconds for the whole point
    };

    // Per-algorithm outcome of one realization
    struct AlgorithmOutcome
    {
        Algorithm algorithm;
        std::vector<double> band_stats;
        std::size_t rank = 0;
        RealVector leading_singular_values;
        std::vector<std::size_t> recovered_bands;
        double epsilon = 0.0;
    };

    struct TrialOutcome
    {
        std::vector<std::size_t> support;
        std::vector<AlgorithmOutcome> algorithms;
    };

    std::vector<Algorithm> default_algorithms();
    ExperimentPlan make_preset(Preset preset, const ScenarioConfig &base, std::size_t trials = 500);
    ExperimentPlan make_preset(Preset preset, std::size_t trials = 500);

    std::size_t sparsity_cap(const ExperimentPlan &plan, const ScenarioConfig &cfg);

    // One realization of the full chain; pu_present = false keeps noise at the configured level
    TrialOutcome run_trial(const ExperimentPlan &plan, const ScenarioConfig &cfg, const MeasurementOperator &op,
                           std::span<const Algorithm> algorithms, SeededRng &rng, bool pu_present);

    // Front end of a sweep point, fixed for all of its trials
    MeasurementOperator point_operator(const ExperimentPlan &plan, std::size_t point_index);
    std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t point, std::size_t trial, bool calibration);

    std::vector<ResultRow> run_plan(const ExperimentPlan &plan, std::size_t workers = 1);

    // Calls body(k) for k in [0, n) on up to `workers` threads; rethrows the first failure
    void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &body);

    // Worker count from CSLACC_WORKERS, else the fallback
    std::size_t workers_from_env(std::size_t fallback = 1);

    void write_csv(std::ostream &os, std::span<const ResultRow> rows, bool with_timing = false);
    void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path &path, bool with_timing = false);
    void write_theory_csv(std::ostream &os, std::span<const AmplificationReport> rows);
    void emit_theory_csv(std::span<const AmplificationReport> rows, const std::filesystem::path &path);

    // Formats with 6 significant digits in the classic locale; NaN becomes an empty field
    std::string format_number(double value);

    // Key/value configuration: sections [scenario], [recovery], [plan]; keys are "section.key"
    using ConfigMap = std::map<std::string, std::string>;
    ConfigMap read_config(const std::filesystem::path &path);
    ConfigMap parse_overrides(std::span<const std::string> assignments); // "section.key=value"
    ExperimentPlan plan_from_config(const ConfigMap &config);

    struct PropertyCheck
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    // Deterministic property suite behind the `verify` command
    std::vector<PropertyCheck> run_property_suite(std::size_t workers = 1);
}

#endif
