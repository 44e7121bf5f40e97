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

// Covered tests:
// - presets: sweep contents for fig4, fig5, fig6
// - configuration parsing, overrides and rejection of unknown keys
// - run_plan determinism across worker counts, CSV schema
// - parallel_for error propagation, workers_from_env

#include <catch_amalgamated.hpp>
#include "cslacc/harness.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cslacc;

namespace
{
    ExperimentPlan tiny_plan()
    {
        ConfigMap cfg = {{"plan.preset", "custom"},
                         {"plan.trials", "6"},
                         {"plan.seed", "5"},
                         {"plan.algorithms", "mcslsacc, vcslacc_r2, tsacsl"},
                         {"recovery.calibration_trials", "4"},
                         {"scenario.nyquist_samples", "100"},
                         {"scenario.sub_samples", "20"},
                         {"scenario.bandwidth_hz", "200e6"},
                         {"scenario.segments", "30"},
                         {"scenario.snr_db", "-5"},
                         {"plan.sweep_parameter", "snr_db"},
                         {"plan.sweep_values", "-5, 0"}};
        return plan_from_config(cfg);
    }
}

TEST_CASE("presets - sweep definitions")
{
    const ExperimentPlan fig4 = make_preset(Preset::fig4_pd_vs_compression);
    REQUIRE(fig4.sweep.size() == 5);
    CHECK(fig4.sweep[2].scenario.sub_samples == 60);
    CHECK(fig4.sweep[4].scenario.sub_samples == 30);
    CHECK(fig4.algorithms.size() == 8);

    const ExperimentPlan fig5 = make_preset(Preset::fig5_pd_vs_pu_count);
    REQUIRE(fig5.sweep.size() == 8);
    CHECK(fig5.sweep.back().scenario.pu_count == 32);
    CHECK(fig5.sweep.front().scenario.nyquist_samples == 500);
    CHECK(fig5.sweep.front().scenario.snr_db == -18.0);

    const ExperimentPlan fig6 = make_preset(Preset::fig6_pd_vs_snr);
    REQUIRE(fig6.sweep.size() == 22);
    CHECK(fig6.sweep[0].scenario.nyquist_samples == 200);
    CHECK(fig6.sweep[11].scenario.nyquist_samples == 400);
    CHECK(fig6.sweep[11].scenario.sub_samples == 200);
    CHECK(fig6.sweep[10].scenario.snr_db == 0.0);
    for (const auto &a : fig6.sweep[11].algorithms)
        CHECK(a.kind != AlgorithmKind::vcslacc);

    CHECK(parse_preset("fig4") == Preset::fig4_pd_vs_compression);
    CHECK(parse_preset("fig6_pd_vs_snr") == Preset::fig6_pd_vs_snr);
    CHECK(is_theory_preset(parse_preset("fig2")));
    CHECK_THROWS_AS(parse_preset("fig9"), Error);
    CHECK_THROWS_AS(make_preset(Preset::fig2_gain_vs_rho), Error);
}

TEST_CASE("configuration - file, overrides and validation")
{
    const auto path = std::filesystem::temp_directory_path() / "cslacc_test_config.ini";
    {
        std::ofstream f(path);
        f << "[scenario]\nantennas = 5\nrho_abs = 0.8\nrho_phase = 0.5\ntx_powers = 1, 2, 3\ncompression_ratio = 6\n"
          << "[recovery]\nepsilon = 0.25\nrank_rule = energy\n"
          << "[plan]\npreset = custom\ntrials = 12\nsub_array_start = 1\nsub_array_end = 2\n";
    }
    ConfigMap cfg = read_config(path);
    std::filesystem::remove(path);
    CHECK(cfg.at("scenario.antennas") == "5");

    const std::vector<std::string> sets = {"plan.seed=99", "scenario.snr_db = -3"};
    for (const auto &[k, v] : parse_overrides(sets))
        cfg[k] = v;

    const ExperimentPlan plan = plan_from_config(cfg);
    REQUIRE(plan.sweep.size() == 1);
    const ScenarioConfig &s = plan.sweep[0].scenario;
    CHECK(s.antennas == 5);
    CHECK(std::abs(std::abs(s.rho) - 0.8) < 1e-15);
    CHECK(std::abs(std::arg(s.rho) - 0.5) < 1e-15);
    CHECK(s.tx_powers.size() == 3);
    CHECK(s.sub_samples == 50);
    CHECK(s.snr_db == -3.0);
    CHECK(plan.trials == 12);
    CHECK(plan.seed == 99);
    CHECK(plan.epsilon.value() == 0.25);
    CHECK(plan.rank_rule.kind == RankRule::Kind::energy);
    CHECK(plan.sub_j == 2);

    CHECK_THROWS_AS(plan_from_config({{"scenario.antenas", "4"}}), Error);
    CHECK_THROWS_AS(plan_from_config({{"scenario.antennas", "four"}}), Error);
    CHECK_THROWS_AS(plan_from_config({{"scenario.compression_ratio", "7"}}), Error);
    CHECK_THROWS_AS(parse_overrides(std::vector<std::string>{"novalue"}), Error);
    CHECK_THROWS_AS(read_config("/nonexistent/cslacc.ini"), Error);

    ExperimentPlan bad = make_preset(Preset::custom, ScenarioConfig{}, 10);
    bad.sub_j = 7;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("run_plan - identical results for any worker count")
{
    const ExperimentPlan plan = tiny_plan();
    REQUIRE(plan.sweep.size() == 2);
    std::ostringstream one, three;
    write_csv(one, run_plan(plan, 1));
    write_csv(three, run_plan(plan, 3));
    CHECK(one.str() == three.str());

    std::istringstream lines(one.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "point,label,M,K,P,Q,L,compression_ratio,rho_abs,snr_db,algorithm,pd,pf,pd_stderr,pf_stderr,"
                    "threshold,trials");
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);)
        ++rows;
    CHECK(rows == 6);
}

TEST_CASE("run_trial - absent PUs leave an empty support")
{
    const ExperimentPlan plan = tiny_plan();
    const MeasurementOperator op = point_operator(plan, 0);
    SeededRng rng(3);
    const TrialOutcome t = run_trial(plan, plan.sweep[0].scenario, op, plan.algorithms, rng, false);
    CHECK(t.support.empty());
    REQUIRE(t.algorithms.size() == 3);
    CHECK(t.algorithms[0].band_stats.size() == 10);
}

TEST_CASE("parallel_for - coverage and error propagation")
{
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t k) { hits[k] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));

    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t k) {
        if (k == 7)
            throw Error(ErrorCode::InvalidConfig, "boom");
    }), Error);

    ::setenv("CSLACC_WORKERS", "3", 1);
    CHECK(workers_from_env(1) == 3);
    ::unsetenv("CSLACC_WORKERS");
    CHECK(workers_from_env(2) == 2);
}

TEST_CASE("format_number - locale independent, NaN empty")
{
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1234567.0) == "1.23457e+06");
    CHECK(format_number(std::nan("")).empty());
}
