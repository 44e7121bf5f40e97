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

#include "cslacc/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace
{
    using namespace cslacc;

    std::vector<AmplificationReport> theory_rows(const std::string &sweep)
    {
        if (sweep == "rho" || sweep == "fig2")
            return sweep_gain_vs_rho();
        if (sweep == "width" || sweep == "fig3")
            return sweep_gain_vs_width();
        if (sweep == "grid")
            return sweep_theory_grid(default_theory_grid());
        auto rows = sweep_gain_vs_rho();
        auto more = sweep_gain_vs_width();
        rows.insert(rows.end(), more.begin(), more.end());
        return rows;
    }

    void write_theory(const std::vector<AmplificationReport> &rows, const std::string &output)
    {
        if (output.empty() || output == "-")
            write_theory_csv(std::cout, rows);
        else
            emit_theory_csv(rows, output);
    }

    ExperimentPlan load_plan(const std::string &preset, const std::string &config_path,
                             const std::vector<std::string> &overrides)
    {
        ConfigMap config;
        if (!config_path.empty())
            config = read_config(config_path);
        if (!preset.empty())
            config["plan.preset"] = preset;
        for (const auto &[k, v] : parse_overrides(overrides))
            config[k] = v;
        return plan_from_config(config);
    }

    void print_vector(std::ostream &os, const RealVector &v)
    {
        for (Eigen::Index k = 0; k < v.size(); ++k)
            os << (k ? " " : "") << format_number(v(k));
    }

    int run_sense(const ExperimentPlan &plan, std::size_t point)
    {
        if (point >= plan.sweep.size())
            throw Error(ErrorCode::IndexOutOfRange, "sweep point " + std::to_string(point) + " does not exist");
        const SweepPoint &pt = plan.sweep[point];
        const auto &algs = pt.algorithms.empty() ? plan.algorithms : pt.algorithms;
        const MeasurementOperator op = point_operator(plan, point);
        SeededRng rng(trial_seed(plan.seed, point, 0, false));
        const TrialOutcome out = run_trial(plan, pt.scenario, op, algs, rng, true);

        const ScenarioConfig &cfg = pt.scenario;
        std::cout << "point " << pt.label << ": M=" << cfg.antennas << " K=" << cfg.pu_count << " P=" << cfg.sub_samples
                  << " Q=" << cfg.nyquist_samples << " L=" << cfg.segments << " channels=" << cfg.band_count()
                  << " snr_db=" << format_number(cfg.snr_db) << " |rho|=" << format_number(std::abs(cfg.rho)) << '\n';
        std::cout << "occupied channels:";
        for (auto b : out.support)
            std::cout << ' ' << b;
        std::cout << '\n';
        for (const auto &a : out.algorithms)
        {
            std::cout << a.algorithm.name() << ": rank " << a.rank << ", leading singular values [";
            print_vector(std::cout, a.leading_singular_values);
            std::cout << "], epsilon " << format_number(a.epsilon) << ", recovered channels [";
            for (std::size_t k = 0; k < a.recovered_bands.size(); ++k)
                std::cout << (k ? " " : "") << a.recovered_bands[k];
            std::cout << "]\n  channel statistics:";
            for (double s : a.band_stats)
                std::cout << ' ' << format_number(s);
            std::cout << '\n';
        }
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Compressive subspace learning with antenna cross-correlations"};
    app.require_subcommand(1);

    auto *theory = app.add_subcommand("theory", "Closed-form gains and bounds against their oracles, as CSV");
    std::string theory_sweep = "all", theory_output;
    theory->add_option("--sweep", theory_sweep, "rho, width, grid or all")
        ->check(CLI::IsMember({"rho", "width", "grid", "all", "fig2", "fig3"}));
    theory->add_option("-o,--output", theory_output, "CSV path, stdout when omitted");

    std::string preset, config_path, output;
    std::vector<std::string> overrides;
    std::size_t trials = 0, workers = 0, point = 0;
    std::uint64_t seed = 0;
    bool full = false, timing = false, seed_given = false;

    auto *sense = app.add_subcommand("sense", "One realization with per-algorithm diagnostics");
    sense->add_option("--preset", preset, "Preset supplying the scenario");
    sense->add_option("--config", config_path, "INI configuration file");
    sense->add_option("--set", overrides, "Override section.key=value");
    sense->add_option("--point", point, "Sweep point index");
    sense->add_option("--seed", seed, "Base seed")->each([&](const std::string &) { seed_given = true; });

    auto *mc = app.add_subcommand("montecarlo", "Pd/Pf sweeps as CSV");
    mc->add_option("--preset", preset, "fig2 .. fig6 or custom");
    mc->add_option("--config", config_path, "INI configuration file");
    mc->add_option("--set", overrides, "Override section.key=value");
    mc->add_option("--trials", trials, "Trials per sweep point");
    mc->add_flag("--full", full, "5000 trials per point");
    mc->add_option("--seed", seed, "Base seed")->each([&](const std::string &) { seed_given = true; });
    mc->add_option("--workers", workers, "Worker threads (default CSLACC_WORKERS or 1)");
    mc->add_option("-o,--output", output, "CSV path, stdout when omitted");
    mc->add_flag("--timing", timing, "Append per-point wall time");

    auto *verify = app.add_subcommand("verify", "Property suite; nonzero exit on failure");
    verify->add_option("--workers", workers, "Worker threads (default CSLACC_WORKERS or 1)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (workers == 0)
            workers = workers_from_env(1);

        if (theory->parsed())
        {
            write_theory(theory_rows(theory_sweep), theory_output);
            return 0;
        }

        if (verify->parsed())
        {
            bool all = true;
            for (const auto &c : run_property_suite(workers))
            {
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
                all = all && c.passed;
            }
            return all ? 0 : 1;
        }

        if (mc->parsed() && !preset.empty() && is_theory_preset(parse_preset(preset)))
        {
            write_theory(theory_rows(std::string(to_string(parse_preset(preset))).substr(0, 4)), output);
            return 0;
        }

        if (mc->parsed() && config_path.empty() && preset.empty() && overrides.empty())
            throw Error(ErrorCode::InvalidConfig, "montecarlo needs --preset or --config");

        ExperimentPlan plan = load_plan(preset, config_path, overrides);
        if (seed_given)
            plan.seed = seed;
        if (full)
            plan.trials = 5000;
        else if (trials > 0)
            plan.trials = trials;

        if (sense->parsed())
            return run_sense(plan, point);

        const auto rows = run_plan(plan, workers);
        if (output.empty() || output == "-")
            write_csv(std::cout, rows, timing);
        else
            emit_csv(rows, output, timing);
        return 0;
    }
    catch (const Error &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
