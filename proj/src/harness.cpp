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

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <locale>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace cslacc
{
    namespace
    {
        constexpr std::uint64_t kOperatorTag = 0xC41F;

        std::string trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return std::string(s.substr(b, e - b + 1));
        }

        std::vector<std::string> split_list(std::string_view s)
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            while (start <= s.size())
            {
                const auto comma = s.find(',', start);
                const auto piece = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
                if (!piece.empty())
                    out.push_back(piece);
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            return out;
        }

        double to_double(const std::string &key, std::string_view text)
        {
            const std::string t = trim(text);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
                throw Error(ErrorCode::InvalidConfig, "'" + key + "' expects a number, got '" + t + "'");
            return v;
        }

        std::uint64_t to_unsigned(const std::string &key, std::string_view text)
        {
            const std::string t = trim(text);
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
                throw Error(ErrorCode::InvalidConfig, "'" + key + "' expects a non-negative integer, got '" + t + "'");
            return v;
        }

        std::size_t to_size(const std::string &key, std::string_view text)
        {
            return static_cast<std::size_t>(to_unsigned(key, text));
        }

        ScenarioConfig preset_base(Preset preset)
        {
            ScenarioConfig base;
            base.antennas = 6;
            base.pu_count = 3;
            base.segments = 100;
            base.rho = {0.6, 0.0};
            switch (preset)
            {
            case Preset::fig5_pd_vs_pu_count:
                base.nyquist_samples = 500;
                base.sub_samples = 100;
                base.snr_db = -18.0;
                break;
            case Preset::fig6_pd_vs_snr:
                base.nyquist_samples = 200;
                base.sub_samples = 100;
                base.snr_db = 0.0;
                break;
            default:
                base.nyquist_samples = 300;
                base.sub_samples = 60;
                base.snr_db = -16.0;
                break;
            }
            return base;
        }

        std::string point_label(std::string_view name, double value)
        {
            return std::string(name) + "=" + format_number(value);
        }

        void set_scenario_key(ScenarioConfig &cfg, const std::string &key, const std::string &value,
                              std::optional<double> &compression, double &rho_abs, double &rho_phase)
        {
            const std::string name = key.substr(key.find('.') + 1);
            if (name == "antennas")
                cfg.antennas = to_size(key, value);
            else if (name == "pu_count")
                cfg.pu_count = to_size(key, value);
            else if (name == "bandwidth_hz")
                cfg.bandwidth_hz = to_double(key, value);
            else if (name == "pu_bandwidth_hz")
                cfg.pu_bandwidth_hz = to_double(key, value);
            else if (name == "nyquist_samples")
                cfg.nyquist_samples = to_size(key, value);
            else if (name == "sub_samples")
                cfg.sub_samples = to_size(key, value);
            else if (name == "compression_ratio")
                compression = to_double(key, value);
            else if (name == "segments")
                cfg.segments = to_size(key, value);
            else if (name == "rho_abs")
                rho_abs = to_double(key, value);
            else if (name == "rho_phase")
                rho_phase = to_double(key, value);
            else if (name == "snr_db")
                cfg.snr_db = to_double(key, value);
            else if (name == "tx_powers")
            {
                cfg.tx_powers.clear();
                for (const auto &p : split_list(value))
                    cfg.tx_powers.push_back(to_double(key, p));
            }
            else
                throw Error(ErrorCode::InvalidConfig, "unknown configuration key '" + key + "'");
        }

        std::size_t sub_samples_for_ratio(std::size_t q, double ratio)
        {
            const double p = double(q) / ratio;
            const double rounded = std::round(p);
            if (rounded < 1.0 || std::abs(p - rounded) > 1e-9 * rounded)
                throw Error(ErrorCode::IndivisibleRatio, "compression ratio " + format_number(ratio) +
                                                             " does not divide Q = " + std::to_string(q));
            return static_cast<std::size_t>(rounded);
        }
    }

    std::string_view to_string(Preset preset) noexcept
    {
        switch (preset)
        {
        case Preset::fig2_gain_vs_rho:
            return "fig2_gain_vs_rho";
        case Preset::fig3_gain_vs_antennas:
            return "fig3_gain_vs_antennas";
        case Preset::fig4_pd_vs_compression:
            return "fig4_pd_vs_compression";
        case Preset::fig5_pd_vs_pu_count:
            return "fig5_pd_vs_pu_count";
        case Preset::fig6_pd_vs_snr:
            return "fig6_pd_vs_snr";
        case Preset::custom:
            return "custom";
        }
        return "custom";
    }

    Preset parse_preset(std::string_view text)
    {
        for (Preset p : {Preset::fig2_gain_vs_rho, Preset::fig3_gain_vs_antennas, Preset::fig4_pd_vs_compression,
                         Preset::fig5_pd_vs_pu_count, Preset::fig6_pd_vs_snr, Preset::custom})
        {
            const std::string_view full = to_string(p);
            if (text == full || (text.size() == 4 && full.substr(0, 4) == text))
                return p;
        }
        throw Error(ErrorCode::InvalidConfig, "unknown preset '" + std::string(text) + "'");
    }

    bool is_theory_preset(Preset preset) noexcept
    {
        return preset == Preset::fig2_gain_vs_rho || preset == Preset::fig3_gain_vs_antennas;
    }

    void ExperimentPlan::validate() const
    {
        if (trials < 1)
            throw Error(ErrorCode::InvalidConfig, "trials must be at least 1");
        if (calibration_trials < 1)
            throw Error(ErrorCode::InvalidConfig, "calibration_trials must be at least 1");
        if (sweep.empty())
            throw Error(ErrorCode::InvalidConfig, "sweep must contain at least one point");
        if (!(target_pf >= 0.0 && target_pf < 1.0))
            throw Error(ErrorCode::InvalidConfig, "target_pf must lie in [0, 1)");
        if (epsilon && *epsilon < 0.0)
            throw Error(ErrorCode::InvalidConfig, "epsilon must be non-negative");
        for (const auto &pt : sweep)
        {
            try
            {
                pt.scenario.validate();
                if (sub_i < 1 || sub_i > sub_j || sub_j > pt.scenario.antennas)
                    throw Error(ErrorCode::IndexOutOfRange, "sub-array must satisfy 1 <= i <= j <= M");
                const auto &algs = pt.algorithms.empty() ? algorithms : pt.algorithms;
                if (algs.empty())
                    throw Error(ErrorCode::InvalidConfig, "no algorithms selected");
                for (const auto &a : algs)
                {
                    if (a.kind == AlgorithmKind::mcslacc || a.kind == AlgorithmKind::vcslacc)
                        SubArraySpec{sub_i, sub_j, a.r, pt.scenario.antennas}.validate();
                    if (a.kind == AlgorithmKind::mcslsacc && sub_i == 1 && sub_j == pt.scenario.antennas)
                        throw Error(ErrorCode::NoShiftAvailable, "mcslsacc needs a non-zero shift");
                }
            }
            catch (const Error &e)
            {
                throw Error(e.code(), "sweep point '" + pt.label + "': " + e.what());
            }
        }
    }

    std::vector<Algorithm> default_algorithms()
    {
        return {{AlgorithmKind::vcslacc, 0}, {AlgorithmKind::vcslacc, 1}, {AlgorithmKind::vcslacc, 2},
                {AlgorithmKind::mcslsacc, 0}, {AlgorithmKind::mcslacc, 0}, {AlgorithmKind::mcslacc, 1},
                {AlgorithmKind::tmacsl, 0}, {AlgorithmKind::tsacsl, 0}};
    }

    ExperimentPlan make_preset(Preset preset, const ScenarioConfig &base, std::size_t trials)
    {
        ExperimentPlan plan;
        plan.preset = preset;
        plan.base = base;
        plan.trials = trials;
        plan.algorithms = default_algorithms();

        switch (preset)
        {
        case Preset::fig4_pd_vs_compression:
            // Integer ratios in 3..10 that divide Q; the front end needs P | Q
            for (int ratio = 3; ratio <= 10; ++ratio)
            {
                if (base.nyquist_samples % static_cast<std::size_t>(ratio) != 0)
                    continue;
                SweepPoint pt{point_label("compression_ratio", ratio), base, {}};
                pt.scenario.sub_samples = base.nyquist_samples / static_cast<std::size_t>(ratio);
                plan.sweep.push_back(std::move(pt));
            }
            break;
        case Preset::fig5_pd_vs_pu_count:
            for (std::size_t k = 4; k <= 32; k += 4)
            {
                SweepPoint pt{point_label("pu_count", double(k)), base, {}};
                pt.scenario.pu_count = k;
                pt.scenario.tx_powers.clear();
                plan.sweep.push_back(std::move(pt));
            }
            break;
        case Preset::fig6_pd_vs_snr:
        {
            const std::vector<Algorithm> matrix_form = {{AlgorithmKind::mcslsacc, 0}, {AlgorithmKind::mcslacc, 0},
                                                        {AlgorithmKind::mcslacc, 1}, {AlgorithmKind::tmacsl, 0},
                                                        {AlgorithmKind::tsacsl, 0}};
            for (int st = 1; st <= 2; ++st)
                for (int snr = -20; snr <= 0; snr += 2)
                {
                    SweepPoint pt{"st=" + std::to_string(st) + ";" + point_label("snr_db", snr), base, {}};
                    pt.scenario.snr_db = snr;
                    pt.scenario.nyquist_samples = base.nyquist_samples * static_cast<std::size_t>(st);
                    pt.scenario.sub_samples = base.sub_samples * static_cast<std::size_t>(st);
                    if (st == 2)
                        pt.algorithms = matrix_form;
                    plan.sweep.push_back(std::move(pt));
                }
            break;
        }
        case Preset::custom:
            plan.sweep.push_back({"base", base, {}});
            break;
        case Preset::fig2_gain_vs_rho:
        case Preset::fig3_gain_vs_antennas:
            throw Error(ErrorCode::InvalidConfig, "theory presets have no Monte Carlo plan; use the theory sweeps");
        }
        return plan;
    }

    ExperimentPlan make_preset(Preset preset, std::size_t trials)
    {
        return make_preset(preset, preset_base(preset), trials);
    }

    std::size_t sparsity_cap(const ExperimentPlan &plan, const ScenarioConfig &cfg)
    {
        const std::size_t auto_cap = std::max<std::size_t>(cfg.pu_count, 1) * cfg.bins_per_band();
        return std::max<std::size_t>(1, std::min(plan.max_sparsity.value_or(auto_cap), cfg.sub_samples));
    }

    std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t point, std::size_t trial, bool calibration)
    {
        return mix_seed(base_seed, {point, calibration ? 1u : 0u, trial});
    }

    MeasurementOperator point_operator(const ExperimentPlan &plan, std::size_t point_index)
    {
        const ScenarioConfig &cfg = plan.sweep.at(point_index).scenario;
        SeededRng rng(mix_seed(plan.seed, {point_index, kOperatorTag}));
        return build_random_demodulator(cfg.sub_samples, cfg.nyquist_samples, rng);
    }

    TrialOutcome run_trial(const ExperimentPlan &plan, const ScenarioConfig &cfg, const MeasurementOperator &op,
                           std::span<const Algorithm> algorithms, SeededRng &rng, bool pu_present)
    {
        ScenarioConfig signal_cfg = cfg;
        if (!pu_present)
        {
            signal_cfg.pu_count = 0;
            signal_cfg.tx_powers.clear();
        }
        const double sigma2 = cfg.noise_variance();
        const std::size_t n_bands = cfg.band_count();

        std::vector<double> powers(signal_cfg.pu_count);
        for (std::size_t k = 0; k < powers.size(); ++k)
            powers[k] = signal_cfg.tx_power(k);

        const ComplexMatrix q_sqrt = hermitian_sqrt(build_exponential_correlation(cfg.antennas, cfg.rho).matrix);
        const ChannelDraw channel = draw_channel(q_sqrt, powers, rng);
        const PuSignals signals = generate_pu_signals(signal_cfg, rng);

        SubSampleSet set;
        set.segments.reserve(cfg.segments);
        for (const auto &s : signals.segments)
        {
            const NyquistFrame frame = synthesize_frame(channel.g, s, signals.support, sigma2, rng);
            set.segments.push_back(subsample(op, frame.x_bar));
        }

        TrialOutcome out;
        out.support = signals.support;
        const std::size_t cap = sparsity_cap(plan, cfg);
        for (const Algorithm &alg : algorithms)
        {
            const CslOutput csl = run_csl(alg, set, plan.sub_i, plan.sub_j, plan.rank_rule);
            AlgorithmOutcome res;
            res.algorithm = alg;
            res.rank = csl.subspace.s;
            res.leading_singular_values = csl.subspace.lambda_s;
            if (csl.subspace.s == 0)
            {
                res.band_stats.assign(n_bands, 0.0);
            }
            else
            {
                res.epsilon = plan.epsilon.value_or(noise_floor_epsilon(csl.subspace));
                const RecoveryResult rec = somp(csl.samples.data, op.a, {res.epsilon, cap, n_bands});
                res.band_stats = band_statistics(rec.z_hat, n_bands);
                res.recovered_bands = rec.support_bands;
            }
            out.algorithms.push_back(std::move(res));
        }
        return out;
    }

    void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)> &body)
    {
        if (workers <= 1 || n <= 1)
        {
            for (std::size_t k = 0; k < n; ++k)
                body(k);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        {
            std::vector<std::jthread> pool;
            const std::size_t count = std::min(workers, n);
            pool.reserve(count);
            for (std::size_t w = 0; w < count; ++w)
                pool.emplace_back([&]
                {
                    for (std::size_t k = next++; k < n && !failed; k = next++)
                    {
                        try
                        {
                            body(k);
                        }
                        catch (...)
                        {
                            std::lock_guard lock(error_mutex);
                            if (!first_error)
                                first_error = std::current_exception();
                            failed = true;
                        }
                    }
                });
        }
        if (first_error)
            std::rethrow_exception(first_error);
    }

    std::size_t workers_from_env(std::size_t fallback)
    {
        const char *env = std::getenv("CSLACC_WORKERS");
        if (env == nullptr || *env == '\0')
            return fallback;
        const std::size_t w = to_size("CSLACC_WORKERS", env);
        return w == 0 ? fallback : w;
    }

    std::vector<ResultRow> run_plan(const ExperimentPlan &plan, std::size_t workers)
    {
        plan.validate();
        std::vector<ResultRow> rows;

        for (std::size_t pi = 0; pi < plan.sweep.size(); ++pi)
        {
            const SweepPoint &pt = plan.sweep[pi];
            const auto &algs = pt.algorithms.empty() ? plan.algorithms : pt.algorithms;
            const auto t0 = std::chrono::steady_clock::now();

            try
            {
                const MeasurementOperator op = point_operator(plan, pi);

                // Threshold per algorithm from PU-free realizations at the same noise level
                std::vector<TrialOutcome> calib(plan.calibration_trials);
                parallel_for(calib.size(), workers, [&](std::size_t t)
                {
                    SeededRng rng(trial_seed(plan.seed, pi, t, true));
                    calib[t] = run_trial(plan, pt.scenario, op, algs, rng, false);
                });

                std::vector<double> gamma(algs.size());
                for (std::size_t a = 0; a < algs.size(); ++a)
                {
                    std::vector<double> pooled;
                    for (const auto &c : calib)
                        pooled.insert(pooled.end(), c.algorithms[a].band_stats.begin(), c.algorithms[a].band_stats.end());
                    gamma[a] = calibrate_threshold(std::move(pooled), plan.target_pf);
                }

                std::vector<TrialOutcome> trials(plan.trials);
                parallel_for(trials.size(), workers, [&](std::size_t t)
                {
                    SeededRng rng(trial_seed(plan.seed, pi, t, false));
                    trials[t] = run_trial(plan, pt.scenario, op, algs, rng, true);
                });

                const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                for (std::size_t a = 0; a < algs.size(); ++a)
                {
                    DetectionTally tally;
                    for (const auto &t : trials)
                        tally.add(energy_detect(t.algorithms[a].band_stats, gamma[a]), t.support);
                    const DetectionMetrics m = tally.metrics(gamma[a]);

                    ResultRow row;
                    row.point = pi;
                    row.label = pt.label;
                    row.antennas = pt.scenario.antennas;
                    row.pu_count = pt.scenario.pu_count;
                    row.sub_samples = pt.scenario.sub_samples;
                    row.nyquist_samples = pt.scenario.nyquist_samples;
                    row.segments = pt.scenario.segments;
                    row.compression_ratio = double(pt.scenario.nyquist_samples) / double(pt.scenario.sub_samples);
                    row.rho_abs = std::abs(pt.scenario.rho);
                    row.snr_db = pt.scenario.snr_db;
                    row.algorithm = algs[a].name();
                    row.pd = m.pd;
                    row.pf = m.pf;
                    row.pd_stderr = m.pd_stderr;
                    row.pf_stderr = m.pf_stderr;
                    row.threshold = m.threshold;
                    row.trials = m.trials;
                    row.wall_time = elapsed;
                    rows.push_back(std::move(row));
                }
            }
            catch (const Error &e)
            {
                throw Error(e.code(), "sweep point '" + pt.label + "': " + e.what());
            }
        }
        return rows;
    }

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return {};
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os << std::setprecision(6) << value;
        return os.str();
    }

    void write_csv(std::ostream &os, std::span<const ResultRow> rows, bool with_timing)
    {
        os << "point,label,M,K,P,Q,L,compression_ratio,rho_abs,snr_db,algorithm,pd,pf,pd_stderr,pf_stderr,threshold,trials";
        if (with_timing)
            os << ",wall_time_s";
        os << '\n';
        for (const auto &r : rows)
        {
            os << r.point << ',' << r.label << ',' << r.antennas << ',' << r.pu_count << ',' << r.sub_samples << ','
               << r.nyquist_samples << ',' << r.segments << ',' << format_number(r.compression_ratio) << ','
               << format_number(r.rho_abs) << ',' << format_number(r.snr_db) << ',' << r.algorithm << ','
               << format_number(r.pd) << ',' << format_number(r.pf) << ',' << format_number(r.pd_stderr) << ','
               << format_number(r.pf_stderr) << ',' << format_number(r.threshold) << ',' << r.trials;
            if (with_timing)
                os << ',' << format_number(r.wall_time);
            os << '\n';
        }
    }

    void emit_csv(std::span<const ResultRow> rows, const std::filesystem::path &path, bool with_timing)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
        write_csv(f, rows, with_timing);
        if (!f)
            throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
    }

    void write_theory_csv(std::ostream &os, std::span<const AmplificationReport> rows)
    {
        os << "kind,M,i,j,r,rho_abs,rho_phase,formula,oracle,lower,upper,passed\n";
        for (const auto &r : rows)
        {
            os << to_string(r.kind) << ',' << r.m << ',' << r.i << ',' << r.j << ',';
            if (r.kind != TheoryQuantity::gain_mcslsacc)
                os << r.r;
            os << ',' << format_number(std::abs(r.rho)) << ',' << format_number(std::arg(r.rho)) << ','
               << format_number(r.formula_value) << ',' << format_number(r.oracle_value) << ','
               << format_number(r.lower_bound) << ',' << format_number(r.upper_bound) << ','
               << (r.passed ? "true" : "false") << '\n';
        }
    }

    void emit_theory_csv(std::span<const AmplificationReport> rows, const std::filesystem::path &path)
    {
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
        write_theory_csv(f, rows);
        if (!f)
            throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
    }

    ConfigMap read_config(const std::filesystem::path &path)
    {
        std::ifstream f(path);
        if (!f)
            throw Error(ErrorCode::IoError, "cannot read configuration '" + path.string() + "'");
        boost::property_tree::ptree tree;
        try
        {
            boost::property_tree::ini_parser::read_ini(f, tree);
        }
        catch (const boost::property_tree::ini_parser_error &e)
        {
            throw Error(ErrorCode::InvalidConfig, std::string("configuration parse error: ") + e.what());
        }

        ConfigMap out;
        for (const auto &[section, entries] : tree)
        {
            if (entries.empty())
                throw Error(ErrorCode::InvalidConfig, "key '" + section + "' must live inside a section");
            for (const auto &[key, value] : entries)
                out[section + "." + key] = value.get_value<std::string>();
        }
        return out;
    }

    ConfigMap parse_overrides(std::span<const std::string> assignments)
    {
        ConfigMap out;
        for (const auto &a : assignments)
        {
            const auto eq = a.find('=');
            const std::string key = trim(std::string_view(a).substr(0, eq));
            if (eq == std::string::npos || key.find('.') == std::string::npos)
                throw Error(ErrorCode::InvalidConfig, "override '" + a + "' must look like section.key=value");
            out[key] = trim(std::string_view(a).substr(eq + 1));
        }
        return out;
    }

    ExperimentPlan plan_from_config(const ConfigMap &config)
    {
        auto get = [&](const std::string &key) -> std::optional<std::string>
        {
            const auto it = config.find(key);
            return it == config.end() ? std::nullopt : std::optional<std::string>(it->second);
        };

        const Preset preset = parse_preset(get("plan.preset").value_or("custom"));
        if (is_theory_preset(preset))
            throw Error(ErrorCode::InvalidConfig, "theory presets are not Monte Carlo plans");

        ScenarioConfig base = preset_base(preset);
        std::optional<double> compression;
        double rho_abs = std::abs(base.rho), rho_phase = std::arg(base.rho);
        for (const auto &[key, value] : config)
            if (key.rfind("scenario.", 0) == 0)
                set_scenario_key(base, key, value, compression, rho_abs, rho_phase);
        base.rho = std::polar(rho_abs, rho_phase);
        if (compression)
            base.sub_samples = sub_samples_for_ratio(base.nyquist_samples, *compression);
        if (!base.tx_powers.empty() && base.tx_powers.size() != base.pu_count)
            throw Error(ErrorCode::InvalidConfig, "scenario.tx_powers must list one power per PU");

        const std::size_t trials = get("plan.trials") ? to_size("plan.trials", *get("plan.trials")) : 500;
        ExperimentPlan plan = make_preset(preset, base, trials);

        for (const auto &[key, value] : config)
        {
            if (key.rfind("scenario.", 0) == 0)
                continue;
            if (key == "plan.preset" || key == "plan.trials")
                continue;
            if (key == "plan.seed")
                plan.seed = to_unsigned(key, value);
            else if (key == "plan.sub_array_start")
                plan.sub_i = to_size(key, value);
            else if (key == "plan.sub_array_end")
                plan.sub_j = to_size(key, value);
            else if (key == "plan.algorithms")
            {
                plan.algorithms.clear();
                for (const auto &name : split_list(value))
                    plan.algorithms.push_back(Algorithm::parse(name));
                for (auto &pt : plan.sweep)
                    pt.algorithms.clear();
            }
            else if (key == "plan.sweep_parameter" || key == "plan.sweep_values")
                continue;
            else if (key == "recovery.epsilon")
                plan.epsilon = trim(value) == "auto" ? std::nullopt : std::optional<double>(to_double(key, value));
            else if (key == "recovery.max_sparsity")
                plan.max_sparsity = trim(value) == "auto" ? std::nullopt : std::optional<std::size_t>(to_size(key, value));
            else if (key == "recovery.target_pf")
                plan.target_pf = to_double(key, value);
            else if (key == "recovery.calibration_trials")
                plan.calibration_trials = to_size(key, value);
            else if (key == "recovery.rank_rule")
            {
                const std::string v = trim(value);
                if (v == "gap")
                    plan.rank_rule.kind = RankRule::Kind::largest_gap;
                else if (v == "energy")
                    plan.rank_rule.kind = RankRule::Kind::energy;
                else
                    throw Error(ErrorCode::InvalidConfig, "recovery.rank_rule must be 'gap' or 'energy'");
            }
            else if (key == "recovery.rank_guard")
                plan.rank_rule.guard = to_double(key, value);
            else if (key == "recovery.energy_fraction")
                plan.rank_rule.energy_fraction = to_double(key, value);
            else
                throw Error(ErrorCode::InvalidConfig, "unknown configuration key '" + key + "'");
        }

        // A custom plan may sweep one scenario parameter
        const auto sweep_param = get("plan.sweep_parameter");
        const auto sweep_values = get("plan.sweep_values");
        if (sweep_param.has_value() != sweep_values.has_value())
            throw Error(ErrorCode::InvalidConfig, "plan.sweep_parameter and plan.sweep_values go together");
        if (sweep_param)
        {
            if (preset != Preset::custom)
                throw Error(ErrorCode::InvalidConfig, "only the custom preset accepts an explicit sweep");
            const std::string param = trim(*sweep_param);
            plan.sweep.clear();
            for (const auto &text : split_list(*sweep_values))
            {
                const double v = to_double("plan.sweep_values", text);
                SweepPoint pt{point_label(param, v), base, {}};
                if (param == "snr_db")
                    pt.scenario.snr_db = v;
                else if (param == "compression_ratio")
                    pt.scenario.sub_samples = sub_samples_for_ratio(base.nyquist_samples, v);
                else if (param == "sub_samples")
                    pt.scenario.sub_samples = to_size("plan.sweep_values", text);
                else if (param == "pu_count")
                {
                    pt.scenario.pu_count = to_size("plan.sweep_values", text);
                    pt.scenario.tx_powers.clear();
                }
                else if (param == "segments")
                    pt.scenario.segments = to_size("plan.sweep_values", text);
                else if (param == "rho_abs")
                    pt.scenario.rho = std::polar(v, rho_phase);
                else
                    throw Error(ErrorCode::InvalidConfig, "cannot sweep '" + param + "'");
                plan.sweep.push_back(std::move(pt));
            }
        }
        return plan;
    }
}
