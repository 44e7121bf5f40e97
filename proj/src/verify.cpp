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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace cslacc
{
    namespace
    {
        std::string describe(double value)
        {
            return format_number(value);
        }

        PropertyCheck theory_grid_check()
        {
            const auto reports = sweep_theory_grid(default_theory_grid());
            std::size_t failed = 0;
            for (const auto &r : reports)
                failed += r.passed ? 0 : 1;
            return {"closed forms against oracles", failed == 0,
                    std::to_string(reports.size() - failed) + "/" + std::to_string(reports.size()) + " points agree"};
        }

        PropertyCheck monotonicity_check()
        {
            const auto failures = check_shift_monotonicity(default_theory_grid());
            std::string detail = std::to_string(failures.size()) + " violations";
            if (!failures.empty())
            {
                const auto &f = failures.front();
                detail += "; first at M=" + std::to_string(f.m) + " i=" + std::to_string(f.i) + " j=" +
                          std::to_string(f.j) + " r=" + std::to_string(f.r) + " |rho|=" + describe(std::abs(f.rho));
            }
            return {"largest singular value decreases with shift", failures.empty(), detail};
        }

        PropertyCheck phase_invariance_check()
        {
            // Amplitudes depend on |rho| only
            using Key = std::tuple<int, std::size_t, std::size_t, std::size_t, int, long>;
            std::map<Key, double> seen;
            double worst = 0.0;
            for (const auto &r : sweep_theory_grid(default_theory_grid()))
            {
                const Key key{int(r.kind), r.m, r.i, r.j, r.r, std::lround(std::abs(r.rho) * 1e6)};
                const auto [it, fresh] = seen.emplace(key, r.oracle_value);
                if (!fresh)
                    worst = std::max(worst, std::abs(it->second - r.oracle_value) / std::max(1.0, std::abs(it->second)));
            }
            return {"invariance under the phase of rho", worst <= 1e-9, "worst relative spread " + describe(worst)};
        }

        PropertyCheck rank_one_check()
        {
            std::size_t count = 0, failed = 0;
            for (std::size_t m = 2; m <= 12; ++m)
                for (std::size_t i = 1; i <= m; ++i)
                    for (std::size_t j = i; j <= m; ++j)
                        for (int r = int(j - i) + 1; j + std::size_t(r) <= m; ++r)
                            for (double a : {0.3, 0.6, 0.9})
                            {
                                const RealVector sv = singular_values(correlation_block(i, j, r, std::polar(a, 0.4), m).t);
                                ++count;
                                if (sv.size() > 1 && sv(1) > 1e-12 * sv(0))
                                    ++failed;
                            }
            return {"rank one beyond the sub-array width", failed == 0,
                    std::to_string(count - failed) + "/" + std::to_string(count) + " blocks"};
        }

        PropertyCheck kronecker_check()
        {
            SeededRng rng(mix_seed(7, {1}));
            double worst = 0.0;
            for (int t = 0; t < 20; ++t)
            {
                const auto ra = Eigen::Index(1 + rng.uniform_index(4)), ca = Eigen::Index(1 + rng.uniform_index(4));
                const auto rb = Eigen::Index(1 + rng.uniform_index(5)), cb = Eigen::Index(1 + rng.uniform_index(5));
                const ComplexMatrix a = complex_gaussian(rng, ra, ca, 1.0);
                const ComplexMatrix b = complex_gaussian(rng, rb, cb, 1.0);
                const RealVector sa = singular_values(a), sb = singular_values(b);
                std::vector<double> expect;
                for (Eigen::Index x = 0; x < sa.size(); ++x)
                    for (Eigen::Index y = 0; y < sb.size(); ++y)
                        expect.push_back(sa(x) * sb(y));
                std::sort(expect.rbegin(), expect.rend());
                const RealVector got = singular_values(kronecker(a, b));
                for (std::size_t k = 0; k < expect.size(); ++k)
                    worst = std::max(worst, std::abs(got(Eigen::Index(k)) - expect[k]) / std::max(1.0, expect[0]));
            }
            return {"Kronecker singular values are products", worst <= 1e-10, "worst deviation " + describe(worst)};
        }

        PropertyCheck root_check()
        {
            double worst = 0.0;
            for (std::size_t m = 1; m <= 12; ++m)
                for (double a = 0.0; a < 0.96; a += 0.05)
                {
                    const ComplexMatrix q = build_exponential_correlation(m, std::polar(a, 0.7)).matrix;
                    const ComplexMatrix root = hermitian_sqrt(q);
                    worst = std::max(worst, (root * root - q).norm());
                    worst = std::max(worst, (root - root.adjoint()).norm());
                }
            return {"Hermitian root reproduces the correlation", worst <= 1e-10, "worst residual " + describe(worst)};
        }

        // Best row support by enumeration, used as an independent reference for the greedy search
        std::vector<std::size_t> best_support(const ComplexMatrix &y, const ComplexMatrix &a, std::size_t k)
        {
            const auto q = std::size_t(a.cols());
            std::vector<std::size_t> idx(k);
            std::iota(idx.begin(), idx.end(), 0);
            double best = y.squaredNorm();
            std::vector<std::size_t> arg = idx;
            while (true)
            {
                ComplexMatrix sub(a.rows(), Eigen::Index(k));
                for (std::size_t c = 0; c < k; ++c)
                    sub.col(Eigen::Index(c)) = a.col(Eigen::Index(idx[c]));
                const ComplexMatrix z = sub.colPivHouseholderQr().solve(y);
                const double res = (y - sub * z).squaredNorm();
                if (res < best)
                {
                    best = res;
                    arg = idx;
                }
                std::size_t pos = k;
                while (pos > 0 && idx[pos - 1] == q - k + pos - 1)
                    --pos;
                if (pos == 0)
                    break;
                ++idx[pos - 1];
                for (std::size_t c = pos; c < k; ++c)
                    idx[c] = idx[c - 1] + 1;
            }
            return arg;
        }

        PropertyCheck recovery_check(std::size_t workers)
        {
            constexpr std::size_t n = 500, p = 8, q = 20, c = 3, k = 2;
            std::vector<char> ok(n, 0);
            parallel_for(n, workers, [&](std::size_t t)
            {
                SeededRng rng(mix_seed(11, {t}));
                const ComplexMatrix a = complex_gaussian(rng, p, q, 1.0);
                ComplexMatrix z = ComplexMatrix::Zero(q, c);
                std::vector<std::size_t> bins(q);
                std::iota(bins.begin(), bins.end(), 0);
                std::shuffle(bins.begin(), bins.end(), rng.engine());
                for (std::size_t s = 0; s < k; ++s)
                    z.row(Eigen::Index(bins[s])) = complex_gaussian(rng, 1, c, 1.0);
                const ComplexMatrix y = a * z;
                RecoveryResult rec = somp(y, a, {0.0, k, 1});
                std::sort(rec.support_bins.begin(), rec.support_bins.end());
                ok[t] = rec.support_bins == best_support(y, a, k) ? 1 : 0;
            });
            const auto hits = std::size_t(std::count(ok.begin(), ok.end(), 1));
            return {"greedy support matches exhaustive search", double(hits) / double(n) >= 0.99,
                    std::to_string(hits) + "/" + std::to_string(n) + " instances optimal"};
        }

        PropertyCheck folding_check()
        {
            SeededRng rng(mix_seed(13, {1}));
            const MeasurementOperator op = build_random_demodulator(100, 300, rng);
            const NoiseFoldingEstimate est = estimate_noise_folding(op, 1.0, rng, 2000);
            const double expect = op.compression_ratio();
            return {"noise folding equals the compression ratio", std::abs(est.alpha - expect) <= 0.05 * expect,
                    "alpha " + describe(est.alpha) + " against " + describe(expect)};
        }

        PropertyCheck expectation_check()
        {
            ScenarioConfig cfg;
            cfg.nyquist_samples = 100;
            cfg.sub_samples = 20;
            cfg.bandwidth_hz = 100e6;
            cfg.pu_bandwidth_hz = 20e6;
            cfg.segments = 4;
            const ScmRelationReport rep = validate_scm_expectation({AlgorithmKind::mcslacc, 1}, cfg, 2, 3, 2000);
            return {"mean SCM matches its expectation", rep.relative_error < 0.1,
                    "relative error " + describe(rep.relative_error) + " over " + std::to_string(rep.n_channel_draws) +
                        " draws"};
        }
    }

    std::vector<PropertyCheck> run_property_suite(std::size_t workers)
    {
        std::vector<PropertyCheck> out;
        auto guarded = [&](const std::string &name, auto &&fn)
        {
            try
            {
                out.push_back(fn());
            }
            catch (const std::exception &e)
            {
                out.push_back({name, false, std::string("threw: ") + e.what()});
            }
        };
        guarded("closed forms against oracles", theory_grid_check);
        guarded("largest singular value decreases with shift", monotonicity_check);
        guarded("invariance under the phase of rho", phase_invariance_check);
        guarded("rank one beyond the sub-array width", rank_one_check);
        guarded("Kronecker singular values are products", kronecker_check);
        guarded("Hermitian root reproduces the correlation", root_check);
        guarded("greedy support matches exhaustive search", [&] { return recovery_check(workers); });
        guarded("noise folding equals the compression ratio", folding_check);
        guarded("mean SCM matches its expectation", expectation_check);
        return out;
    }
}
