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

#ifndef CSLACC_NUMERICS_HPP
#define CSLACC_NUMERICS_HPP

#include "cslacc/error.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cslacc
{
    using Complex = std::complex<double>;
    using ComplexMatrix = Eigen::MatrixXcd;
    using ComplexVector = Eigen::VectorXcd;
    using RealVector = Eigen::VectorXd;

    // Eigenvalues ascending, eigenvectors as unit-norm columns
    struct EigenDecomposition
    {
        RealVector eigenvalues;
        ComplexMatrix eigenvectors;
    };

    // Singular values non-increasing; a = u * diag(singular_values) * v^H
    struct SvdResult
    {
        ComplexMatrix u;
        RealVector singular_values;
        ComplexMatrix v;
    };

    // Seeded 64-bit Mersenne Twister. Never shared between threads; derive() gives
    // statistically independent sub-streams keyed by (trial, antenna, ...) tuples.
    class SeededRng
    {
    public:
        explicit SeededRng(std::uint64_t seed);

        std::uint64_t seed() const noexcept { return seed_; }
        SeededRng derive(std::initializer_list<std::uint64_t> key) const;

        double uniform();                              // [0, 1)
        double normal();                               // N(0, 1)
        double rademacher();                           // +1 or -1 with equal probability
        std::size_t uniform_index(std::size_t bound);  // [0, bound)
        std::mt19937_64 &engine() noexcept { return engine_; }

    private:
        std::uint64_t seed_;
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_{0.0, 1.0};
    };

    // Order-dependent 64-bit hash of a seed and a key sequence (splitmix64 chain)
    std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> key) noexcept;

    // Default cap on the number of entries of a Kronecker product
    inline constexpr std::size_t kKroneckerEntryCap = std::size_t(1) << 26;

    EigenDecomposition hermitian_eig(const ComplexMatrix &a);
    SvdResult svd(const ComplexMatrix &a, bool with_v = true); // v left empty when with_v is false
    RealVector singular_values(const ComplexMatrix &a);
    double spectral_norm(const ComplexMatrix &a);

    // Hermitian PSD square root via eigendecomposition
    ComplexMatrix hermitian_sqrt(const ComplexMatrix &q);

    ComplexMatrix kronecker(const ComplexMatrix &a, const ComplexMatrix &b,
                            std::size_t entry_cap = kKroneckerEntryCap);

    // Circularly symmetric: real and imaginary parts each N(0, variance / 2)
    ComplexMatrix complex_gaussian(SeededRng &rng, Eigen::Index rows, Eigen::Index cols, double variance);

    // x^H a x / x^H x
    double rayleigh_quotient(const ComplexMatrix &a, const ComplexVector &x);

    bool all_finite(const ComplexMatrix &a) noexcept;
}

#endif
