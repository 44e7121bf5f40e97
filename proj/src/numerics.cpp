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

#include "cslacc/numerics.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <sstream>

namespace cslacc
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x) noexcept
        {
            x += 0x9E3779B97F4A7C15ULL;
            x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
            x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
            return x ^ (x >> 31);
        }
    }

    std::uint64_t mix_seed(std::uint64_t base, std::initializer_list<std::uint64_t> key) noexcept
    {
        std::uint64_t h = splitmix64(base);
        for (std::uint64_t k : key)
            h = splitmix64(h ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
        return h;
    }

    SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    SeededRng SeededRng::derive(std::initializer_list<std::uint64_t> key) const
    {
        return SeededRng(mix_seed(seed_, key));
    }

    double SeededRng::uniform()
    {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }

    double SeededRng::normal()
    {
        return normal_(engine_);
    }

    double SeededRng::rademacher()
    {
        return (engine_() >> 63) ? 1.0 : -1.0;
    }

    std::size_t SeededRng::uniform_index(std::size_t bound)
    {
        if (bound == 0)
            throw Error(ErrorCode::InvalidConfig, "uniform_index bound must be positive");
        return std::uniform_int_distribution<std::size_t>(0, bound - 1)(engine_);
    }

    bool all_finite(const ComplexMatrix &a) noexcept
    {
        for (Eigen::Index k = 0; k < a.size(); ++k)
            if (!std::isfinite(a.data()[k].real()) || !std::isfinite(a.data()[k].imag()))
                return false;
        return true;
    }

    EigenDecomposition hermitian_eig(const ComplexMatrix &a)
    {
        if (a.rows() != a.cols())
            throw Error(ErrorCode::DimensionMismatch, "hermitian_eig expects a square matrix");
        if (!all_finite(a))
            throw Error(ErrorCode::ConvergenceFailure, "hermitian_eig input has non-finite entries");

        const double fro = a.norm();
        if ((a - a.adjoint()).norm() > 1e-10 * fro)
            throw Error(ErrorCode::NonHermitianInput, "hermitian_eig input is not Hermitian");

        const ComplexMatrix sym = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");

        return {solver.eigenvalues(), solver.eigenvectors()};
    }

    SvdResult svd(const ComplexMatrix &a, bool with_v)
    {
        if (!all_finite(a))
            throw Error(ErrorCode::ConvergenceFailure, "svd input has non-finite entries");
        if (a.size() == 0)
            return {ComplexMatrix::Identity(a.rows(), a.rows()), RealVector(0), ComplexMatrix::Identity(a.cols(), a.cols())};

        const unsigned options = with_v ? Eigen::ComputeFullU | Eigen::ComputeFullV : Eigen::ComputeFullU;
        Eigen::BDCSVD<ComplexMatrix> solver(a, options);
        if (solver.info() != Eigen::Success)
        {
            Eigen::JacobiSVD<ComplexMatrix> fallback(a);
            const RealVector sv = fallback.singularValues();
            std::ostringstream msg;
            msg << "svd did not converge, condition estimate "
                << (sv.size() && sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity());
            throw Error(ErrorCode::ConvergenceFailure, msg.str());
        }
        return {solver.matrixU(), solver.singularValues(), with_v ? ComplexMatrix(solver.matrixV()) : ComplexMatrix()};
    }

    RealVector singular_values(const ComplexMatrix &a)
    {
        if (!all_finite(a))
            throw Error(ErrorCode::ConvergenceFailure, "singular_values input has non-finite entries");
        if (a.size() == 0)
            return RealVector(0);
        Eigen::BDCSVD<ComplexMatrix> solver(a);
        if (solver.info() != Eigen::Success)
            throw Error(ErrorCode::ConvergenceFailure, "singular value iteration did not converge");
        return solver.singularValues();
    }

    double spectral_norm(const ComplexMatrix &a)
    {
        const RealVector sv = singular_values(a);
        return sv.size() ? sv(0) : 0.0;
    }

    ComplexMatrix hermitian_sqrt(const ComplexMatrix &q)
    {
        const EigenDecomposition ed = hermitian_eig(q);
        const double floor = -1e-10 * std::max(1.0, q.norm());

        RealVector root(ed.eigenvalues.size());
        for (Eigen::Index k = 0; k < root.size(); ++k)
        {
            const double lambda = ed.eigenvalues(k);
            if (lambda < floor)
                throw Error(ErrorCode::NegativeEigenvalue, "matrix is not positive semidefinite");
            root(k) = std::sqrt(std::max(lambda, 0.0));
        }

        const ComplexMatrix &v = ed.eigenvectors;
        ComplexMatrix b = v * root.cast<Complex>().asDiagonal() * v.adjoint();
        return 0.5 * (b + b.adjoint());
    }

    ComplexMatrix kronecker(const ComplexMatrix &a, const ComplexMatrix &b, std::size_t entry_cap)
    {
        const long double entries = static_cast<long double>(a.size()) * static_cast<long double>(b.size());
        if (entries > static_cast<long double>(entry_cap))
            throw Error(ErrorCode::DimensionOverflow, "Kronecker product exceeds the configured entry cap");
        return Eigen::kroneckerProduct(a, b).eval();
    }

    ComplexMatrix complex_gaussian(SeededRng &rng, Eigen::Index rows, Eigen::Index cols, double variance)
    {
        if (variance < 0.0)
            throw Error(ErrorCode::InvalidConfig, "complex_gaussian variance must be non-negative");
        const double scale = std::sqrt(0.5 * variance);
        ComplexMatrix out(rows, cols);
        // Column-major fill so the stream order matches the storage order
        for (Eigen::Index c = 0; c < cols; ++c)
            for (Eigen::Index r = 0; r < rows; ++r)
            {
                const double re = rng.normal();
                const double im = rng.normal();
                out(r, c) = Complex(scale * re, scale * im);
            }
        return out;
    }

    double rayleigh_quotient(const ComplexMatrix &a, const ComplexVector &x)
    {
        if (a.rows() != a.cols() || a.cols() != x.size())
            throw Error(ErrorCode::DimensionMismatch, "rayleigh_quotient dimension mismatch");
        const double den = x.squaredNorm();
        if (den == 0.0)
            throw Error(ErrorCode::DimensionMismatch, "rayleigh_quotient of the zero vector");
        return (x.adjoint() * a * x)(0, 0).real() / den;
    }
}
