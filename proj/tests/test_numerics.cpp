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
// - hermitian_eig, svd, singular_values, spectral_norm
// - hermitian_sqrt on a 2x2 correlation matrix and on random PSD matrices
// - kronecker: layout, singular value products, entry cap
// - SeededRng / mix_seed reproducibility, complex_gaussian variance

#include <catch_amalgamated.hpp>
#include "cslacc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace cslacc;
using Catch::Matchers::WithinAbs;

TEST_CASE("hermitian_sqrt - 2x2 correlation matrix")
{
    ComplexMatrix q(2, 2);
    q << 1.0, 0.6, 0.6, 1.0;
    const ComplexMatrix b = hermitian_sqrt(q);

    // Eigenvalues 1.6 and 0.4 with eigenvectors (1, +-1) / sqrt(2)
    const double d = (std::sqrt(1.6) + std::sqrt(0.4)) / 2.0;
    const double o = (std::sqrt(1.6) - std::sqrt(0.4)) / 2.0;
    CHECK_THAT(b(0, 0).real(), WithinAbs(d, 1e-12));
    CHECK_THAT(b(0, 1).real(), WithinAbs(o, 1e-12));
    CHECK_THAT(b(0, 0).real(), WithinAbs(0.9487, 1e-4));
    CHECK_THAT(b(0, 1).real(), WithinAbs(0.3162, 1e-4));
    CHECK((b * b - q).norm() < 1e-9);
}

TEST_CASE("hermitian_sqrt - random PSD and failure modes")
{
    SeededRng rng(3);
    for (int t = 0; t < 10; ++t)
    {
        const ComplexMatrix x = complex_gaussian(rng, 5, 3, 1.0);
        const ComplexMatrix q = x * x.adjoint(); // rank 3, PSD
        const ComplexMatrix b = hermitian_sqrt(q);
        CHECK((b * b - q).norm() < 1e-9 * q.norm());
        CHECK((b - b.adjoint()).norm() < 1e-12 * q.norm());
        CHECK(hermitian_eig(b).eigenvalues.minCoeff() > -1e-9);
    }

    ComplexMatrix neg(2, 2);
    neg << 1.0, 2.0, 2.0, 1.0; // eigenvalue -1
    CHECK_THROWS_AS(hermitian_sqrt(neg), Error);

    ComplexMatrix skew(2, 2);
    skew << 1.0, 0.5, -0.5, 1.0;
    try
    {
        hermitian_eig(skew);
        FAIL("non-Hermitian input accepted");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::NonHermitianInput);
    }
}

TEST_CASE("svd - reconstruction and ordering")
{
    SeededRng rng(5);
    const ComplexMatrix a = complex_gaussian(rng, 6, 4, 1.0);
    const SvdResult s = svd(a);
    const ComplexMatrix rebuilt = s.u.leftCols(4) * s.singular_values.asDiagonal() * s.v.adjoint();
    CHECK((rebuilt - a).norm() < 1e-12 * a.norm());
    for (Eigen::Index k = 1; k < s.singular_values.size(); ++k)
        CHECK(s.singular_values(k) <= s.singular_values(k - 1));
    CHECK_THAT(spectral_norm(a), WithinAbs(s.singular_values(0), 1e-12));

    // Unitary factors
    CHECK((s.u.adjoint() * s.u - ComplexMatrix::Identity(6, 6)).norm() < 1e-12);
    CHECK((s.v.adjoint() * s.v - ComplexMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("hermitian_eig - diagonal and Rayleigh quotient")
{
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    const EigenDecomposition e = hermitian_eig(d);
    CHECK_THAT(e.eigenvalues(0), WithinAbs(-1.0, 1e-14));
    CHECK_THAT(e.eigenvalues(2), WithinAbs(3.0, 1e-14));
    CHECK_THAT(rayleigh_quotient(d, e.eigenvectors.col(2)), WithinAbs(3.0, 1e-12));
}

TEST_CASE("kronecker - layout, singular values and cap")
{
    ComplexMatrix a(2, 2), b(2, 1);
    a << 1.0, 2.0, 3.0, 4.0;
    b << Complex(0.0, 1.0), 5.0;
    const ComplexMatrix k = kronecker(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 2);
    CHECK(k(1, 1) == Complex(10.0, 0.0)); // a(0,1) * b(1,0)
    CHECK(k(2, 0) == Complex(0.0, 3.0));  // a(1,0) * b(0,0)

    SeededRng rng(9);
    const ComplexMatrix x = complex_gaussian(rng, 3, 2, 1.0);
    const ComplexMatrix y = complex_gaussian(rng, 2, 4, 1.0);
    const RealVector sx = singular_values(x), sy = singular_values(y);
    std::vector<double> expect;
    for (Eigen::Index i = 0; i < sx.size(); ++i)
        for (Eigen::Index j = 0; j < sy.size(); ++j)
            expect.push_back(sx(i) * sy(j));
    std::sort(expect.rbegin(), expect.rend());
    const RealVector got = singular_values(kronecker(x, y));
    for (std::size_t i = 0; i < expect.size(); ++i)
        CHECK_THAT(got(Eigen::Index(i)), WithinAbs(expect[i], 1e-9));

    CHECK_THROWS_AS(kronecker(ComplexMatrix::Ones(100, 100), ComplexMatrix::Ones(100, 100), 1000), Error);
}

TEST_CASE("SeededRng - reproducible streams")
{
    SeededRng a(42), b(42);
    for (int k = 0; k < 100; ++k)
        CHECK(a.normal() == b.normal());

    CHECK(mix_seed(1, {2, 3}) == mix_seed(1, {2, 3}));
    CHECK(mix_seed(1, {2, 3}) != mix_seed(1, {3, 2}));
    CHECK(SeededRng(7).derive({1}).uniform() == SeededRng(7).derive({1}).uniform());

    SeededRng r(11);
    double plus = 0.0;
    for (int k = 0; k < 10000; ++k)
    {
        const double v = r.rademacher();
        REQUIRE((v == 1.0 || v == -1.0));
        plus += v > 0 ? 1.0 : 0.0;
    }
    CHECK_THAT(plus / 10000.0, WithinAbs(0.5, 0.02));
}

TEST_CASE("complex_gaussian - variance split between real and imaginary parts")
{
    SeededRng rng(13);
    const ComplexMatrix x = complex_gaussian(rng, 200, 200, 2.0);
    const double power = x.squaredNorm() / double(x.size());
    const double real_power = x.real().squaredNorm() / double(x.size());
    CHECK_THAT(power, WithinAbs(2.0, 0.05));
    CHECK_THAT(real_power, WithinAbs(1.0, 0.03));
    CHECK(all_finite(x));
}
