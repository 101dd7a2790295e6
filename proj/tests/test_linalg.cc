// Copyright 2026 The AEVQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "aevqe/linalg.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "aevqe/errors.h"
#include "test_util.h"

namespace aevqe {
namespace {

using testing::random_hermitian;

double reconstruction_error(const ComplexMatrix &m, const EigenDecomposition &e) {
    Eigen::VectorXcd d(e.values.size());
    for (size_t i = 0; i < e.values.size(); ++i) {
        d[Eigen::Index(i)] = e.values[i];
    }
    return (e.vectors * d.asDiagonal() * e.vectors.adjoint() - m).norm();
}

TEST(Jacobi, DiagonalInputSortsAndPermutes) {
    ComplexMatrix m = ComplexMatrix::Zero(3, 3);
    m(0, 0) = 2;
    m(1, 1) = -1;
    m(2, 2) = 0.5;
    const auto e = jacobi_eig(m);
    EXPECT_EQ(e.values, (std::vector<double>{-1, 0.5, 2}));
    // Columns are unit basis vectors in the matching order.
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(e.vectors(2, 1)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(e.vectors(0, 2)), 1.0, 1e-15);
    EXPECT_EQ(e.sweeps, 0);
}

TEST(Jacobi, PauliX) {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    const auto e = jacobi_eig(m);
    EXPECT_NEAR(e.values[0], -1, 1e-15);
    EXPECT_NEAR(e.values[1], 1, 1e-15);
    EXPECT_LT(reconstruction_error(m, e), 1e-14);
}

TEST(Jacobi, ComplexTwoByTwoMatchesQuadraticRoots) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = random_hermitian(2, rng);
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double r = std::sqrt((a - d) * (a - d) / 4 + std::norm(m(0, 1)));
        const auto e = jacobi_eig(m);
        EXPECT_NEAR(e.values[0], (a + d) / 2 - r, 1e-12);
        EXPECT_NEAR(e.values[1], (a + d) / 2 + r, 1e-12);
    }
}

TEST(Jacobi, RandomHermitianAgainstEigen) {
    std::mt19937_64 rng(5);
    for (Eigen::Index n : {1, 3, 4, 7, 16}) {
        for (int trial = 0; trial < 10; ++trial) {
            const ComplexMatrix m = random_hermitian(n, rng);
            const auto e = jacobi_eig(m);
            const auto ref = testing::eigen_spectrum(m);
            ASSERT_EQ(e.values.size(), ref.size());
            for (size_t i = 0; i < ref.size(); ++i) {
                EXPECT_NEAR(e.values[i], ref[i], 1e-10);
            }
            EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
            EXPECT_TRUE(is_unitary(e.vectors, 1e-10));
            EXPECT_LT(reconstruction_error(m, e), 1e-10);
        }
    }
}

TEST(Jacobi, DegenerateSpectrum) {
    // Identity plus a rank-one update: eigenvalue 1 with multiplicity 3.
    Eigen::VectorXcd v(4);
    v << 1, std::complex<double>(0, 1), -1, 0.5;
    const ComplexMatrix m = ComplexMatrix::Identity(4, 4) + v * v.adjoint();
    const auto e = jacobi_eig(m);
    EXPECT_NEAR(e.values[0], 1, 1e-12);
    EXPECT_NEAR(e.values[2], 1, 1e-12);
    EXPECT_NEAR(e.values[3], 1 + v.squaredNorm(), 1e-12);
    EXPECT_LT(reconstruction_error(m, e), 1e-12);
}

TEST(Jacobi, LargeNormMatrix) {
    std::mt19937_64 rng(2);
    const ComplexMatrix m = 1e6 * random_hermitian(5, rng);
    const auto e = jacobi_eig(m);
    EXPECT_LT(reconstruction_error(m, e) / m.norm(), 1e-12);
}

TEST(Jacobi, RejectsBadInput) {
    EXPECT_THROW(jacobi_eig(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
    ComplexMatrix m(2, 2);
    m << 0, 1, 0, 0;
    EXPECT_THROW(jacobi_eig(m), std::invalid_argument);
}

TEST(Linalg, Predicates) {
    ComplexMatrix h(2, 2);
    h << 1, std::complex<double>(0, 2), std::complex<double>(0, -2), 3;
    EXPECT_TRUE(is_hermitian(h, 0));
    h(0, 1) += 1e-6;
    EXPECT_FALSE(is_hermitian(h, 1e-9));
    EXPECT_TRUE(is_hermitian(h, 1e-5));

    ComplexMatrix u(2, 2);
    const double r = 1 / std::sqrt(2.0);
    u << r, r, r, -r;
    EXPECT_TRUE(is_unitary(u, 1e-14));
    EXPECT_FALSE(is_unitary(2.0 * u, 1e-3));

    EXPECT_DOUBLE_EQ(off_diagonal_norm(ComplexMatrix::Identity(3, 3)), 0.0);
    EXPECT_NEAR(off_diagonal_norm(h), std::sqrt(std::norm(h(0, 1)) + std::norm(h(1, 0))), 1e-15);
}

}  // namespace
}  // namespace aevqe
