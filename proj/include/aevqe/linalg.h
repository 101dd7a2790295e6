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

#ifndef AEVQE_LINALG_H
#define AEVQE_LINALG_H

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace aevqe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Largest matrix dimension accepted by jacobi_eig (2^12).
constexpr Eigen::Index kMaxJacobiDimension = 4096;

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> values;
    /// Column i is the eigenvector of values[i]; unitary.
    ComplexMatrix vectors;
    int sweeps = 0;
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation removes one off-diagonal pair (p, q) by first rotating the
/// phase of a_pq onto the real axis and then applying the classic real Jacobi
/// rotation. Sweeps continue until the off-diagonal Frobenius norm drops below
/// 1e-12 (scaled by the matrix norm when that exceeds one) or 100 sweeps have
/// run, in which case ConvergenceError is thrown.
///
/// Throws std::invalid_argument when the input is not square, exceeds
/// kMaxJacobiDimension, or deviates from Hermitian by more than 1e-8.
EigenDecomposition jacobi_eig(const ComplexMatrix &m);

double off_diagonal_norm(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol);
bool is_unitary(const ComplexMatrix &m, double tol);

}  // namespace aevqe

#endif
