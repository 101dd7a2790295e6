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
#include <numeric>
#include <stdexcept>
#include <string>

#include "aevqe/errors.h"

namespace aevqe {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-8;

// Zeroes a(p, q) and a(q, p). The rotation G acts on columns p, q as
//   G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// where phi is the phase of a(p, q); a <- G^H a G and v <- v G.
void rotate(ComplexMatrix &a, ComplexMatrix &v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double magnitude = std::abs(apq);
    if (magnitude == 0.0) {
        return;
    }
    const Complex phase = apq / magnitude;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * magnitude);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // Columns: col_p' = c col_p - s e^{-i phi} col_q ; col_q' = s col_p + c e^{-i phi} col_q.
    const Complex sq = s * std::conj(phase);
    const Complex cq = c * std::conj(phase);
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - sq * akq;
        a(k, q) = s * akp + cq * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - std::conj(sq) * aqk;
        a(q, k) = s * apk + std::conj(cq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - sq * vkq;
        v(k, q) = s * vkp + cq * vkq;
    }
}

}  // namespace

double off_diagonal_norm(const ComplexMatrix &m) {
    double total = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j) {
                total += std::norm(m(i, j));
            }
        }
    }
    return std::sqrt(total);
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol;
}

EigenDecomposition jacobi_eig(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("jacobi_eig: matrix is not square");
    }
    if (m.rows() > kMaxJacobiDimension) {
        throw std::invalid_argument("jacobi_eig: dimension " + std::to_string(m.rows()) + " exceeds 4096");
    }
    if (m.rows() > 0 && !is_hermitian(m, kHermitianTolerance)) {
        throw std::invalid_argument("jacobi_eig: matrix is not Hermitian");
    }
    const Eigen::Index n = m.rows();
    ComplexMatrix a = (m + m.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double tolerance = kOffDiagonalTolerance * std::max(1.0, a.norm());
    int sweeps = 0;
    while (off_diagonal_norm(a) >= tolerance) {
        if (sweeps == kMaxSweeps) {
            throw ConvergenceError("jacobi_eig: no convergence after 100 sweeps");
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        ++sweeps;
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out;
    out.sweeps = sweeps;
    out.values.reserve(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values.push_back(a(order[k], order[k]).real());
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

}  // namespace aevqe
