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

#ifndef AEVQE_GATES_H
#define AEVQE_GATES_H

#include <cmath>
#include <complex>

#include <Eigen/Dense>

// Gate matrices. Rotations follow R_a(t) = exp(-i t A / 2), so
// R_z(t) = diag(e^{-it/2}, e^{it/2}); S = diag(1, i) equals R_z(pi/2) up to
// global phase.
namespace aevqe::gates {

inline Eigen::Matrix2cd hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << r, r, r, -r;
    return m;
}

inline Eigen::Matrix2cd phase_s() {
    Eigen::Matrix2cd m;
    m << 1, 0, 0, std::complex<double>(0, 1);
    return m;
}

inline Eigen::Matrix2cd rx(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Eigen::Matrix2cd m;
    m << c, std::complex<double>(0, -s), std::complex<double>(0, -s), c;
    return m;
}

inline Eigen::Matrix2cd ry(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return m;
}

inline Eigen::Matrix2cd rz(double theta) {
    Eigen::Matrix2cd m;
    m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
    return m;
}

inline Eigen::Matrix4cd cz() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    m(3, 3) = -1;
    return m;
}

/// Control is the first (more significant) qubit.
inline Eigen::Matrix4cd cnot() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

}  // namespace aevqe::gates

#endif
