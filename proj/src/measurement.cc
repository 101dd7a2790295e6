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

#include "aevqe/measurement.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "aevqe/gates.h"
#include "aevqe/rng.h"

namespace aevqe {

namespace {

Basis basis_of(const PauliString &s, size_t q) {
    switch (s.factor(q)) {
        case 'X':
            return Basis::X;
        case 'Y':
            return Basis::Y;
        default:
            return Basis::Z;
    }
}

// Per-qubit constraint: nullopt = free, else the required basis.
bool compatible(const std::vector<std::optional<Basis>> &req, const PauliString &s) {
    for (size_t q = 0; q < s.num_qubits(); ++q) {
        if (((s.support() >> q) & 1) && req[q] && *req[q] != basis_of(s, q)) {
            return false;
        }
    }
    return true;
}

MeasurementSetting finish(const std::vector<std::optional<Basis>> &req, std::vector<PauliTerm> terms) {
    MeasurementSetting out;
    out.bases.reserve(req.size());
    for (const auto &b : req) {
        out.bases.push_back(b.value_or(Basis::Z));
    }
    out.terms = std::move(terms);
    return out;
}

}  // namespace

double MeasurementSetting::value(uint64_t outcome) const {
    const size_t n = bases.size();
    double total = 0;
    for (const auto &t : terms) {
        // Support in basis-index bit positions.
        uint64_t support = 0;
        for (size_t q = 0; q < n; ++q) {
            if ((t.string.support() >> q) & 1) {
                support |= uint64_t{1} << (n - 1 - q);
            }
        }
        total += (std::popcount(outcome & support) & 1) ? -t.coefficient : t.coefficient;
    }
    return total;
}

GroupedObservable group_qubitwise(const PauliSum &observable) {
    const size_t n = observable.num_qubits();
    GroupedObservable out;
    std::vector<std::vector<std::optional<Basis>>> reqs;
    std::vector<std::vector<PauliTerm>> members;
    for (const auto &t : observable.terms()) {
        if (t.string.is_identity()) {
            out.constant += t.coefficient;
            continue;
        }
        size_t g = 0;
        while (g < reqs.size() && !compatible(reqs[g], t.string)) {
            ++g;
        }
        if (g == reqs.size()) {
            reqs.emplace_back(n);
            members.emplace_back();
        }
        for (size_t q = 0; q < n; ++q) {
            if ((t.string.support() >> q) & 1) {
                reqs[g][q] = basis_of(t.string, q);
            }
        }
        members[g].push_back(t);
    }
    for (size_t g = 0; g < reqs.size(); ++g) {
        out.settings.push_back(finish(reqs[g], std::move(members[g])));
    }
    return out;
}

GroupedObservable group_individually(const PauliSum &observable) {
    const size_t n = observable.num_qubits();
    GroupedObservable out;
    for (const auto &t : observable.terms()) {
        if (t.string.is_identity()) {
            out.constant += t.coefficient;
            continue;
        }
        std::vector<std::optional<Basis>> req(n);
        for (size_t q = 0; q < n; ++q) {
            if ((t.string.support() >> q) & 1) {
                req[q] = basis_of(t.string, q);
            }
        }
        out.settings.push_back(finish(req, {t}));
    }
    return out;
}

std::vector<double> rotated_probabilities(const StateVector &state, std::span<const Basis> bases) {
    if (bases.size() != state.num_qubits()) {
        throw std::invalid_argument("rotated_probabilities: one basis per qubit required");
    }
    // H maps X eigenstates to Z eigenstates; H S^dagger does the same for Y.
    const Eigen::Matrix2cd to_x = gates::hadamard();
    const Eigen::Matrix2cd to_y = gates::hadamard() * gates::phase_s().adjoint();
    StateVector rotated = state;
    for (size_t q = 0; q < bases.size(); ++q) {
        if (bases[q] == Basis::X) {
            apply_1q(rotated, q, to_x);
        } else if (bases[q] == Basis::Y) {
            apply_1q(rotated, q, to_y);
        }
    }
    std::vector<double> p(rotated.dimension());
    for (size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(rotated[i]);
    }
    return p;
}

Moments setting_moments(std::span<const double> distribution, const MeasurementSetting &setting) {
    double m1 = 0;
    double m2 = 0;
    for (uint64_t b = 0; b < distribution.size(); ++b) {
        if (distribution[b] == 0.0) {
            continue;
        }
        const double v = setting.value(b);
        m1 += distribution[b] * v;
        m2 += distribution[b] * v * v;
    }
    return {m1, std::max(0.0, m2 - m1 * m1)};
}

double estimate_setting(
    std::span<const double> probabilities,
    const MeasurementSetting &setting,
    uint64_t shots,
    const std::optional<ReadoutModel> &readout,
    uint64_t seed) {
    // Sampling the channel output directly has the same law as flipping the
    // bits of each ideal shot.
    const std::vector<uint64_t> hist = readout
                                           ? sample_histogram(apply_readout_channel(probabilities, *readout), shots, seed)
                                           : sample_histogram(probabilities, shots, seed);
    std::vector<double> dist(hist.size());
    for (size_t i = 0; i < hist.size(); ++i) {
        dist[i] = double(hist[i]) / double(shots);
    }
    if (readout) {
        dist = mitigate_distribution(dist, *readout);
    }
    double total = 0;
    for (uint64_t b = 0; b < dist.size(); ++b) {
        if (dist[b] != 0.0) {
            total += dist[b] * setting.value(b);
        }
    }
    return total;
}

double estimate_observable(
    const StateVector &state,
    const PauliSum &observable,
    uint64_t shots,
    const std::optional<ReadoutModel> &readout,
    uint64_t seed) {
    if (observable.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("estimate_observable: qubit count mismatch");
    }
    if (readout && readout->num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("estimate_observable: readout model size mismatch");
    }
    if (shots == 0) {
        return pauli_expectation(state, observable);
    }
    const GroupedObservable grouped = group_qubitwise(observable);
    double total = grouped.constant;
    for (size_t k = 0; k < grouped.settings.size(); ++k) {
        const auto &setting = grouped.settings[k];
        total += estimate_setting(
            rotated_probabilities(state, setting.bases), setting, shots, readout, derive_seed(seed, k));
    }
    return total;
}

}  // namespace aevqe
