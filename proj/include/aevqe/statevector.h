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

#ifndef AEVQE_STATEVECTOR_H
#define AEVQE_STATEVECTOR_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "aevqe/linalg.h"
#include "aevqe/pauli.h"

namespace aevqe {

/// Exact pure state of n qubits. Qubit 0 is the most significant bit of the
/// amplitude index.
class StateVector {
   public:
    static constexpr size_t kMaxQubits = 30;

    /// |0...0>.
    explicit StateVector(size_t num_qubits);
    /// Takes amplitudes as given; size must be 2^num_qubits. Not renormalized.
    StateVector(size_t num_qubits, std::vector<Complex> amplitudes);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    std::span<Complex> amplitudes() {
        return amplitudes_;
    }
    const Complex &operator[](size_t i) const {
        return amplitudes_[i];
    }
    Complex &operator[](size_t i) {
        return amplitudes_[i];
    }

    double norm_squared() const;
    /// Throws ZeroNormError on a (numerically) zero vector.
    void normalize();

    Eigen::VectorXcd to_eigen() const;

   private:
    size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Basis state |bits>, character j of `bits` giving qubit j.
StateVector init_basis_state(size_t num_qubits, std::string_view bits);

Complex inner_product(const StateVector &bra, const StateVector &ket);
/// |<a|b>|^2 for normalized inputs.
double fidelity(const StateVector &a, const StateVector &b);

/// Applies a 2x2 unitary to `qubit` in place. Throws std::invalid_argument if
/// u is not unitary to 1e-10 or the qubit is out of range.
void apply_1q(StateVector &state, size_t qubit, const Eigen::Matrix2cd &u);
/// Applies a 4x4 unitary in place; q1 is the more significant index bit of u.
void apply_2q(StateVector &state, size_t q1, size_t q2, const Eigen::Matrix4cd &u);
/// Permutation and phase kernels equal to apply_2q with gates::cnot / gates::cz.
void apply_cnot(StateVector &state, size_t control, size_t target);
void apply_cz(StateVector &state, size_t a, size_t b);

/// <bra| P |ket> over raw amplitude arrays of equal length 2^n, n = P.num_qubits().
Complex pauli_matrix_element(std::span<const Complex> bra, const PauliString &p, std::span<const Complex> ket);
Complex pauli_matrix_element(std::span<const Complex> bra, const PauliSum &h, std::span<const Complex> ket);

/// <psi|H|psi>. Throws std::invalid_argument on a qubit-count mismatch.
double pauli_expectation(const StateVector &state, const PauliSum &h);
double pauli_expectation(const StateVector &state, const PauliString &p);

/// H|psi> (not normalized).
StateVector apply_pauli_sum(const PauliSum &h, const StateVector &state);

/// Measurement record. Keys are n-character strings over {0, 1}, character j
/// giving qubit j.
struct Counts {
    size_t num_qubits = 0;
    uint64_t shots = 0;
    std::map<std::string, uint64_t> tallies;

    uint64_t operator[](const std::string &outcome) const;
};

std::string basis_label(uint64_t index, size_t num_qubits);
uint64_t basis_index(std::string_view bits);

/// Draws `shots` i.i.d. outcomes from |amplitude|^2. Deterministic per seed.
Counts sample_bitstrings(const StateVector &state, uint64_t shots, uint64_t seed);
/// Same draw as sample_bitstrings, returned as a dense histogram over basis indices.
std::vector<uint64_t> sample_histogram(std::span<const double> probabilities, uint64_t shots, uint64_t seed);

struct QubitReadout {
    /// P(read 0 | true 1).
    double p01 = 0;
    /// P(read 1 | true 0).
    double p10 = 0;
};

/// Independent per-qubit classical readout channel. Both flip probabilities
/// must lie in [0, 0.5).
class ReadoutModel {
   public:
    explicit ReadoutModel(std::vector<QubitReadout> qubits);
    static ReadoutModel uniform(size_t num_qubits, double p01, double p10);
    /// No validation. Exists so conditioning checks downstream can be exercised.
    static ReadoutModel unchecked(std::vector<QubitReadout> qubits);

    size_t num_qubits() const {
        return qubits_.size();
    }
    const QubitReadout &qubit(size_t q) const {
        return qubits_[q];
    }
    /// Model restricted to the listed qubits, in the listed order.
    ReadoutModel subset(std::span<const size_t> qubits) const;

   private:
    struct Unchecked {};
    ReadoutModel(std::vector<QubitReadout> qubits, Unchecked) : qubits_(std::move(qubits)) {
    }
    std::vector<QubitReadout> qubits_;
};

/// Exact outcome distribution after the readout channel (the confusion matrix
/// applied to every qubit).
std::vector<double> apply_readout_channel(std::span<const double> distribution, const ReadoutModel &model);

/// Flips each recorded bit independently according to the model.
Counts apply_readout_noise(const Counts &counts, const ReadoutModel &model, uint64_t seed);
std::vector<uint64_t> apply_readout_noise(
    std::span<const uint64_t> histogram, const ReadoutModel &model, uint64_t seed);

/// Applies the inverse tensor-product confusion matrix to the empirical
/// distribution. The result sums to one and may contain negative entries.
/// Throws ConditioningError when some qubit has |1 - p01 - p10| < 1e-9.
std::map<std::string, double> mitigate_counts(const Counts &counts, const ReadoutModel &model);
std::vector<double> mitigate_distribution(std::span<const double> distribution, const ReadoutModel &model);

struct Projection {
    double probability = 0;
    /// State of the unmeasured qubits (original order); empty when the
    /// outcome has zero probability.
    std::optional<StateVector> collapsed;
};

/// Projects `qubits` onto `bits` and returns the renormalized remainder.
/// At least one qubit must remain unmeasured.
Projection project(const StateVector &state, std::span<const size_t> qubits, std::string_view bits);

}  // namespace aevqe

#endif
