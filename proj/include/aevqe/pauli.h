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

#ifndef AEVQE_PAULI_H
#define AEVQE_PAULI_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aevqe/linalg.h"

namespace aevqe {

/// Largest register converted to a dense matrix.
constexpr size_t kMaxDenseQubits = 12;

/// A Hermitian Pauli string in bitmask form.
///
/// Bit i of `x_mask` / `z_mask` describes the factor on qubit i:
/// I = (0, 0), X = (1, 0), Z = (0, 1), Y = (1, 1). Y is the Hermitian Pauli Y,
/// so the string equals i^{popcount(x & z)} * X^x Z^z.
///
/// Basis ordering is fixed repo-wide: qubit 0 is the most significant bit of a
/// computational-basis index, and character j of a label addresses qubit j.
class PauliString {
   public:
    static constexpr size_t kMaxQubits = 64;

    PauliString() = default;
    PauliString(size_t num_qubits, uint64_t x_mask, uint64_t z_mask);

    static PauliString identity(size_t num_qubits);
    /// Parses a label over {I, X, Y, Z}; throws std::invalid_argument otherwise.
    static PauliString from_label(std::string_view label);
    /// X on every qubit.
    static PauliString x_parity(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    uint64_t x_mask() const {
        return x_mask_;
    }
    uint64_t z_mask() const {
        return z_mask_;
    }
    /// Masks re-expressed in computational-basis bit positions (qubit q at bit n-1-q).
    uint64_t basis_x_mask() const;
    uint64_t basis_z_mask() const;

    bool is_identity() const {
        return x_mask_ == 0 && z_mask_ == 0;
    }
    char factor(size_t qubit) const;
    std::string label() const;
    /// Qubits carrying a non-identity factor.
    uint64_t support() const {
        return x_mask_ | z_mask_;
    }
    bool commutes_with(const PauliString &other) const;

    /// Tensor product with `tail` appended after this string's qubits.
    PauliString concat(const PauliString &tail) const;

    auto operator<=>(const PauliString &) const = default;
    bool operator==(const PauliString &) const = default;

   private:
    size_t num_qubits_ = 0;
    uint64_t x_mask_ = 0;
    uint64_t z_mask_ = 0;
};

/// a * b = phase * c with phase in {1, i, -1, -i}.
std::pair<Complex, PauliString> multiply(const PauliString &a, const PauliString &b);

struct PauliTerm {
    double coefficient = 0;
    PauliString string;

    bool operator==(const PauliTerm &) const = default;
};

/// Real-weighted sum of Pauli strings. Always canonical: terms are sorted by
/// string, duplicates merged, and exact zeros dropped.
class PauliSum {
   public:
    explicit PauliSum(size_t num_qubits, std::vector<PauliTerm> terms = {});

    size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<PauliTerm> &terms() const {
        return terms_;
    }
    size_t size() const {
        return terms_.size();
    }
    /// Coefficient of `s`, zero if absent.
    double coefficient(const PauliString &s) const;
    /// True when every term commutes with X on all qubits.
    bool commutes_with_x_parity() const;

    bool operator==(const PauliSum &) const = default;

   private:
    size_t num_qubits_;
    std::vector<PauliTerm> terms_;
};

/// Open-boundary transverse-field Ising chain
///   -J sum_{i<n-1} Z_i Z_{i+1} + h sum_i X_i.
PauliSum tfim_hamiltonian(size_t n_spins, double coupling, double field);

/// Reads the Pauli-sum text format: one `<coefficient> <label>` per line,
/// `#` comment lines and blank lines ignored. Throws ParseError.
PauliSum load_pauli_sum(std::istream &in);
PauliSum parse_pauli_sum(std::string_view text);
PauliSum load_pauli_sum_file(const std::filesystem::path &path);

/// Inverse of load_pauli_sum; coefficients printed with round-trip precision.
std::string serialize(const PauliSum &sum);

ComplexMatrix to_dense(const PauliString &s);
/// Throws CapacityError above kMaxDenseQubits.
ComplexMatrix to_dense(const PauliSum &sum);

struct Spectrum {
    std::vector<double> values;
    /// Empty unless requested.
    ComplexMatrix vectors;
};

/// Ascending eigenvalues of to_dense(sum) via jacobi_eig.
Spectrum exact_spectrum(const PauliSum &sum, bool with_vectors = false);

std::ostream &operator<<(std::ostream &out, const PauliString &s);

}  // namespace aevqe

#endif
