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

#ifndef AEVQE_CIRCUIT_H
#define AEVQE_CIRCUIT_H

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aevqe/statevector.h"

namespace aevqe {

enum class GateKind { H, S, RX, RY, RZ, CZ, CNOT };

std::string_view gate_name(GateKind kind);
size_t gate_arity(GateKind kind);
bool is_rotation(GateKind kind);

/// Index into a circuit's parameter vector.
struct ParamSlot {
    size_t index = 0;
    bool operator==(const ParamSlot &) const = default;
};

/// Rotation angle: none (fixed gates), a constant in radians, or a slot.
using Angle = std::variant<std::monostate, double, ParamSlot>;

struct Gate {
    GateKind kind = GateKind::H;
    /// targets[1] is meaningful for two-qubit gates only; for CNOT it is the target
    /// and targets[0] the control.
    std::array<size_t, 2> targets{0, 0};
    Angle angle;

    bool operator==(const Gate &) const = default;
};

/// Ordered gate list over a fixed register. Parameter slots are allocated by
/// the circuit so they stay dense in 0..P-1.
class Circuit {
   public:
    explicit Circuit(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t num_parameters() const {
        return num_parameters_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }

    /// Reserves the next parameter slot.
    ParamSlot new_parameter();

    /// Validates arity, angle presence, qubit range and slot range.
    Circuit &append(const Gate &gate);

    Circuit &h(size_t q);
    Circuit &s(size_t q);
    Circuit &rx(size_t q, Angle angle);
    Circuit &ry(size_t q, Angle angle);
    Circuit &rz(size_t q, Angle angle);
    Circuit &cz(size_t a, size_t b);
    Circuit &cnot(size_t control, size_t target);

    /// One gate per line: `KIND q [q] [angle|slot:k]`.
    std::string dump() const;

   private:
    size_t num_qubits_;
    size_t num_parameters_ = 0;
    std::vector<Gate> gates_;
};

/// Applies the circuit to `state` in place. Gate qubit q acts on state qubit
/// q + qubit_offset. Throws std::invalid_argument on size mismatches.
void run_in_place(const Circuit &circuit, std::span<const double> theta, StateVector &state, size_t qubit_offset = 0);

/// Copying form; the circuit must span the whole input register.
StateVector run(const Circuit &circuit, std::span<const double> theta, const StateVector &input);

/// Ancilla (qubit 0) and physical qubit 1 in (|00> + |11>)/sqrt(2), physical
/// qubit 2 in |0>.
Circuit build_h2_init();

/// Two-qubit variational block: three layers of per-qubit RX then RZ
/// rotations separated by two CNOT(0, 1) entanglers. Every rotation owns a
/// slot, so P = 12; at theta = 0 the CNOT pair cancels and the block is the
/// identity.
Circuit build_h2_ansatz();

/// All qubits rotated to (|0> - |1>)/sqrt(2), then CZ(ancilla i, physical i)
/// for each ancilla. Ancillas occupy qubits 0..n_ancilla-1; physical qubit i
/// is register qubit n_ancilla + i. Requires 1 <= n_ancilla < n_physical.
Circuit build_tfim_init(size_t n_physical, size_t n_ancilla);

/// Trotter-structured ansatz: each layer applies, per bond (i, i+1),
/// CNOT(i, i+1) RZ(slot) on i+1 CNOT(i, i+1), then RX(slot) on every site.
/// P = layers * (2 n_physical - 1).
Circuit build_tfim_ansatz(size_t n_physical, size_t layers);

}  // namespace aevqe

#endif
