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

#include "aevqe/circuit.h"

#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "aevqe/gates.h"

namespace aevqe {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::RX:
            return "RX";
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::CZ:
            return "CZ";
        case GateKind::CNOT:
            return "CNOT";
    }
    return "?";
}

size_t gate_arity(GateKind kind) {
    return (kind == GateKind::CZ || kind == GateKind::CNOT) ? 2 : 1;
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

Circuit::Circuit(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("Circuit: need at least one qubit");
    }
}

ParamSlot Circuit::new_parameter() {
    return ParamSlot{num_parameters_++};
}

Circuit &Circuit::append(const Gate &gate) {
    const size_t arity = gate_arity(gate.kind);
    for (size_t k = 0; k < arity; ++k) {
        if (gate.targets[k] >= num_qubits_) {
            throw std::invalid_argument("Circuit: gate target out of range");
        }
    }
    if (arity == 2 && gate.targets[0] == gate.targets[1]) {
        throw std::invalid_argument("Circuit: two-qubit gate on a single qubit");
    }
    const bool has_angle = !std::holds_alternative<std::monostate>(gate.angle);
    if (is_rotation(gate.kind) != has_angle) {
        throw std::invalid_argument(
            std::string("Circuit: ") + std::string(gate_name(gate.kind)) +
            (has_angle ? " takes no angle" : " requires an angle"));
    }
    if (const auto *slot = std::get_if<ParamSlot>(&gate.angle); slot && slot->index >= num_parameters_) {
        throw std::invalid_argument("Circuit: parameter slot was not allocated");
    }
    gates_.push_back(gate);
    return *this;
}

Circuit &Circuit::h(size_t q) {
    return append({GateKind::H, {q, 0}, {}});
}
Circuit &Circuit::s(size_t q) {
    return append({GateKind::S, {q, 0}, {}});
}
Circuit &Circuit::rx(size_t q, Angle angle) {
    return append({GateKind::RX, {q, 0}, angle});
}
Circuit &Circuit::ry(size_t q, Angle angle) {
    return append({GateKind::RY, {q, 0}, angle});
}
Circuit &Circuit::rz(size_t q, Angle angle) {
    return append({GateKind::RZ, {q, 0}, angle});
}
Circuit &Circuit::cz(size_t a, size_t b) {
    return append({GateKind::CZ, {a, b}, {}});
}
Circuit &Circuit::cnot(size_t control, size_t target) {
    return append({GateKind::CNOT, {control, target}, {}});
}

std::string Circuit::dump() const {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto &g : gates_) {
        out << gate_name(g.kind) << ' ' << g.targets[0];
        if (gate_arity(g.kind) == 2) {
            out << ' ' << g.targets[1];
        }
        if (const auto *v = std::get_if<double>(&g.angle)) {
            out << ' ' << *v;
        } else if (const auto *slot = std::get_if<ParamSlot>(&g.angle)) {
            out << " slot:" << slot->index;
        }
        out << '\n';
    }
    return out.str();
}

void run_in_place(const Circuit &circuit, std::span<const double> theta, StateVector &state, size_t qubit_offset) {
    if (theta.size() != circuit.num_parameters()) {
        throw std::invalid_argument(
            "run: expected " + std::to_string(circuit.num_parameters()) + " parameters, got " +
            std::to_string(theta.size()));
    }
    if (circuit.num_qubits() + qubit_offset > state.num_qubits()) {
        throw std::invalid_argument("run: circuit does not fit in the state register");
    }
    for (const auto &g : circuit.gates()) {
        const size_t a = g.targets[0] + qubit_offset;
        const size_t b = g.targets[1] + qubit_offset;
        double angle = 0;
        if (const auto *v = std::get_if<double>(&g.angle)) {
            angle = *v;
        } else if (const auto *slot = std::get_if<ParamSlot>(&g.angle)) {
            angle = theta[slot->index];
        }
        switch (g.kind) {
            case GateKind::H:
                apply_1q(state, a, gates::hadamard());
                break;
            case GateKind::S:
                apply_1q(state, a, gates::phase_s());
                break;
            case GateKind::RX:
                apply_1q(state, a, gates::rx(angle));
                break;
            case GateKind::RY:
                apply_1q(state, a, gates::ry(angle));
                break;
            case GateKind::RZ:
                apply_1q(state, a, gates::rz(angle));
                break;
            case GateKind::CZ:
                apply_cz(state, a, b);
                break;
            case GateKind::CNOT:
                apply_cnot(state, a, b);
                break;
        }
    }
}

StateVector run(const Circuit &circuit, std::span<const double> theta, const StateVector &input) {
    if (circuit.num_qubits() != input.num_qubits()) {
        throw std::invalid_argument("run: circuit and state qubit counts differ");
    }
    StateVector out = input;
    run_in_place(circuit, theta, out);
    return out;
}

Circuit build_h2_init() {
    Circuit c(3);
    c.h(0).cnot(0, 1);
    return c;
}

Circuit build_h2_ansatz() {
    constexpr size_t kLayers = 3;
    Circuit c(2);
    for (size_t layer = 0; layer < kLayers; ++layer) {
        if (layer > 0) {
            c.cnot(0, 1);
        }
        for (size_t q = 0; q < 2; ++q) {
            c.rx(q, c.new_parameter());
            c.rz(q, c.new_parameter());
        }
    }
    return c;
}

Circuit build_tfim_init(size_t n_physical, size_t n_ancilla) {
    if (n_ancilla == 0 || n_ancilla >= n_physical) {
        throw std::invalid_argument("build_tfim_init: need 1 <= n_ancilla < n_physical");
    }
    Circuit c(n_ancilla + n_physical);
    // R_y(-pi/2)|0> = (|0> - |1>)/sqrt(2).
    for (size_t q = 0; q < c.num_qubits(); ++q) {
        c.ry(q, -std::numbers::pi / 2);
    }
    for (size_t i = 0; i < n_ancilla; ++i) {
        c.cz(i, n_ancilla + i);
    }
    return c;
}

Circuit build_tfim_ansatz(size_t n_physical, size_t layers) {
    if (layers == 0) {
        throw std::invalid_argument("build_tfim_ansatz: need at least one layer");
    }
    if (n_physical < 2) {
        throw std::invalid_argument("build_tfim_ansatz: need at least two sites");
    }
    Circuit c(n_physical);
    for (size_t layer = 0; layer < layers; ++layer) {
        for (size_t i = 0; i + 1 < n_physical; ++i) {
            c.cnot(i, i + 1);
            c.rz(i + 1, c.new_parameter());
            c.cnot(i, i + 1);
        }
        for (size_t i = 0; i < n_physical; ++i) {
            c.rx(i, c.new_parameter());
        }
    }
    return c;
}

}  // namespace aevqe
