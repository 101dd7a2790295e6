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

#include "aevqe/aevqe.h"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "aevqe/errors.h"
#include "aevqe/measurement.h"
#include "aevqe/rng.h"

namespace aevqe {

namespace {

constexpr double kOverlapFloor = 1e-8;
constexpr double kTransformUnitaryTolerance = 1e-8;
constexpr double kZeroBranch = 1e-14;

std::span<const Complex> branch(const StateVector &psi, size_t n_ancilla, size_t m) {
    const size_t width = psi.dimension() >> n_ancilla;
    return psi.amplitudes().subspan(m * width, width);
}

void check_register(const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla) {
    if (psi.num_qubits() != hamiltonian.num_qubits() + n_ancilla) {
        throw std::invalid_argument("state register does not match ancilla + physical qubit counts");
    }
}

}  // namespace

AevqeProblem::AevqeProblem(PauliSum hamiltonian, Circuit init, Circuit ansatz, size_t n_ancilla)
    : hamiltonian_(std::move(hamiltonian)),
      init_(std::move(init)),
      ansatz_(std::move(ansatz)),
      n_ancilla_(n_ancilla),
      initial_state_(1) {
    const size_t np = hamiltonian_.num_qubits();
    if (n_ancilla_ == 0 || n_ancilla_ >= np) {
        throw std::invalid_argument("AevqeProblem: need 1 <= n_ancilla < n_physical");
    }
    if (init_.num_qubits() != n_ancilla_ + np) {
        throw std::invalid_argument("AevqeProblem: init circuit must span ancillas and physical qubits");
    }
    if (init_.num_parameters() != 0) {
        throw std::invalid_argument("AevqeProblem: init circuit must not be parameterized");
    }
    if (ansatz_.num_qubits() != np) {
        throw std::invalid_argument("AevqeProblem: ansatz must act on the physical qubits only");
    }
    initial_state_ = run(init_, {}, StateVector(n_ancilla_ + np));
}

AevqeProblem make_h2_problem(PauliSum hamiltonian) {
    if (hamiltonian.num_qubits() != 2) {
        throw std::invalid_argument("make_h2_problem: Hamiltonian must act on two qubits");
    }
    return AevqeProblem(std::move(hamiltonian), build_h2_init(), build_h2_ansatz(), 1);
}

AevqeProblem make_tfim_problem(PauliSum hamiltonian, size_t n_ancilla, size_t layers) {
    const size_t np = hamiltonian.num_qubits();
    return AevqeProblem(
        std::move(hamiltonian), build_tfim_init(np, n_ancilla), build_tfim_ansatz(np, layers), n_ancilla);
}

StateVector prepare(const AevqeProblem &problem, std::span<const double> theta) {
    StateVector psi = problem.initial_state();
    run_in_place(problem.ansatz(), theta, psi, problem.n_ancilla());
    return psi;
}

double loss_from_state(const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla) {
    check_register(psi, hamiltonian, n_ancilla);
    double total = 0;
    for (size_t m = 0; m < (size_t{1} << n_ancilla); ++m) {
        const auto b = branch(psi, n_ancilla, m);
        total += pauli_matrix_element(b, hamiltonian, b).real();
    }
    return total;
}

double loss(const AevqeProblem &problem, std::span<const double> theta) {
    return loss_from_state(prepare(problem, theta), problem.hamiltonian(), problem.n_ancilla());
}

namespace {

PauliSum lift_to_register(const PauliSum &hamiltonian, size_t n_ancilla) {
    const PauliString id = PauliString::identity(n_ancilla);
    std::vector<PauliTerm> terms;
    terms.reserve(hamiltonian.terms().size());
    for (const auto &t : hamiltonian.terms()) {
        terms.push_back({t.coefficient, id.concat(t.string)});
    }
    return PauliSum(n_ancilla + hamiltonian.num_qubits(), std::move(terms));
}

}  // namespace

std::vector<double> sample_loss_groups(
    const StateVector &psi,
    const PauliSum &hamiltonian,
    size_t n_ancilla,
    uint64_t shots_per_group,
    size_t groups,
    const std::optional<ReadoutModel> &readout,
    uint64_t seed) {
    check_register(psi, hamiltonian, n_ancilla);
    if (shots_per_group == 0 || groups == 0) {
        throw std::invalid_argument("sample_loss_groups: shots and groups must be positive");
    }
    if (readout && readout->num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("sample_loss_groups: readout model must cover the whole register");
    }
    const GroupedObservable grouped = group_qubitwise(lift_to_register(hamiltonian, n_ancilla));
    std::vector<std::vector<double>> probs;
    probs.reserve(grouped.settings.size());
    for (const auto &setting : grouped.settings) {
        probs.push_back(rotated_probabilities(psi, setting.bases));
    }
    std::vector<double> out(groups, grouped.constant);
    for (size_t g = 0; g < groups; ++g) {
        const uint64_t group_seed = derive_seed(seed, g);
        for (size_t k = 0; k < grouped.settings.size(); ++k) {
            out[g] += estimate_setting(probs[k], grouped.settings[k], shots_per_group, readout, derive_seed(group_seed, k));
        }
    }
    return out;
}

double loss_group_variance(
    const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla, uint64_t shots_per_group) {
    check_register(psi, hamiltonian, n_ancilla);
    if (shots_per_group == 0) {
        throw std::invalid_argument("loss_group_variance: shots must be positive");
    }
    const GroupedObservable grouped = group_qubitwise(lift_to_register(hamiltonian, n_ancilla));
    double total = 0;
    for (const auto &setting : grouped.settings) {
        total += setting_moments(rotated_probabilities(psi, setting.bases), setting).variance;
    }
    return total / double(shots_per_group);
}

SubspaceMatrices subspace_from_state(const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla) {
    check_register(psi, hamiltonian, n_ancilla);
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    SubspaceMatrices out{ComplexMatrix(k, k), ComplexMatrix(k, k)};
    for (Eigen::Index m = 0; m < k; ++m) {
        for (Eigen::Index n = 0; n < k; ++n) {
            const auto bm = branch(psi, n_ancilla, size_t(m));
            const auto bn = branch(psi, n_ancilla, size_t(n));
            out.h_sub(m, n) = pauli_matrix_element(bm, hamiltonian, bn);
            Complex overlap = 0;
            for (size_t i = 0; i < bm.size(); ++i) {
                overlap += std::conj(bm[i]) * bn[i];
            }
            out.s(m, n) = overlap;
        }
    }
    return out;
}

SubspaceMatrices build_subspace(const AevqeProblem &problem, std::span<const double> theta) {
    return subspace_from_state(prepare(problem, theta), problem.hamiltonian(), problem.n_ancilla());
}

std::vector<AncillaTerm> ancilla_decomposition(size_t m, size_t n, size_t n_ancilla) {
    if (n_ancilla == 0 || n_ancilla > 16) {
        throw std::invalid_argument("ancilla_decomposition: n_ancilla must be in [1, 16]");
    }
    const size_t k = size_t{1} << n_ancilla;
    if (m >= k || n >= k) {
        throw std::invalid_argument("ancilla_decomposition: index out of range");
    }
    struct Factor {
        Complex coefficient;
        uint64_t x;
        uint64_t z;
    };
    const Complex half(0.5, 0);
    const Complex i_half(0, 0.5);
    std::vector<Factor> acc{{Complex(1, 0), 0, 0}};
    for (size_t j = 0; j < n_ancilla; ++j) {
        const int mj = int((m >> (n_ancilla - 1 - j)) & 1);
        const int nj = int((n >> (n_ancilla - 1 - j)) & 1);
        const uint64_t bit = uint64_t{1} << j;
        std::pair<Complex, char> options[2];
        if (mj == nj) {
            options[0] = {half, 'I'};
            options[1] = {mj == 0 ? half : -half, 'Z'};
        } else {
            options[0] = {half, 'X'};
            options[1] = {mj == 0 ? i_half : -i_half, 'Y'};
        }
        std::vector<Factor> next;
        next.reserve(acc.size() * 2);
        for (const auto &f : acc) {
            for (const auto &[c, p] : options) {
                Factor g = f;
                g.coefficient *= c;
                if (p == 'X' || p == 'Y') {
                    g.x |= bit;
                }
                if (p == 'Z' || p == 'Y') {
                    g.z |= bit;
                }
                next.push_back(g);
            }
        }
        acc = std::move(next);
    }
    std::vector<AncillaTerm> out;
    out.reserve(acc.size());
    for (const auto &f : acc) {
        out.push_back({f.coefficient, PauliString(n_ancilla, f.x, f.z)});
    }
    return out;
}

SubspaceMatrices assemble_subspace(const PauliSum &hamiltonian, size_t n_ancilla, const ExpectationSource &source) {
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    const PauliString physical_identity = PauliString::identity(hamiltonian.num_qubits());
    // Every string is queried once so that entries sharing a string share its estimate.
    std::map<PauliString, double> cache;
    const auto expectation = [&](const PauliString &full) {
        auto it = cache.find(full);
        if (it == cache.end()) {
            it = cache.emplace(full, full.is_identity() ? 1.0 : source(full)).first;
        }
        return it->second;
    };

    SubspaceMatrices out{ComplexMatrix::Zero(k, k), ComplexMatrix::Zero(k, k)};
    for (Eigen::Index m = 0; m < k; ++m) {
        for (Eigen::Index n = 0; n < k; ++n) {
            for (const auto &a : ancilla_decomposition(size_t(m), size_t(n), n_ancilla)) {
                out.s(m, n) += a.coefficient * expectation(a.string.concat(physical_identity));
                for (const auto &t : hamiltonian.terms()) {
                    out.h_sub(m, n) += a.coefficient * t.coefficient * expectation(a.string.concat(t.string));
                }
            }
        }
    }
    out.h_sub = (out.h_sub + out.h_sub.adjoint().eval()) * 0.5;
    out.s = (out.s + out.s.adjoint().eval()) * 0.5;
    return out;
}

SubspaceMatrices sampled_subspace_from_state(
    const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla, const SamplingOptions &options) {
    check_register(psi, hamiltonian, n_ancilla);
    if (options.shots == 0) {
        throw std::invalid_argument("sampled_subspace: shots must be positive");
    }
    if (options.readout && options.readout->num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("sampled_subspace: readout model must cover the whole register");
    }
    const auto source = [&](const PauliString &full) {
        const PauliSum single(full.num_qubits(), {{1.0, full}});
        const MeasurementSetting setting = group_individually(single).settings.front();
        const std::vector<double> probs = rotated_probabilities(psi, setting.bases);
        const uint64_t seed = derive_seed(derive_seed(options.seed, full.x_mask()), full.z_mask());
        return estimate_setting(probs, setting, options.shots, options.readout, seed);
    };
    return assemble_subspace(hamiltonian, n_ancilla, source);
}

SubspaceMatrices sampled_subspace(
    const AevqeProblem &problem, std::span<const double> theta, const SamplingOptions &options) {
    return sampled_subspace_from_state(prepare(problem, theta), problem.hamiltonian(), problem.n_ancilla(), options);
}

Eigen::MatrixXd subspace_standard_errors(
    const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla, uint64_t shots) {
    check_register(psi, hamiltonian, n_ancilla);
    if (shots == 0) {
        throw std::invalid_argument("subspace_standard_errors: shots must be positive");
    }
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index m = 0; m < k; ++m) {
        for (Eigen::Index n = 0; n < k; ++n) {
            double variance = 0;
            for (const auto &a : ancilla_decomposition(size_t(m), size_t(n), n_ancilla)) {
                for (const auto &t : hamiltonian.terms()) {
                    const PauliString full = a.string.concat(t.string);
                    if (full.is_identity()) {
                        continue;
                    }
                    const double e = pauli_expectation(psi, full);
                    variance += std::norm(a.coefficient * t.coefficient) * std::max(0.0, 1.0 - e * e);
                }
            }
            out(m, n) = std::sqrt(variance / double(shots));
        }
    }
    return out;
}

SubspaceSolution solve_subspace(const SubspaceMatrices &sub) {
    const Eigen::Index k = sub.s.rows();
    if (sub.h_sub.rows() != k || sub.h_sub.cols() != k || sub.s.cols() != k) {
        throw std::invalid_argument("solve_subspace: h_sub and s must be square and equally sized");
    }
    const EigenDecomposition overlap = jacobi_eig(sub.s);
    const double smallest = overlap.values.front();
    if (!(smallest > kOverlapFloor)) {
        throw ConditioningError(
            "solve_subspace: overlap matrix is ill-conditioned (smallest eigenvalue " + std::to_string(smallest) + ")",
            smallest);
    }
    Eigen::VectorXcd inv_sqrt(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        inv_sqrt(i) = 1.0 / std::sqrt(overlap.values[size_t(i)]);
    }
    const ComplexMatrix s_inv_sqrt = overlap.vectors * inv_sqrt.asDiagonal() * overlap.vectors.adjoint();
    ComplexMatrix reduced = s_inv_sqrt * sub.h_sub * s_inv_sqrt;
    reduced = (reduced + reduced.adjoint().eval()) * 0.5;
    EigenDecomposition eig = jacobi_eig(reduced);

    SubspaceSolution out;
    out.energies = std::move(eig.values);
    // Eigenvector column i holds branch coefficients c_n of eigenstate i; with
    // T = conj(W) the branch i of (T^dagger (x) I)|psi> is sum_n c_n |branch n>.
    out.transform = eig.vectors.conjugate();
    out.overlap_min_eigenvalue = smallest;
    return out;
}

std::vector<StateVector> extract_eigenstates(const StateVector &psi, const ComplexMatrix &transform, size_t n_ancilla) {
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    if (n_ancilla == 0 || n_ancilla >= psi.num_qubits()) {
        throw std::invalid_argument("extract_eigenstates: need 1 <= n_ancilla < register size");
    }
    if (transform.rows() != k || transform.cols() != k) {
        throw std::invalid_argument("extract_eigenstates: transform must be K x K");
    }
    if (!is_unitary(transform, kTransformUnitaryTolerance)) {
        throw std::invalid_argument("extract_eigenstates: transform is not unitary");
    }
    const size_t np = psi.num_qubits() - n_ancilla;
    const size_t width = size_t{1} << np;
    std::vector<StateVector> out;
    out.reserve(size_t(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        std::vector<Complex> amps(width, Complex{0, 0});
        for (Eigen::Index n = 0; n < k; ++n) {
            const Complex w = std::conj(transform(n, i));
            const auto b = branch(psi, n_ancilla, size_t(n));
            for (size_t j = 0; j < width; ++j) {
                amps[j] += w * b[j];
            }
        }
        StateVector state(np, std::move(amps));
        if (!(state.norm_squared() > kZeroBranch)) {
            throw ZeroNormError("extract_eigenstates: branch " + std::to_string(i) + " has vanishing norm");
        }
        state.normalize();
        out.push_back(std::move(state));
    }
    return out;
}

EigenSolution solve_eigenstates(const AevqeProblem &problem, std::span<const double> theta) {
    const StateVector psi = prepare(problem, theta);
    SubspaceSolution sol = solve_subspace(subspace_from_state(psi, problem.hamiltonian(), problem.n_ancilla()));
    EigenSolution out;
    out.states = extract_eigenstates(psi, sol.transform, problem.n_ancilla());
    out.energies = std::move(sol.energies);
    out.ancilla_transform = std::move(sol.transform);
    return out;
}

SymmetryResult symmetry_verify(const StateVector &state, const PauliSum &hamiltonian, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("symmetry_verify: sign must be +1 or -1");
    }
    if (state.num_qubits() != hamiltonian.num_qubits()) {
        throw std::invalid_argument("symmetry_verify: qubit count mismatch");
    }
    if (!hamiltonian.commutes_with_x_parity()) {
        throw std::invalid_argument("symmetry_verify: Hamiltonian does not commute with the X parity");
    }
    const uint64_t all = state.dimension() - 1;
    std::vector<Complex> amps(state.dimension());
    for (uint64_t b = 0; b < amps.size(); ++b) {
        amps[b] = 0.5 * (state[b] + double(sign) * state[b ^ all]);
    }
    StateVector projected(state.num_qubits(), std::move(amps));
    if (!(projected.norm_squared() > 1e-12)) {
        throw ZeroNormError("symmetry_verify: state has no weight in the requested parity sector");
    }
    projected.normalize();
    const double energy = pauli_expectation(projected, hamiltonian);
    return {energy, std::move(projected)};
}

PauliSum times_x_parity(const PauliSum &hamiltonian) {
    const PauliString parity = PauliString::x_parity(hamiltonian.num_qubits());
    std::vector<PauliTerm> terms;
    terms.reserve(hamiltonian.size());
    for (const auto &t : hamiltonian.terms()) {
        const auto [phase, product] = multiply(t.string, parity);
        if (std::abs(phase.imag()) > 0.5) {
            throw std::invalid_argument("times_x_parity: term " + t.string.label() + " anticommutes with the parity");
        }
        terms.push_back({t.coefficient * phase.real(), product});
    }
    return PauliSum(hamiltonian.num_qubits(), std::move(terms));
}

double verified_energy(const StateVector &state, const PauliSum &hamiltonian, int sign, const VerificationOptions &options) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("verified_energy: sign must be +1 or -1");
    }
    if (state.num_qubits() != hamiltonian.num_qubits()) {
        throw std::invalid_argument("verified_energy: qubit count mismatch");
    }
    const size_t n = state.num_qubits();
    const PauliSum parity(n, {{1.0, PauliString::x_parity(n)}});
    const double e = estimate_observable(state, hamiltonian, options.shots, options.readout, derive_seed(options.seed, 0));
    const double ex = estimate_observable(
        state, times_x_parity(hamiltonian), options.shots, options.readout, derive_seed(options.seed, 1));
    const double x = estimate_observable(state, parity, options.shots, options.readout, derive_seed(options.seed, 2));
    const double weight = 1 + sign * x;
    if (!(weight > 1e-12)) {
        throw ZeroNormError("verified_energy: no weight in the requested parity sector");
    }
    return (e + sign * ex) / weight;
}

int parity_sector(const StateVector &state) {
    return x_parity_expectation(state) < 0 ? -1 : 1;
}

double x_parity_expectation(const StateVector &state) {
    return pauli_expectation(state, PauliString::x_parity(state.num_qubits()));
}

double magnetization(const StateVector &state) {
    const double n = double(state.num_qubits());
    double total = 0;
    for (uint64_t b = 0; b < state.dimension(); ++b) {
        const double ones = double(std::popcount(b));
        total += std::abs(n - 2 * ones) * std::norm(state[b]);
    }
    return total / n;
}

}  // namespace aevqe
