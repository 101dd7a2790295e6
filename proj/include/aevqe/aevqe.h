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

#ifndef AEVQE_AEVQE_H
#define AEVQE_AEVQE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aevqe/circuit.h"
#include "aevqe/linalg.h"
#include "aevqe/pauli.h"
#include "aevqe/statevector.h"

namespace aevqe {

/// Ancilla-entangled eigensolver instance.
///
/// The register holds N_a ancillas (qubits 0..N_a-1, most significant) followed
/// by N_p physical qubits. `init` prepares the entangled reference state on the
/// whole register from |0...0>; `ansatz` acts on the physical qubits only.
/// The ancilla label space has K = 2^{N_a} states, and ancilla basis state
/// |m> tags the physical "branch" amplitudes psi[m * 2^{N_p} .. (m+1) * 2^{N_p}).
class AevqeProblem {
   public:
    /// Throws std::invalid_argument unless 1 <= N_a < N_p and the circuits fit.
    AevqeProblem(PauliSum hamiltonian, Circuit init, Circuit ansatz, size_t n_ancilla);

    const PauliSum &hamiltonian() const {
        return hamiltonian_;
    }
    const Circuit &init() const {
        return init_;
    }
    const Circuit &ansatz() const {
        return ansatz_;
    }
    size_t n_ancilla() const {
        return n_ancilla_;
    }
    size_t n_physical() const {
        return hamiltonian_.num_qubits();
    }
    size_t num_states() const {
        return size_t{1} << n_ancilla_;
    }
    size_t num_parameters() const {
        return ansatz_.num_parameters();
    }
    /// init applied to |0...0>; computed once.
    const StateVector &initial_state() const {
        return initial_state_;
    }

   private:
    PauliSum hamiltonian_;
    Circuit init_;
    Circuit ansatz_;
    size_t n_ancilla_;
    StateVector initial_state_;
};

/// Bell-initialized H2 problem (one ancilla, two physical qubits).
AevqeProblem make_h2_problem(PauliSum hamiltonian);
/// CZ-entangled TFIM-style problem with the Trotter ansatz.
AevqeProblem make_tfim_problem(PauliSum hamiltonian, size_t n_ancilla, size_t layers);

/// (I_a (x) U(theta)) |psi_init>.
StateVector prepare(const AevqeProblem &problem, std::span<const double> theta);

/// Sum over branches of <alpha|H|alpha> with unnormalized branches, i.e. the
/// branch-probability weighted energy. Equals Tr(h_sub) and is bounded below
/// by the mean of the lowest K eigenvalues for maximally entangled inits.
double loss(const AevqeProblem &problem, std::span<const double> theta);
double loss_from_state(const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla);

/// Shot-based loss: I (x) H is split into qubit-wise commuting settings and
/// each group measures every setting with `shots_per_group` samples. Returns
/// one loss estimate per group.
std::vector<double> sample_loss_groups(
    const StateVector &psi,
    const PauliSum &hamiltonian,
    size_t n_ancilla,
    uint64_t shots_per_group,
    size_t groups,
    const std::optional<ReadoutModel> &readout,
    uint64_t seed);

/// Variance of one group estimate from sample_loss_groups for ideal readout.
double loss_group_variance(
    const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla, uint64_t shots_per_group);

struct SubspaceMatrices {
    /// h_sub[m, n] = <psi| (|m><n| (x) H) |psi>.
    ComplexMatrix h_sub;
    /// s[m, n] = <psi| (|m><n| (x) I) |psi>.
    ComplexMatrix s;
};

SubspaceMatrices build_subspace(const AevqeProblem &problem, std::span<const double> theta);
SubspaceMatrices subspace_from_state(const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla);

/// One term of an ancilla operator expanded over Pauli strings.
struct AncillaTerm {
    Complex coefficient;
    PauliString string;
};

/// Expansion of |m><n| on N_a ancillas over Pauli strings, using per qubit
///   |0><0| = (I+Z)/2, |1><1| = (I-Z)/2, |0><1| = (X+iY)/2, |1><0| = (X-iY)/2.
/// Ancilla j is character j of the string and the most significant bit of m, n.
std::vector<AncillaTerm> ancilla_decomposition(size_t m, size_t n, size_t n_ancilla);

/// Returns <A (x) P> for a full-register Pauli string (ancillas first).
using ExpectationSource = std::function<double(const PauliString &)>;

/// Assembles h_sub and s entry by entry from real Pauli expectation values
/// following ancilla_decomposition, then Hermitizes with (M + M^dagger)/2.
SubspaceMatrices assemble_subspace(const PauliSum &hamiltonian, size_t n_ancilla, const ExpectationSource &source);

struct SamplingOptions {
    /// Shots per measured Pauli string.
    uint64_t shots = 15 * 1024;
    std::optional<ReadoutModel> readout;
    uint64_t seed = 0;
};

/// Shot-based h_sub / s: every required A (x) P string is measured in its own
/// rotated basis with `shots` samples, optionally through the readout channel
/// and its mitigation.
SubspaceMatrices sampled_subspace(
    const AevqeProblem &problem, std::span<const double> theta, const SamplingOptions &options);
SubspaceMatrices sampled_subspace_from_state(
    const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla, const SamplingOptions &options);

/// Standard error of each sampled h_sub entry (real and imaginary parts
/// combined) for noiseless readout.
Eigen::MatrixXd subspace_standard_errors(
    const StateVector &psi, const PauliSum &hamiltonian, size_t n_ancilla, uint64_t shots);

struct SubspaceSolution {
    /// Ascending physical energies (branch weights divided out).
    std::vector<double> energies;
    /// Unitary on the ancilla label space. Applying T^dagger (x) I to psi puts
    /// eigenstate i in ancilla branch i.
    ComplexMatrix transform;
    /// Smallest eigenvalue of s.
    double overlap_min_eigenvalue = 0;
};

/// Solves h_sub v = E s v through s^{-1/2} h_sub s^{-1/2}. Throws
/// ConditioningError when the smallest eigenvalue of s is <= 1e-8.
SubspaceSolution solve_subspace(const SubspaceMatrices &sub);

/// State i is the renormalized ancilla-|i> branch of (T^dagger (x) I)|psi>.
/// Throws ZeroNormError on a vanishing branch.
std::vector<StateVector> extract_eigenstates(const StateVector &psi, const ComplexMatrix &transform, size_t n_ancilla);

struct EigenSolution {
    std::vector<double> energies;
    ComplexMatrix ancilla_transform;
    std::vector<StateVector> states;
};

/// build_subspace + solve_subspace + extract_eigenstates at fixed theta.
EigenSolution solve_eigenstates(const AevqeProblem &problem, std::span<const double> theta);

struct SymmetryResult {
    double energy = 0;
    StateVector projected;
};

/// Projects onto the sign = +1 or -1 eigenspace of X on every qubit and
/// returns the energy of the normalized projection. H must commute with that
/// parity. Throws ZeroNormError when nothing survives the projection.
SymmetryResult symmetry_verify(const StateVector &state, const PauliSum &hamiltonian, int sign);

/// H * (X on every qubit) as a real Pauli sum. Requires H to commute with the
/// parity so that every product term is Hermitian.
PauliSum times_x_parity(const PauliSum &hamiltonian);

struct VerificationOptions {
    /// Shots per measured setting; 0 evaluates the expectations exactly.
    uint64_t shots = 0;
    std::optional<ReadoutModel> readout;
    uint64_t seed = 0;
};

/// Energy of the sector-projected state from measurable expectations,
///   (<H> + sign <H X..X>) / (1 + sign <X..X>),
/// which equals symmetry_verify(...).energy when evaluated exactly. Throws
/// ZeroNormError when the estimated sector weight is not positive.
double verified_energy(const StateVector &state, const PauliSum &hamiltonian, int sign, const VerificationOptions &options);

/// Sector used to verify a state: the sign of its <X..X>, +1 on ties.
int parity_sector(const StateVector &state);

/// <X...X> on the state.
double x_parity_expectation(const StateVector &state);

/// (1/n) sum_s |n - 2s| P(s) with P(s) the weight of basis states with s ones.
double magnetization(const StateVector &state);

}  // namespace aevqe

#endif
