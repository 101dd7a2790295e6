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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "aevqe/errors.h"
#include "aevqe/gates.h"
#include "test_util.h"

namespace aevqe {
namespace {

using testing::dense_label;
using testing::dense_sum;
using testing::random_angles;

PauliSum h2_file(const char *name) {
    return load_pauli_sum_file(std::filesystem::path(AEVQE_SOURCE_DIR) / "data" / "h2" / name);
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937_64 &rng) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(testing::random_hermitian(n, rng) +
                                                  std::complex<double>(0, 1) * testing::random_hermitian(n, rng));
    return qr.householderQ();
}

// |m><n| (x) H as a dense matrix over the full register.
Eigen::MatrixXcd dense_transition(size_t m, size_t n, size_t n_ancilla, const PauliSum &h) {
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(k, k);
    e(Eigen::Index(m), Eigen::Index(n)) = 1;
    return testing::kron(e, dense_sum(h));
}

SubspaceMatrices dense_subspace(const StateVector &psi, const PauliSum &h, size_t n_ancilla) {
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    const PauliSum id(h.num_qubits(), {{1.0, PauliString::identity(h.num_qubits())}});
    const Eigen::VectorXcd v = psi.to_eigen();
    SubspaceMatrices out{ComplexMatrix(k, k), ComplexMatrix(k, k)};
    for (Eigen::Index m = 0; m < k; ++m) {
        for (Eigen::Index n = 0; n < k; ++n) {
            out.h_sub(m, n) = v.dot(dense_transition(size_t(m), size_t(n), n_ancilla, h) * v);
            out.s(m, n) = v.dot(dense_transition(size_t(m), size_t(n), n_ancilla, id) * v);
        }
    }
    return out;
}

std::vector<AevqeProblem> presets() {
    std::vector<AevqeProblem> out;
    out.push_back(make_h2_problem(h2_file("h2_d0.70.txt")));
    out.push_back(make_tfim_problem(tfim_hamiltonian(3, 1, 0.4), 1, 3));
    out.push_back(make_tfim_problem(tfim_hamiltonian(3, 1, 0.5), 2, 3));
    out.push_back(make_tfim_problem(tfim_hamiltonian(5, 1, 1.0), 1, 6));
    return out;
}

double lowest_mean(const PauliSum &h, size_t k) {
    const auto levels = testing::eigen_spectrum(dense_sum(h));
    double total = 0;
    for (size_t i = 0; i < k; ++i) {
        total += levels[i];
    }
    return total / double(k);
}

// Optimized parameters from the test-side optimizer (exact loss, best of a
// few starts).
std::vector<double> optimize(const AevqeProblem &p, uint64_t seed, int starts = 3, int iterations = 1500) {
    std::mt19937_64 rng(seed);
    const auto f = [&](const std::vector<double> &t) { return loss(p, t); };
    std::vector<double> best;
    double best_loss = 1e300;
    for (int s = 0; s < starts; ++s) {
        auto t = testing::adam_parameter_shift(f, random_angles(p.num_parameters(), 1.0, rng), iterations);
        if (f(t) < best_loss) {
            best_loss = f(t);
            best = t;
        }
    }
    return best;
}

TEST(Problem, Validation) {
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    EXPECT_THROW(make_tfim_problem(h, 0, 2), std::invalid_argument);
    EXPECT_THROW(make_tfim_problem(h, 3, 2), std::invalid_argument);
    EXPECT_THROW(AevqeProblem(h, build_tfim_init(3, 1), build_tfim_ansatz(4, 1), 1), std::invalid_argument);
    EXPECT_THROW(AevqeProblem(h, build_tfim_init(3, 2), build_tfim_ansatz(3, 1), 1), std::invalid_argument);
    Circuit param_init(4);
    param_init.rx(0, param_init.new_parameter());
    EXPECT_THROW(AevqeProblem(h, param_init, build_tfim_ansatz(3, 1), 1), std::invalid_argument);
    EXPECT_THROW(make_h2_problem(h), std::invalid_argument);
    const AevqeProblem p = make_tfim_problem(h, 2, 2);
    EXPECT_EQ(p.num_states(), 4u);
    EXPECT_EQ(p.n_physical(), 3u);
    EXPECT_EQ(p.num_parameters(), 10u);
}

TEST(Prepare, ZeroAnglesGiveInitState) {
    const AevqeProblem p = make_tfim_problem(tfim_hamiltonian(3, 1, 0.4), 1, 2);
    const std::vector<double> zero(p.num_parameters(), 0.0);
    const StateVector psi = prepare(p, zero);
    EXPECT_LT((psi.to_eigen() - p.initial_state().to_eigen()).norm(), 1e-12);
}

TEST(Prepare, NormAndAncillaPopulations) {
    std::mt19937_64 rng(51);
    for (const auto &p : presets()) {
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector psi = prepare(p, random_angles(p.num_parameters(), std::numbers::pi, rng));
            EXPECT_NEAR(psi.norm_squared(), 1, 1e-10);
            std::vector<size_t> anc(p.n_ancilla());
            for (size_t i = 0; i < anc.size(); ++i) {
                anc[i] = i;
            }
            for (size_t m = 0; m < p.num_states(); ++m) {
                EXPECT_NEAR(project(psi, anc, basis_label(m, p.n_ancilla())).probability, 1.0 / double(p.num_states()),
                            1e-12);
            }
        }
    }
}

TEST(Loss, ConstantHamiltonian) {
    std::mt19937_64 rng(52);
    const AevqeProblem p = make_tfim_problem(PauliSum(3, {{-1.25, PauliString::identity(3)}}), 1, 2);
    for (int trial = 0; trial < 5; ++trial) {
        EXPECT_NEAR(loss(p, random_angles(p.num_parameters(), 3.0, rng)), -1.25, 1e-12);
    }
}

TEST(Loss, ZeroAngleClosedForm) {
    // Branches |---> and -|+-->: ZZ terms vanish in X-basis product states and
    // each X term contributes -h on |-> and +h on |+>.
    const double h = 0.4;
    const AevqeProblem p = make_tfim_problem(tfim_hamiltonian(3, 1, h), 1, 2);
    const double branch0 = -3 * h;
    const double branch1 = h - 2 * h;
    const std::vector<double> zero(p.num_parameters(), 0.0);
    EXPECT_NEAR(loss(p, zero), 0.5 * branch0 + 0.5 * branch1, 1e-12);
}

TEST(Loss, MatchesDenseOracleAndBound) {
    std::mt19937_64 rng(53);
    for (const auto &p : presets()) {
        const PauliSum &h = p.hamiltonian();
        Eigen::MatrixXcd lifted = testing::kron(Eigen::MatrixXcd::Identity(Eigen::Index(p.num_states()), Eigen::Index(p.num_states())),
                                                dense_sum(h));
        const double bound = lowest_mean(h, p.num_states());
        for (int trial = 0; trial < 20; ++trial) {
            const auto theta = random_angles(p.num_parameters(), std::numbers::pi, rng);
            const Eigen::VectorXcd v = prepare(p, theta).to_eigen();
            const double l = loss(p, theta);
            EXPECT_NEAR(l, v.dot(lifted * v).real(), 1e-10);
            EXPECT_GE(l, bound - 1e-9);
        }
    }
}

TEST(Loss, OptimizedReachesOracleOptimum) {
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    const AevqeProblem p = make_tfim_problem(h, 1, 3);
    const auto theta = optimize(p, 1);
    EXPECT_LT(loss(p, theta) - lowest_mean(h, 2), 1e-3);
}

TEST(Subspace, H2IdentityAnsatzClosedForm) {
    const PauliSum h = h2_file("h2_d0.70.txt");
    const double c0 = h.coefficient(PauliString::from_label("II"));
    const double c1 = h.coefficient(PauliString::from_label("ZI"));
    const double c2 = h.coefficient(PauliString::from_label("XI"));
    const double c3 = h.coefficient(PauliString::from_label("ZZ"));
    const AevqeProblem p = make_h2_problem(h);
    const std::vector<double> zero(p.num_parameters(), 0.0);
    const SubspaceMatrices sub = build_subspace(p, zero);
    EXPECT_NEAR(std::abs(sub.h_sub(0, 0) - 0.5 * (c0 + c1 + c3)), 0, 1e-12);
    EXPECT_NEAR(std::abs(sub.h_sub(1, 1) - 0.5 * (c0 - c1 - c3)), 0, 1e-12);
    EXPECT_NEAR(std::abs(sub.h_sub(0, 1) - 0.5 * c2), 0, 1e-12);
    EXPECT_NEAR(std::abs(sub.h_sub(1, 0) - 0.5 * c2), 0, 1e-12);
    EXPECT_LT((sub.s - 0.5 * ComplexMatrix::Identity(2, 2)).norm(), 1e-12);

    // Energies are the eigenvalues of the 2x2 block without the 1/2.
    const double a = c0 + c1 + c3;
    const double d = c0 - c1 - c3;
    const double r = std::sqrt((a - d) * (a - d) / 4 + c2 * c2);
    const SubspaceSolution sol = solve_subspace(sub);
    EXPECT_NEAR(sol.energies[0], (a + d) / 2 - r, 1e-12);
    EXPECT_NEAR(sol.energies[1], (a + d) / 2 + r, 1e-12);
}

TEST(Subspace, MatchesDenseOracle) {
    std::mt19937_64 rng(54);
    for (const auto &p : presets()) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto theta = random_angles(p.num_parameters(), std::numbers::pi, rng);
            const SubspaceMatrices sub = build_subspace(p, theta);
            const SubspaceMatrices ref = dense_subspace(prepare(p, theta), p.hamiltonian(), p.n_ancilla());
            EXPECT_LT((sub.h_sub - ref.h_sub).norm(), 1e-10);
            EXPECT_LT((sub.s - ref.s).norm(), 1e-12);
        }
    }
}

TEST(Subspace, TraceHermiticityAndOverlap) {
    std::mt19937_64 rng(55);
    for (const auto &p : presets()) {
        const double k = double(p.num_states());
        for (int trial = 0; trial < 20; ++trial) {
            const auto theta = random_angles(p.num_parameters(), std::numbers::pi, rng);
            const SubspaceMatrices sub = build_subspace(p, theta);
            EXPECT_LT((sub.h_sub - sub.h_sub.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_NEAR(sub.h_sub.trace().real(), loss(p, theta), 1e-12);
            EXPECT_LT((sub.s - ComplexMatrix::Identity(sub.s.rows(), sub.s.cols()) / k).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(AncillaDecomposition, ReproducesTransitionOperators) {
    for (size_t na : {1, 2, 3}) {
        const size_t k = size_t{1} << na;
        for (size_t m = 0; m < k; ++m) {
            for (size_t n = 0; n < k; ++n) {
                Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(Eigen::Index(k), Eigen::Index(k));
                const auto terms = ancilla_decomposition(m, n, na);
                EXPECT_EQ(terms.size(), k);
                for (const auto &t : terms) {
                    sum += t.coefficient * dense_label(t.string.label());
                }
                Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(Eigen::Index(k), Eigen::Index(k));
                want(Eigen::Index(m), Eigen::Index(n)) = 1;
                EXPECT_LT((sum - want).norm(), 1e-15) << na << " " << m << " " << n;
            }
        }
    }
    // One ancilla: |0><1| = (X + iY)/2.
    const auto t01 = ancilla_decomposition(0, 1, 1);
    ASSERT_EQ(t01.size(), 2u);
    EXPECT_EQ(t01[0].string.label(), "X");
    EXPECT_EQ(t01[0].coefficient, Complex(0.5, 0));
    EXPECT_EQ(t01[1].string.label(), "Y");
    EXPECT_EQ(t01[1].coefficient, Complex(0, 0.5));
    EXPECT_THROW(ancilla_decomposition(2, 0, 1), std::invalid_argument);
    EXPECT_THROW(ancilla_decomposition(0, 0, 0), std::invalid_argument);
}

TEST(AncillaDecomposition, InfiniteShotSubstitution) {
    // Exact expectations fed through the Pauli-string decomposition give the
    // analytic matrices, including entry [2,1] of the two-ancilla problem.
    std::mt19937_64 rng(56);
    for (const auto &p : presets()) {
        const auto theta = random_angles(p.num_parameters(), std::numbers::pi, rng);
        const StateVector psi = prepare(p, theta);
        const SubspaceMatrices exact = build_subspace(p, theta);
        size_t queries = 0;
        const SubspaceMatrices assembled =
            assemble_subspace(p.hamiltonian(), p.n_ancilla(), [&](const PauliString &full) {
                ++queries;
                return pauli_expectation(psi, full);
            });
        EXPECT_LT((assembled.h_sub - exact.h_sub).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((assembled.s - exact.s).cwiseAbs().maxCoeff(), 1e-12);
        // Each distinct string is measured once: K^2 ancilla strings times
        // (terms + identity) minus the all-identity string.
        const size_t k2 = p.num_states() * p.num_states();
        const bool has_identity = p.hamiltonian().coefficient(PauliString::identity(p.n_physical())) != 0;
        EXPECT_EQ(queries, k2 * (p.hamiltonian().size() + (has_identity ? 0 : 1)) - 1);
        if (p.n_ancilla() == 2) {
            EXPECT_GT(std::abs(exact.h_sub(2, 1) - exact.h_sub(2, 0)), 1e-6);
        }
    }
}

TEST(SampledSubspace, H2WithinFiveStandardErrors) {
    std::mt19937_64 rng(57);
    const AevqeProblem p = make_h2_problem(h2_file("h2_d0.70.txt"));
    const auto theta = random_angles(p.num_parameters(), 1.0, rng);
    const StateVector psi = prepare(p, theta);
    const SubspaceMatrices exact = build_subspace(p, theta);
    SamplingOptions opts;
    opts.seed = 3;
    const SubspaceMatrices sampled = sampled_subspace(p, theta, opts);
    const Eigen::MatrixXd se = subspace_standard_errors(psi, p.hamiltonian(), 1, opts.shots);
    for (Eigen::Index m = 0; m < 2; ++m) {
        for (Eigen::Index n = 0; n < 2; ++n) {
            EXPECT_LT(std::abs(sampled.h_sub(m, n) - exact.h_sub(m, n)), 5 * se(m, n));
            EXPECT_GT(se(m, n), 0);
        }
    }
    EXPECT_LT((sampled.h_sub - sampled.h_sub.adjoint()).norm(), 1e-15);
    // Same seed, same estimate.
    EXPECT_EQ(sampled.h_sub, sampled_subspace(p, theta, opts).h_sub);
    opts.shots = 0;
    EXPECT_THROW(sampled_subspace(p, theta, opts), std::invalid_argument);
}

TEST(SampledSubspace, ReadoutMitigationRemovesBias) {
    std::mt19937_64 rng(58);
    const AevqeProblem p = make_tfim_problem(tfim_hamiltonian(3, 1, 0.5), 1, 2);
    const auto theta = random_angles(p.num_parameters(), 1.0, rng);
    const SubspaceMatrices exact = build_subspace(p, theta);
    SamplingOptions opts;
    opts.readout = ReadoutModel::uniform(4, 0.03, 0.02);
    ComplexMatrix mean = ComplexMatrix::Zero(2, 2);
    const int reps = 40;
    for (int r = 0; r < reps; ++r) {
        opts.seed = uint64_t(r);
        mean += sampled_subspace(p, theta, opts).h_sub / double(reps);
    }
    EXPECT_LT((mean - exact.h_sub).cwiseAbs().maxCoeff(), 5e-3);
    opts.readout = ReadoutModel::uniform(3, 0.03, 0.02);
    EXPECT_THROW(sampled_subspace(p, theta, opts), std::invalid_argument);
}

TEST(SolveSubspace, DiagonalExample) {
    SubspaceMatrices sub{ComplexMatrix::Zero(2, 2), ComplexMatrix::Identity(2, 2) / 2.0};
    sub.h_sub(0, 0) = 0.7 / 2;
    sub.h_sub(1, 1) = -0.3 / 2;
    const SubspaceSolution sol = solve_subspace(sub);
    EXPECT_NEAR(sol.energies[0], -0.3, 1e-14);
    EXPECT_NEAR(sol.energies[1], 0.7, 1e-14);
    EXPECT_NEAR(sol.overlap_min_eigenvalue, 0.5, 1e-15);
    EXPECT_TRUE(is_unitary(sol.transform, 1e-12));
}

TEST(SolveSubspace, IllConditionedOverlap) {
    SubspaceMatrices sub{ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 2)};
    sub.s(0, 0) = 1;
    sub.s(1, 1) = 1e-10;
    try {
        solve_subspace(sub);
        FAIL() << "expected ConditioningError";
    } catch (const ConditioningError &e) {
        EXPECT_NEAR(e.smallest(), 1e-10, 1e-15);
    }
    EXPECT_THROW(solve_subspace({ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(2, 2)}), std::invalid_argument);
}

// (1/sqrt K) sum_m |m> (x) |E_m> re-mixed on the ancilla by a random unitary.
StateVector perfect_state(const PauliSum &h, size_t n_ancilla, const Eigen::MatrixXcd &mix) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_sum(h));
    const Eigen::Index k = Eigen::Index{1} << n_ancilla;
    const Eigen::Index d = es.eigenvectors().rows();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(k * d);
    for (Eigen::Index m = 0; m < k; ++m) {
        for (Eigen::Index a = 0; a < k; ++a) {
            v.segment(a * d, d) += mix(a, m) * es.eigenvectors().col(m) / std::sqrt(double(k));
        }
    }
    return StateVector(n_ancilla + h.num_qubits(), std::vector<Complex>(v.data(), v.data() + v.size()));
}

TEST(SolveSubspace, PerfectStateRecoversSpectrumUnderRemixing) {
    std::mt19937_64 rng(59);
    for (size_t na : {1, 2}) {
        const PauliSum h = tfim_hamiltonian(3, 1, 0.7);
        const auto levels = testing::eigen_spectrum(dense_sum(h));
        const Eigen::Index k = Eigen::Index{1} << na;
        std::vector<double> reference;
        for (int trial = 0; trial < 10; ++trial) {
            const Eigen::MatrixXcd mix = trial == 0 ? Eigen::MatrixXcd::Identity(k, k) : random_unitary(k, rng);
            const StateVector psi = perfect_state(h, na, mix);
            const SubspaceSolution sol = solve_subspace(subspace_from_state(psi, h, na));
            for (Eigen::Index i = 0; i < k; ++i) {
                EXPECT_NEAR(sol.energies[size_t(i)], levels[size_t(i)], 1e-10);
            }
            if (trial == 0) {
                reference = sol.energies;
            }
            for (size_t i = 0; i < reference.size(); ++i) {
                EXPECT_NEAR(sol.energies[i], reference[i], 1e-10);
            }
            // Extracted states are the exact eigenvectors.
            const auto states = extract_eigenstates(psi, sol.transform, na);
            for (size_t i = 0; i < states.size(); ++i) {
                const StateVector hs = apply_pauli_sum(h, states[i]);
                EXPECT_LT((hs.to_eigen() - levels[i] * states[i].to_eigen()).norm(), 1e-8);
            }
        }
    }
}

TEST(ExtractEigenstates, IdentityTransformOnH2) {
    const AevqeProblem p = make_h2_problem(h2_file("h2_d0.70.txt"));
    const std::vector<double> zero(p.num_parameters(), 0.0);
    const auto states = extract_eigenstates(prepare(p, zero), ComplexMatrix::Identity(2, 2), 1);
    ASSERT_EQ(states.size(), 2u);
    EXPECT_NEAR(std::abs(states[0][basis_index("00")]), 1, 1e-12);
    EXPECT_NEAR(std::abs(states[1][basis_index("10")]), 1, 1e-12);
}

TEST(ExtractEigenstates, TraceInvariance) {
    std::mt19937_64 rng(60);
    for (const auto &p : presets()) {
        const StateVector psi = prepare(p, random_angles(p.num_parameters(), std::numbers::pi, rng));
        const SubspaceMatrices sub = subspace_from_state(psi, p.hamiltonian(), p.n_ancilla());
        const Eigen::Index k = Eigen::Index(p.num_states());
        const Eigen::MatrixXcd t = random_unitary(k, rng);
        const auto states = extract_eigenstates(psi, t, p.n_ancilla());
        // Branch weight of state i is (T^dagger s T)_ii.
        const Eigen::MatrixXcd w = t.adjoint() * sub.s * t;
        double total = 0;
        for (Eigen::Index i = 0; i < k; ++i) {
            total += w(i, i).real() * pauli_expectation(states[size_t(i)], p.hamiltonian());
        }
        EXPECT_NEAR(total, sub.h_sub.trace().real(), 1e-10);
    }
}

TEST(ExtractEigenstates, Errors) {
    const AevqeProblem p = make_h2_problem(h2_file("h2_d0.70.txt"));
    const std::vector<double> zero(p.num_parameters(), 0.0);
    const StateVector psi = prepare(p, zero);
    EXPECT_THROW(extract_eigenstates(psi, 2.0 * ComplexMatrix::Identity(2, 2), 1), std::invalid_argument);
    EXPECT_THROW(extract_eigenstates(psi, ComplexMatrix::Identity(4, 4), 1), std::invalid_argument);
    // A state with nothing in ancilla branch 1.
    StateVector half(3);
    EXPECT_THROW(extract_eigenstates(half, ComplexMatrix::Identity(2, 2), 1), ZeroNormError);
}

TEST(SolveEigenstates, OptimizedTfimGroundState) {
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    const AevqeProblem p = make_tfim_problem(h, 1, 3);
    const EigenSolution sol = solve_eigenstates(p, optimize(p, 2));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_sum(h));
    const Eigen::VectorXcd g = es.eigenvectors().col(0);
    EXPECT_GT(std::norm(g.dot(sol.states[0].to_eigen())), 0.999);
    EXPECT_NEAR(sol.energies[0], es.eigenvalues()[0], 1e-3);
    EXPECT_NEAR(sol.energies[1], es.eigenvalues()[1], 1e-3);
}

Eigen::VectorXcd oracle_vector(const PauliSum &h, Eigen::Index i) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_sum(h));
    return es.eigenvectors().col(i);
}

StateVector to_state(size_t n, const Eigen::VectorXcd &v) {
    return StateVector(n, std::vector<Complex>(v.data(), v.data() + v.size()));
}

TEST(Symmetry, OracleSectors) {
    // With a positive field each site prefers |->, so the ground state sits in
    // the (-1)^n sector of the X parity and the first excited state in the other.
    for (size_t n : {2, 3, 4, 5}) {
        for (double hx : {0.25, 0.5, 1.0, 2.0}) {
            const PauliSum h = tfim_hamiltonian(n, 1, hx);
            const Eigen::MatrixXcd x = dense_label(std::string(n, 'X'));
            const Eigen::VectorXcd g = oracle_vector(h, 0);
            const Eigen::VectorXcd e = oracle_vector(h, 1);
            const double parity_sign = (n % 2) ? -1.0 : 1.0;
            EXPECT_NEAR(g.dot(x * g).real(), parity_sign, 1e-8) << n << " " << hx;
            EXPECT_NEAR(e.dot(x * e).real(), -parity_sign, 1e-8) << n << " " << hx;
            EXPECT_EQ(parity_sector(to_state(n, g)), int(parity_sign));
        }
    }
}

TEST(Symmetry, EigenstatesAreFixedPoints) {
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    const auto levels = testing::eigen_spectrum(dense_sum(h));
    for (Eigen::Index i : {0, 1}) {
        const StateVector s = to_state(3, oracle_vector(h, i));
        const SymmetryResult r = symmetry_verify(s, h, parity_sector(s));
        EXPECT_NEAR(r.energy, levels[size_t(i)], 1e-10);
        EXPECT_NEAR(fidelity(r.projected, s), 1, 1e-10);
    }
}

TEST(Symmetry, InjectedZErrorIsProjectedOut) {
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    const double e0 = testing::eigen_spectrum(dense_sum(h))[0];
    const StateVector g = to_state(3, oracle_vector(h, 0));
    const int sector = parity_sector(g);
    for (size_t q = 0; q < 3; ++q) {
        for (double eps : {0.1, 0.3, 0.6}) {
            // cos(eps) g - i sin(eps) Z_q g.
            StateVector bad = g;
            StateVector zg = g;
            apply_1q(zg, q, gates::rz(std::numbers::pi));
            for (size_t b = 0; b < bad.dimension(); ++b) {
                // R_z(pi) = -i Z.
                bad[b] = std::cos(eps) * g[b] + std::sin(eps) * zg[b];
            }
            const double raw = pauli_expectation(bad, h);
            const SymmetryResult r = symmetry_verify(bad, h, sector);
            EXPECT_LT(std::abs(r.energy - e0), std::abs(raw - e0));
            EXPECT_NEAR(r.energy, e0, 1e-10);
        }
    }
}

TEST(Symmetry, WrongSectorThrows) {
    StateVector plus(3);
    for (size_t q = 0; q < 3; ++q) {
        apply_1q(plus, q, gates::hadamard());
    }
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    EXPECT_THROW(symmetry_verify(plus, h, -1), ZeroNormError);
    EXPECT_THROW(verified_energy(plus, h, -1, {}), ZeroNormError);
    EXPECT_THROW(symmetry_verify(plus, h, 0), std::invalid_argument);
    EXPECT_THROW(symmetry_verify(plus, PauliSum(3, {{1.0, PauliString::from_label("ZII")}}), 1), std::invalid_argument);
    EXPECT_EQ(parity_sector(plus), 1);
}

TEST(Symmetry, TimesParityMatchesDense) {
    for (size_t n : {2, 3, 5}) {
        const PauliSum h = tfim_hamiltonian(n, 0.8, 1.3);
        const Eigen::MatrixXcd want = dense_sum(h) * dense_label(std::string(n, 'X'));
        EXPECT_LT((dense_sum(times_x_parity(h)) - want).norm(), 1e-12);
    }
    EXPECT_THROW(times_x_parity(PauliSum(2, {{1.0, PauliString::from_label("ZI")}})), std::invalid_argument);
}

TEST(Symmetry, VerifiedEnergyExpansion) {
    std::mt19937_64 rng(61);
    const PauliSum h = tfim_hamiltonian(3, 1, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector s = testing::random_state(3, rng);
        for (int sign : {1, -1}) {
            EXPECT_NEAR(verified_energy(s, h, sign, {}), symmetry_verify(s, h, sign).energy, 1e-10);
        }
        VerificationOptions shots;
        shots.shots = 200000;
        shots.seed = uint64_t(trial);
        EXPECT_NEAR(verified_energy(s, h, 1, shots), symmetry_verify(s, h, 1).energy, 0.1);
    }
}

TEST(Magnetization, Examples) {
    EXPECT_DOUBLE_EQ(magnetization(StateVector(3)), 1.0);
    EXPECT_DOUBLE_EQ(magnetization(init_basis_state(3, "111")), 1.0);
    StateVector uniform(3);
    for (size_t q = 0; q < 3; ++q) {
        apply_1q(uniform, q, gates::hadamard());
    }
    // P(s) = C(3, s)/8; |3 - 2s| = 3, 1, 1, 3.
    EXPECT_NEAR(magnetization(uniform), (3.0 * 1 + 1.0 * 3 + 1.0 * 3 + 3.0 * 1) / 8 / 3, 1e-15);
    EXPECT_NEAR(magnetization(uniform), 0.5, 1e-15);
}

TEST(Magnetization, OracleGroundStateMonotone) {
    for (size_t n : {3, 5}) {
        double previous = 2;
        for (int i = 0; i <= 8; ++i) {
            const double hx = 0.25 * i;
            const double mz = magnetization(to_state(n, oracle_vector(tfim_hamiltonian(n, 1, hx), 0)));
            if (i == 0) {
                // The h = 0 ground space is {000, 111}; any state in it has m_z = 1.
                EXPECT_NEAR(mz, 1.0, 1e-12);
            }
            EXPECT_LE(mz, previous + 1e-12) << n << " " << hx;
            EXPECT_GE(mz, 0);
            previous = mz;
        }
    }
}

TEST(LossGroups, MeanAndVarianceMatchAnalytic) {
    std::mt19937_64 rng(62);
    const AevqeProblem p = make_h2_problem(h2_file("h2_d0.70.txt"));
    const auto theta = random_angles(p.num_parameters(), 1.0, rng);
    const StateVector psi = prepare(p, theta);
    const uint64_t shots = 3 * 1024;
    const double var = loss_group_variance(psi, p.hamiltonian(), 1, shots);
    const auto groups = sample_loss_groups(psi, p.hamiltonian(), 1, shots, 400, std::nullopt, 5);
    double mean = 0;
    for (double g : groups) {
        mean += g / double(groups.size());
    }
    double sample_var = 0;
    for (double g : groups) {
        sample_var += (g - mean) * (g - mean) / double(groups.size() - 1);
    }
    EXPECT_NEAR(mean, loss(p, theta), 5 * std::sqrt(var / double(groups.size())));
    // Sample variance of 400 normal draws is within ~20% of the truth.
    EXPECT_NEAR(sample_var / var, 1.0, 0.2);
    EXPECT_THROW(sample_loss_groups(psi, p.hamiltonian(), 1, 0, 5, std::nullopt, 1), std::invalid_argument);
}

}  // namespace
}  // namespace aevqe
