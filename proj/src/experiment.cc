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


#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "aevqe/errors.h"
#include "aevqe/experiment.h"
#include "aevqe/measurement.h"
#include "aevqe/rng.h"

namespace aevqe {

namespace {

std::optional<ReadoutModel> readout_model(const ExperimentConfig &config, size_t num_qubits) {
    if (!config.readout) {
        return std::nullopt;
    }
    return ReadoutModel::uniform(num_qubits, config.readout->p01, config.readout->p10);
}

StateVector column_state(const ComplexMatrix &vectors, Eigen::Index column, size_t num_qubits) {
    std::vector<Complex> amps(size_t(vectors.rows()));
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
        amps[size_t(r)] = vectors(r, column);
    }
    return StateVector(num_qubits, std::move(amps));
}

double max_abs(const ComplexMatrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

AevqeProblem make_problem(const ExperimentConfig &config, const PauliSum &hamiltonian) {
    if (config.kind == ExperimentKind::H2Curve) {
        return make_h2_problem(hamiltonian);
    }
    return make_tfim_problem(hamiltonian, config.n_ancilla, config.layers);
}

PointResult run_point(const ExperimentConfig &config, const SweepPoint &point, size_t index) {
    const auto start = std::chrono::steady_clock::now();
    PointResult out;
    out.index = index;
    out.value = point.value;
    out.label = point.label;
    try {
        const AevqeProblem problem = make_problem(config, point.hamiltonian);
        const PauliSum &h = problem.hamiltonian();
        const size_t na = problem.n_ancilla();
        const size_t k = problem.num_states();
        const Spectrum spectrum = exact_spectrum(h, true);
        out.oracle.assign(spectrum.values.begin(), spectrum.values.begin() + std::ptrdiff_t(k));
        double bound = 0;
        for (double e : out.oracle) {
            bound += e;
        }
        out.loss_bound = bound / double(k);
        out.mz_oracle = magnetization(column_state(spectrum.vectors, 0, h.num_qubits()));

        const uint64_t point_seed = derive_seed(config.seed, index);
        const bool shots = config.mode == Mode::Shots;
        const std::optional<ReadoutModel> readout = readout_model(config, na + h.num_qubits());
        const uint64_t shots_per_group = config.shots / config.spsa.groups;
        const Objective objective = [&](std::span<const double> theta, uint64_t seed) {
            if (!shots) {
                return LossSample{loss(problem, theta), {}};
            }
            const StateVector psi = prepare(problem, theta);
            LossSample s;
            s.groups = sample_loss_groups(psi, h, na, shots_per_group, config.spsa.groups, readout, seed);
            for (double g : s.groups) {
                s.value += g;
            }
            s.value /= double(s.groups.size());
            return s;
        };

        std::optional<SpsaResult> best;
        for (size_t r = 0; r < config.restarts; ++r) {
            const uint64_t run_seed = derive_seed(point_seed, r);
            Rng rng(derive_seed(run_seed, 1));
            std::vector<double> theta0(problem.num_parameters());
            for (double &t : theta0) {
                t = config.init_scale * (2 * uniform01(rng) - 1);
            }
            SpsaConfig sc = config.spsa;
            sc.seed = derive_seed(run_seed, 2);
            if (config.stop_within) {
                sc.target_loss = out.loss_bound + *config.stop_within;
            }
            if (shots && !sc.variance_threshold) {
                sc.variance_threshold =
                    config.threshold_factor * loss_group_variance(prepare(problem, theta0), h, na, shots_per_group);
            }
            SpsaResult res = spsa_minimize(objective, theta0, sc);
            out.evaluations += res.trace.evaluations;
            out.repeats += res.trace.repeats;
            if (!best || res.trace.best_loss < best->trace.best_loss) {
                best = std::move(res);
            }
        }
        out.theta = best->theta;
        out.iterations = best->trace.accepted_iterations;
        out.reached_target = best->trace.reached_target;
        out.trace = std::move(best->trace);

        const StateVector psi = prepare(problem, out.theta);
        out.final_loss = loss_from_state(psi, h, na);
        const SubspaceMatrices exact = subspace_from_state(psi, h, na);
        out.overlap_deviation = max_abs(exact.s - ComplexMatrix::Identity(exact.s.rows(), exact.s.cols()) / double(k));
        out.hermiticity_deviation = max_abs(exact.h_sub - exact.h_sub.adjoint());

        const SubspaceMatrices sub =
            shots ? sampled_subspace_from_state(psi, h, na, {config.shots, readout, derive_seed(point_seed, 1u << 20)})
                  : exact;
        const SubspaceSolution sol = solve_subspace(sub);
        const std::vector<StateVector> states = extract_eigenstates(psi, sol.transform, na);
        out.energies = sol.energies;
        for (size_t i = 0; i < k; ++i) {
            out.errors.push_back(std::abs(out.energies[i] - out.oracle[i]));
        }
        out.mz = magnetization(states[0]);

        if (config.kind != ExperimentKind::H2Curve && h.commutes_with_x_parity()) {
            VerificationOptions vo;
            if (shots) {
                vo.shots = config.shots;
                vo.readout = readout_model(config, h.num_qubits());
            }
            for (size_t i = 0; i < k; ++i) {
                out.sectors.push_back(parity_sector(states[i]));
            }
            for (size_t i = 0; i < std::min<size_t>(2, k); ++i) {
                vo.seed = derive_seed(point_seed, (1u << 21) + i);
                const double e = verified_energy(states[i], h, out.sectors[i], vo);
                (i == 0 ? out.e0_verified : out.e1_verified) = e;
            }
        }
        out.ok = true;
    } catch (const std::exception &e) {
        out.ok = false;
        out.error = e.what();
    }
    if (config.timing) {
        out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
    config.validate();
    const std::vector<SweepPoint> points = config.sweep();
    ExperimentResult result;
    result.config = config;
    result.points.resize(points.size());

    size_t workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, points.size());
    std::atomic<size_t> next{0};
    const auto work = [&] {
        for (size_t i = next++; i < points.size(); i = next++) {
            result.points[i] = run_point(config, points[i], i);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return result;
}

double ExperimentResult::max_error() const {
    double m = 0;
    for (const auto &p : points) {
        for (double e : p.errors) {
            m = std::max(m, e);
        }
    }
    return m;
}

bool ExperimentResult::all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const PointResult &p) {
        return p.ok;
    });
}

}  // namespace aevqe
