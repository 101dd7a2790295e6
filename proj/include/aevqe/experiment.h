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


#ifndef AEVQE_EXPERIMENT_H
#define AEVQE_EXPERIMENT_H

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aevqe/aevqe.h"
#include "aevqe/spsa.h"
#include "json.hpp"

namespace aevqe {

enum class ExperimentKind { H2Curve, TfimLevels, TfimFourLevels, MagnetizationSweep };
enum class Mode { Analytic, Shots };

std::string_view kind_name(ExperimentKind kind);
std::string_view mode_name(Mode mode);

/// One Hamiltonian of a sweep together with its abscissa (bond distance or h/|J|).
struct SweepPoint {
    double value = 0;
    std::string label;
    PauliSum hamiltonian{1};
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::TfimLevels;

    /// Pauli-sum files (h2_curve). Relative paths are resolved against the
    /// config file's directory. A directory entry expands to its *.txt files.
    std::vector<std::filesystem::path> hamiltonian_files;
    /// Builtin chain (TFIM kinds): sites, coupling and the h grid.
    size_t n_spins = 3;
    double coupling = 1.0;
    std::vector<double> fields;

    size_t n_ancilla = 1;
    size_t layers = 3;

    Mode mode = Mode::Analytic;
    uint64_t shots = 15 * 1024;
    std::optional<QubitReadout> readout;

    SpsaConfig spsa;
    /// Default gate threshold in shots mode: this factor times the analytic
    /// variance of one group estimate at the starting point.
    double threshold_factor = 9;
    /// Independent SPSA runs per point; the lowest final loss estimate wins.
    size_t restarts = 4;
    /// Starting parameters are uniform in [-init_scale, init_scale].
    double init_scale = 0.3;
    /// Stop a run once its loss estimate is within this of the lowest
    /// achievable loss (mean of the lowest K exact levels).
    std::optional<double> stop_within;
    /// Largest admissible |E_i - oracle_i| for `--assert`.
    std::optional<double> tolerance;

    std::filesystem::path output_dir = "out";
    uint64_t seed = 0;
    /// Worker threads over sweep points; 0 uses the hardware concurrency.
    size_t workers = 0;
    /// Record wall time per point. Off keeps reports byte-identical across runs.
    bool timing = false;

    /// Throws ConfigError.
    void validate() const;
    /// Tolerance used by `--assert`: the configured one or the kind's default.
    double effective_tolerance() const;
    /// Sweep Hamiltonians in report order. Throws ConfigError for unreadable
    /// files and ParseError for malformed ones.
    std::vector<SweepPoint> sweep() const;
};

/// Builds a config from JSON. Missing fields take the defaults of `kind`.
/// `base_dir` anchors relative Hamiltonian paths. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);
nlohmann::json to_json(const ExperimentConfig &config);

struct PointResult {
    size_t index = 0;
    double value = 0;
    std::string label;
    bool ok = false;
    std::string error;

    std::vector<double> energies;
    std::vector<double> oracle;
    std::vector<double> errors;
    /// Symmetry-verified E0 / E1 (TFIM kinds).
    std::optional<double> e0_verified;
    std::optional<double> e1_verified;
    std::vector<int> sectors;
    /// Magnetization of the extracted ground state and of the exact one.
    double mz = 0;
    double mz_oracle = 0;

    /// Exact loss at the returned parameters and its lower bound.
    double final_loss = 0;
    double loss_bound = 0;
    double overlap_deviation = 0;
    double hermiticity_deviation = 0;

    size_t iterations = 0;
    size_t repeats = 0;
    size_t evaluations = 0;
    bool reached_target = false;
    double seconds = 0;
    std::vector<double> theta;
    SpsaTrace trace;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<PointResult> points;

    double max_error() const;
    bool all_ok() const;
};

/// The problem solved at one sweep point.
AevqeProblem make_problem(const ExperimentConfig &config, const PauliSum &hamiltonian);

/// Runs one sweep point. Errors are captured in the result rather than thrown.
PointResult run_point(const ExperimentConfig &config, const SweepPoint &point, size_t index);

/// Runs every sweep point on a worker pool. Points are seeded independently
/// from (seed, index), so results do not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig &config);

/// Writes energies.csv, summary.json and trace_<index>.csv into `out_dir`.
/// Throws std::runtime_error naming the path on I/O failure.
void emit_report(const ExperimentResult &result, const std::filesystem::path &out_dir);

std::string energies_csv(const ExperimentResult &result);
nlohmann::json summary_json(const ExperimentResult &result);

}  // namespace aevqe

#endif
