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


#ifndef AEVQE_SPSA_H
#define AEVQE_SPSA_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace aevqe {

struct SpsaConfig {
    double epsilon = 0.1;
    double eta = 0.2;
    size_t max_iterations = 300;
    size_t groups = 5;
    /// Gate threshold on the sample variance of the group estimates. Unset
    /// means every evaluation proceeds.
    std::optional<double> variance_threshold;
    uint64_t seed = 0;
    /// Re-executions allowed per evaluation before it is taken as is.
    size_t max_repeats = 20;
    /// Divide the step by the parameter count. Without it the component of the
    /// update along the perturbation grows like eta * P and the iteration is
    /// unstable for eta = 0.2 beyond a handful of parameters.
    bool scale_by_dimension = true;
    /// eta_k = eta / (k + 1 + stability)^eta_decay; 0 keeps eta constant.
    double eta_decay = 0;
    double stability = 0;
    /// epsilon_k = epsilon / (k + 1)^epsilon_decay.
    double epsilon_decay = 0;
    /// Stop as soon as the loss estimate at the current iterate reaches this.
    std::optional<double> target_loss;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// One objective evaluation. `groups` holds independent sub-estimates whose
/// mean is `value`; it is empty for exact objectives, which bypass the gate.
struct LossSample {
    double value = 0;
    std::vector<double> groups;
};

/// Objective for spsa_minimize. `seed` is fresh for every evaluation,
/// including repeats, so shot-based objectives redraw their samples.
using Objective = std::function<LossSample(std::span<const double> theta, uint64_t seed)>;

struct GradientEstimate {
    std::vector<double> gradient;
    double loss_plus = 0;
    double loss_minus = 0;
};

/// g_i = [L(theta + eps*delta) - L(theta - eps*delta)] / (2 * eps * delta_i).
/// Calls `loss` exactly twice. delta entries must be +1 or -1.
GradientEstimate spsa_gradient(
    const std::function<double(std::span<const double>)> &loss,
    std::span<const double> theta,
    double epsilon,
    std::span<const int> direction);

/// Unbiased sample variance (n - 1 denominator). Needs at least two values.
double sample_variance(std::span<const double> values);

enum class GateDecision { Proceed, Repeat };

/// Proceed iff the sample variance of the group estimates is below threshold.
GateDecision variance_gate(std::span<const double> group_estimates, double threshold);

struct SpsaRecord {
    size_t iteration = 0;
    /// Mean of the two perturbed losses, an estimate of L(theta).
    double loss = 0;
    /// Larger of the two group variances (0 for exact objectives).
    double variance = 0;
    /// False when an evaluation exhausted max_repeats without passing the gate.
    bool accepted = true;
    size_t repeats = 0;
    double grad_norm = 0;
    /// Iterate at which the gradient was estimated.
    std::vector<double> theta;
};

struct SpsaTrace {
    std::vector<SpsaRecord> records;
    size_t evaluations = 0;
    size_t accepted_iterations = 0;
    size_t repeats = 0;
    size_t best_iteration = 0;
    double best_loss = 0;
    bool reached_target = false;

    /// Running minimum of the loss column.
    std::vector<double> running_best() const;
};

struct SpsaResult {
    /// Iterate with the lowest loss estimate seen.
    std::vector<double> theta;
    SpsaTrace trace;
};

/// Descent iteration theta <- theta - step_k * g_k with the variance-gated
/// accept/repeat protocol applied to each evaluation.
SpsaResult spsa_minimize(const Objective &objective, std::span<const double> theta0, const SpsaConfig &config);

/// Convenience overload for an exact objective.
SpsaResult spsa_minimize(
    const std::function<double(std::span<const double>)> &loss,
    std::span<const double> theta0,
    const SpsaConfig &config);

/// Columns: iteration, loss, variance, accepted, grad_norm, theta_0..theta_{P-1}.
void write_trace_csv(std::ostream &out, const SpsaTrace &trace);

}  // namespace aevqe

#endif
