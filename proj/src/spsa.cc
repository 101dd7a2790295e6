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


#include "aevqe/spsa.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "aevqe/rng.h"

namespace aevqe {

void SpsaConfig::validate() const {
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("spsa: epsilon must be positive");
    }
    if (!(eta > 0) || !std::isfinite(eta)) {
        throw std::invalid_argument("spsa: eta must be positive");
    }
    if (groups < 2) {
        throw std::invalid_argument("spsa: need at least two groups");
    }
    if (variance_threshold && !(*variance_threshold > 0)) {
        throw std::invalid_argument("spsa: variance_threshold must be positive");
    }
    if (eta_decay < 0 || epsilon_decay < 0 || stability < 0) {
        throw std::invalid_argument("spsa: decay exponents and stability must be non-negative");
    }
}

GradientEstimate spsa_gradient(
    const std::function<double(std::span<const double>)> &loss,
    std::span<const double> theta,
    double epsilon,
    std::span<const int> direction) {
    if (direction.size() != theta.size()) {
        throw std::invalid_argument("spsa_gradient: direction and theta sizes differ");
    }
    std::vector<double> plus(theta.begin(), theta.end());
    std::vector<double> minus(theta.begin(), theta.end());
    for (size_t i = 0; i < theta.size(); ++i) {
        if (direction[i] != 1 && direction[i] != -1) {
            throw std::invalid_argument("spsa_gradient: direction entries must be +1 or -1");
        }
        plus[i] += epsilon * direction[i];
        minus[i] -= epsilon * direction[i];
    }
    GradientEstimate out;
    out.loss_plus = loss(plus);
    out.loss_minus = loss(minus);
    const double diff = (out.loss_plus - out.loss_minus) / (2 * epsilon);
    out.gradient.resize(theta.size());
    for (size_t i = 0; i < theta.size(); ++i) {
        out.gradient[i] = diff / direction[i];
    }
    return out;
}

double sample_variance(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("sample_variance: need at least two values");
    }
    double mean = 0;
    for (double v : values) {
        mean += v;
    }
    mean /= double(values.size());
    double ss = 0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return ss / double(values.size() - 1);
}

GateDecision variance_gate(std::span<const double> group_estimates, double threshold) {
    return sample_variance(group_estimates) < threshold ? GateDecision::Proceed : GateDecision::Repeat;
}

std::vector<double> SpsaTrace::running_best() const {
    std::vector<double> out;
    out.reserve(records.size());
    double best = std::numeric_limits<double>::infinity();
    for (const auto &r : records) {
        best = std::min(best, r.loss);
        out.push_back(best);
    }
    return out;
}

namespace {

struct GatedEvaluation {
    double value = 0;
    double variance = 0;
    bool passed = true;
    size_t repeats = 0;
};

}  // namespace

SpsaResult spsa_minimize(const Objective &objective, std::span<const double> theta0, const SpsaConfig &config) {
    config.validate();
    const size_t p = theta0.size();
    SpsaResult result;
    SpsaTrace &trace = result.trace;
    result.theta.assign(theta0.begin(), theta0.end());
    trace.best_loss = std::numeric_limits<double>::infinity();
    if (p == 0) {
        return result;
    }

    Rng rng(derive_seed(config.seed, 0));
    uint64_t stream = 0;
    const auto evaluate = [&](std::span<const double> theta) {
        GatedEvaluation out;
        for (size_t attempt = 0;; ++attempt) {
            const LossSample sample = objective(theta, derive_seed(config.seed, ++stream));
            ++trace.evaluations;
            out.value = sample.value;
            if (sample.groups.empty()) {
                out.variance = 0;
                return out;
            }
            out.variance = sample_variance(sample.groups);
            if (!config.variance_threshold ||
                variance_gate(sample.groups, *config.variance_threshold) == GateDecision::Proceed) {
                return out;
            }
            if (attempt == config.max_repeats) {
                out.passed = false;
                return out;
            }
            ++out.repeats;
        }
    };

    std::vector<double> theta = result.theta;
    std::vector<int> direction(p);
    std::vector<double> shifted(p);
    for (size_t k = 0; k < config.max_iterations; ++k) {
        const double eps_k = config.epsilon / std::pow(double(k + 1), config.epsilon_decay);
        double step = config.eta / std::pow(double(k + 1) + config.stability, config.eta_decay);
        if (config.scale_by_dimension) {
            step /= double(p);
        }
        for (auto &d : direction) {
            d = rademacher(rng);
        }

        for (size_t i = 0; i < p; ++i) {
            shifted[i] = theta[i] + eps_k * direction[i];
        }
        const GatedEvaluation plus = evaluate(shifted);
        for (size_t i = 0; i < p; ++i) {
            shifted[i] = theta[i] - eps_k * direction[i];
        }
        const GatedEvaluation minus = evaluate(shifted);

        SpsaRecord rec;
        rec.iteration = k;
        rec.loss = 0.5 * (plus.value + minus.value);
        rec.variance = std::max(plus.variance, minus.variance);
        rec.accepted = plus.passed && minus.passed;
        rec.repeats = plus.repeats + minus.repeats;
        rec.theta = theta;
        const double diff = (plus.value - minus.value) / (2 * eps_k);
        rec.grad_norm = std::abs(diff) * std::sqrt(double(p));

        trace.repeats += rec.repeats;
        if (rec.accepted) {
            ++trace.accepted_iterations;
        }
        if (rec.loss < trace.best_loss) {
            trace.best_loss = rec.loss;
            trace.best_iteration = k;
            result.theta = theta;
        }
        const bool done = config.target_loss && rec.loss <= *config.target_loss;
        trace.records.push_back(std::move(rec));
        if (done) {
            trace.reached_target = true;
            break;
        }
        for (size_t i = 0; i < p; ++i) {
            theta[i] -= step * diff / direction[i];
        }
    }
    return result;
}

SpsaResult spsa_minimize(
    const std::function<double(std::span<const double>)> &loss,
    std::span<const double> theta0,
    const SpsaConfig &config) {
    return spsa_minimize(
        [&](std::span<const double> theta, uint64_t) {
            return LossSample{loss(theta), {}};
        },
        theta0,
        config);
}

void write_trace_csv(std::ostream &out, const SpsaTrace &trace) {
    const size_t p = trace.records.empty() ? 0 : trace.records.front().theta.size();
    out << "iteration,loss,variance,accepted,grad_norm";
    for (size_t i = 0; i < p; ++i) {
        out << ",theta_" << i;
    }
    out << '\n';
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    for (const auto &r : trace.records) {
        out << r.iteration << ',' << r.loss << ',' << r.variance << ',' << (r.accepted ? 1 : 0) << ',' << r.grad_norm;
        for (double t : r.theta) {
            out << ',' << t;
        }
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace aevqe
