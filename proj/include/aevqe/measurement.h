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

#ifndef AEVQE_MEASUREMENT_H
#define AEVQE_MEASUREMENT_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aevqe/pauli.h"
#include "aevqe/statevector.h"

namespace aevqe {

enum class Basis : uint8_t { Z, X, Y };

/// A set of qubit-wise commuting Pauli terms read out from one circuit
/// execution: rotate each qubit into `bases[q]`, measure everything in Z, and
/// evaluate every term as a parity of the outcome bits.
struct MeasurementSetting {
    std::vector<Basis> bases;
    std::vector<PauliTerm> terms;

    /// Weighted parity sum for one outcome (basis index).
    double value(uint64_t outcome) const;
};

struct GroupedObservable {
    /// Coefficient of the identity term, which needs no measurement.
    double constant = 0;
    std::vector<MeasurementSetting> settings;
};

/// Greedy qubit-wise commuting partition in term order.
GroupedObservable group_qubitwise(const PauliSum &observable);
/// One setting per non-identity term.
GroupedObservable group_individually(const PauliSum &observable);

/// Outcome distribution after rotating every qubit into the setting's bases.
std::vector<double> rotated_probabilities(const StateVector &state, std::span<const Basis> bases);

struct Moments {
    double mean = 0;
    /// Single-shot variance of the setting's estimator.
    double variance = 0;
};

Moments setting_moments(std::span<const double> distribution, const MeasurementSetting &setting);

/// Mean of the setting's estimator over a histogram, optionally corrupted by
/// the readout channel and then mitigated with the same model.
double estimate_setting(
    std::span<const double> probabilities,
    const MeasurementSetting &setting,
    uint64_t shots,
    const std::optional<ReadoutModel> &readout,
    uint64_t seed);

/// <observable> on `state`. With shots == 0 the value is exact; otherwise each
/// qubit-wise commuting setting is sampled `shots` times through
/// estimate_setting.
double estimate_observable(
    const StateVector &state,
    const PauliSum &observable,
    uint64_t shots,
    const std::optional<ReadoutModel> &readout,
    uint64_t seed);

}  // namespace aevqe

#endif
