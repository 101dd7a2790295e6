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

#include "aevqe/statevector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>

#include "aevqe/errors.h"
#include "aevqe/rng.h"

namespace aevqe {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kImaginaryTolerance = 1e-10;
constexpr double kZeroProbability = 1e-14;
constexpr double kSingularConfusion = 1e-9;

uint64_t qubit_bit(size_t num_qubits, size_t qubit) {
    return uint64_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(const StateVector &state, size_t qubit) {
    if (qubit >= state.num_qubits()) {
        throw std::invalid_argument(
            "qubit " + std::to_string(qubit) + " out of range for " + std::to_string(state.num_qubits()) + " qubits");
    }
}

template <typename M>
void check_unitary(const M &u) {
    const double err = (u.adjoint() * u - M::Identity()).cwiseAbs().maxCoeff();
    if (!(err <= kUnitaryTolerance)) {
        throw std::invalid_argument("gate matrix is not unitary");
    }
}

Complex i_power(int k) {
    static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPowers[k & 3];
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> p(state.dimension());
    for (size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(state[i]);
    }
    return p;
}

}  // namespace

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
    }
    amplitudes_.assign(size_t{1} << num_qubits, Complex{0, 0});
    amplitudes_[0] = 1;
}

StateVector::StateVector(size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("StateVector: qubit count must be in [1, 30]");
    }
    if (amplitudes_.size() != (size_t{1} << num_qubits)) {
        throw std::invalid_argument("StateVector: amplitude count must be 2^num_qubits");
    }
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > kZeroProbability)) {
        throw ZeroNormError("StateVector: cannot normalize a zero vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
}

Eigen::VectorXcd StateVector::to_eigen() const {
    return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(), Eigen::Index(amplitudes_.size()));
}

StateVector init_basis_state(size_t num_qubits, std::string_view bits) {
    if (bits.size() != num_qubits) {
        throw std::invalid_argument("init_basis_state: bit string length must equal the qubit count");
    }
    StateVector out(num_qubits);
    out[0] = 0;
    out[basis_index(bits)] = 1;
    return out;
}

Complex inner_product(const StateVector &bra, const StateVector &ket) {
    if (bra.num_qubits() != ket.num_qubits()) {
        throw std::invalid_argument("inner_product: qubit count mismatch");
    }
    Complex total = 0;
    for (size_t i = 0; i < bra.dimension(); ++i) {
        total += std::conj(bra[i]) * ket[i];
    }
    return total;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner_product(a, b));
}

void apply_1q(StateVector &state, size_t qubit, const Eigen::Matrix2cd &u) {
    check_qubit(state, qubit);
    check_unitary(u);
    const uint64_t bit = qubit_bit(state.num_qubits(), qubit);
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < amps.size(); ++i) {
        if (i & bit) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | bit];
        amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_2q(StateVector &state, size_t q1, size_t q2, const Eigen::Matrix4cd &u) {
    check_qubit(state, q1);
    check_qubit(state, q2);
    if (q1 == q2) {
        throw std::invalid_argument("apply_2q: qubits must differ");
    }
    check_unitary(u);
    const uint64_t b1 = qubit_bit(state.num_qubits(), q1);
    const uint64_t b2 = qubit_bit(state.num_qubits(), q2);
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < amps.size(); ++i) {
        if (i & (b1 | b2)) {
            continue;
        }
        const uint64_t idx[4] = {i, i | b2, i | b1, i | b1 | b2};
        const Complex in[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
        }
    }
}

void apply_cnot(StateVector &state, size_t control, size_t target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw std::invalid_argument("apply_cnot: qubits must differ");
    }
    const uint64_t bc = qubit_bit(state.num_qubits(), control);
    const uint64_t bt = qubit_bit(state.num_qubits(), target);
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & bc) && !(i & bt)) {
            std::swap(amps[i], amps[i | bt]);
        }
    }
}

void apply_cz(StateVector &state, size_t a, size_t b) {
    check_qubit(state, a);
    check_qubit(state, b);
    if (a == b) {
        throw std::invalid_argument("apply_cz: qubits must differ");
    }
    const uint64_t both = qubit_bit(state.num_qubits(), a) | qubit_bit(state.num_qubits(), b);
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) {
            amps[i] = -amps[i];
        }
    }
}

Complex pauli_matrix_element(std::span<const Complex> bra, const PauliString &p, std::span<const Complex> ket) {
    const size_t dim = size_t{1} << p.num_qubits();
    if (bra.size() != dim || ket.size() != dim) {
        throw std::invalid_argument("pauli_matrix_element: amplitude count does not match the Pauli string");
    }
    const uint64_t bx = p.basis_x_mask();
    const uint64_t bz = p.basis_z_mask();
    Complex total = 0;
    for (uint64_t b = 0; b < dim; ++b) {
        const Complex term = std::conj(bra[b ^ bx]) * ket[b];
        total += (std::popcount(b & bz) & 1) ? -term : term;
    }
    return total * i_power(std::popcount(p.x_mask() & p.z_mask()));
}

Complex pauli_matrix_element(std::span<const Complex> bra, const PauliSum &h, std::span<const Complex> ket) {
    Complex total = 0;
    for (const auto &t : h.terms()) {
        total += t.coefficient * pauli_matrix_element(bra, t.string, ket);
    }
    return total;
}

double pauli_expectation(const StateVector &state, const PauliString &p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("pauli_expectation: qubit count mismatch");
    }
    const Complex value = pauli_matrix_element(state.amplitudes(), p, state.amplitudes());
    if (std::abs(value.imag()) > kImaginaryTolerance) {
        throw std::logic_error("pauli_expectation: imaginary residue above tolerance");
    }
    return value.real();
}

double pauli_expectation(const StateVector &state, const PauliSum &h) {
    if (h.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("pauli_expectation: qubit count mismatch");
    }
    const Complex value = pauli_matrix_element(state.amplitudes(), h, state.amplitudes());
    if (std::abs(value.imag()) > kImaginaryTolerance) {
        throw std::logic_error("pauli_expectation: imaginary residue above tolerance");
    }
    return value.real();
}

StateVector apply_pauli_sum(const PauliSum &h, const StateVector &state) {
    if (h.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("apply_pauli_sum: qubit count mismatch");
    }
    std::vector<Complex> out(state.dimension(), Complex{0, 0});
    for (const auto &t : h.terms()) {
        const uint64_t bx = t.string.basis_x_mask();
        const uint64_t bz = t.string.basis_z_mask();
        const Complex phase = t.coefficient * i_power(std::popcount(t.string.x_mask() & t.string.z_mask()));
        for (uint64_t b = 0; b < out.size(); ++b) {
            const Complex v = phase * state[b];
            out[b ^ bx] += (std::popcount(b & bz) & 1) ? -v : v;
        }
    }
    return StateVector(state.num_qubits(), std::move(out));
}

uint64_t Counts::operator[](const std::string &outcome) const {
    auto it = tallies.find(outcome);
    return it == tallies.end() ? 0 : it->second;
}

std::string basis_label(uint64_t index, size_t num_qubits) {
    std::string out(num_qubits, '0');
    for (size_t q = 0; q < num_qubits; ++q) {
        if (index & qubit_bit(num_qubits, q)) {
            out[q] = '1';
        }
    }
    return out;
}

uint64_t basis_index(std::string_view bits) {
    if (bits.size() > 64) {
        throw std::invalid_argument("basis_index: more than 64 bits");
    }
    uint64_t out = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("basis_index: bit string must contain only '0' and '1'");
        }
        out = (out << 1) | uint64_t(c == '1');
    }
    return out;
}

std::vector<uint64_t> sample_histogram(std::span<const double> probabilities, uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be positive");
    }
    if (probabilities.empty()) {
        throw std::invalid_argument("sample: empty distribution");
    }
    double total = 0;
    for (double p : probabilities) {
        if (!(p >= 0)) {
            throw std::invalid_argument("sample: probabilities must be non-negative");
        }
        total += p;
    }
    if (!(total > 0)) {
        throw std::invalid_argument("sample: probabilities sum to zero");
    }
    // Multinomial draw as a chain of conditional binomials: bin i receives
    // Binomial(remaining shots, p_i / remaining mass).
    std::vector<uint64_t> hist(probabilities.size(), 0);
    Rng rng(seed);
    uint64_t remaining = shots;
    double mass = total;
    for (size_t i = 0; i + 1 < probabilities.size() && remaining > 0; ++i) {
        const double q = mass > 0 ? std::clamp(probabilities[i] / mass, 0.0, 1.0) : 0.0;
        if (q >= 1.0) {
            hist[i] = remaining;
            remaining = 0;
            break;
        }
        if (q > 0) {
            std::binomial_distribution<uint64_t> draw(remaining, q);
            hist[i] = draw(rng);
            remaining -= hist[i];
        }
        mass -= probabilities[i];
    }
    hist.back() += remaining;
    return hist;
}

std::vector<double> apply_readout_channel(std::span<const double> distribution, const ReadoutModel &model) {
    const size_t n = model.num_qubits();
    if (distribution.size() != (size_t{1} << n)) {
        throw std::invalid_argument("apply_readout_channel: model qubit count does not match outcomes");
    }
    std::vector<double> p(distribution.begin(), distribution.end());
    for (size_t q = 0; q < n; ++q) {
        const uint64_t bit = qubit_bit(n, q);
        const double p01 = model.qubit(q).p01;
        const double p10 = model.qubit(q).p10;
        for (uint64_t b = 0; b < p.size(); ++b) {
            if (b & bit) {
                continue;
            }
            const double t0 = p[b];
            const double t1 = p[b | bit];
            p[b] = (1 - p10) * t0 + p01 * t1;
            p[b | bit] = p10 * t0 + (1 - p01) * t1;
        }
    }
    return p;
}

Counts sample_bitstrings(const StateVector &state, uint64_t shots, uint64_t seed) {
    const std::vector<uint64_t> hist = sample_histogram(probabilities(state), shots, seed);
    Counts out{state.num_qubits(), shots, {}};
    for (uint64_t i = 0; i < hist.size(); ++i) {
        if (hist[i] != 0) {
            out.tallies.emplace(basis_label(i, state.num_qubits()), hist[i]);
        }
    }
    return out;
}

ReadoutModel::ReadoutModel(std::vector<QubitReadout> qubits) : qubits_(std::move(qubits)) {
    for (const auto &q : qubits_) {
        if (!(q.p01 >= 0 && q.p01 < 0.5 && q.p10 >= 0 && q.p10 < 0.5)) {
            throw std::invalid_argument("ReadoutModel: flip probabilities must lie in [0, 0.5)");
        }
    }
}

ReadoutModel ReadoutModel::uniform(size_t num_qubits, double p01, double p10) {
    return ReadoutModel(std::vector<QubitReadout>(num_qubits, QubitReadout{p01, p10}));
}

ReadoutModel ReadoutModel::unchecked(std::vector<QubitReadout> qubits) {
    return ReadoutModel(std::move(qubits), Unchecked{});
}

ReadoutModel ReadoutModel::subset(std::span<const size_t> qubits) const {
    std::vector<QubitReadout> out;
    out.reserve(qubits.size());
    for (size_t q : qubits) {
        out.push_back(qubits_.at(q));
    }
    return ReadoutModel(std::move(out), Unchecked{});
}

std::vector<uint64_t> apply_readout_noise(
    std::span<const uint64_t> histogram, const ReadoutModel &model, uint64_t seed) {
    const size_t n = model.num_qubits();
    if (histogram.size() != (size_t{1} << n)) {
        throw std::invalid_argument("apply_readout_noise: model qubit count does not match outcomes");
    }
    std::vector<uint64_t> out(histogram.size(), 0);
    Rng rng(seed);
    for (uint64_t b = 0; b < histogram.size(); ++b) {
        for (uint64_t shot = 0; shot < histogram[b]; ++shot) {
            uint64_t read = b;
            for (size_t q = 0; q < n; ++q) {
                const uint64_t bit = qubit_bit(n, q);
                const double p = (b & bit) ? model.qubit(q).p01 : model.qubit(q).p10;
                if (p > 0 && uniform01(rng) < p) {
                    read ^= bit;
                }
            }
            ++out[read];
        }
    }
    return out;
}

Counts apply_readout_noise(const Counts &counts, const ReadoutModel &model, uint64_t seed) {
    if (model.num_qubits() != counts.num_qubits) {
        throw std::invalid_argument("apply_readout_noise: model qubit count does not match outcomes");
    }
    std::vector<uint64_t> hist(size_t{1} << counts.num_qubits, 0);
    for (const auto &[bits, n] : counts.tallies) {
        hist[basis_index(bits)] += n;
    }
    const std::vector<uint64_t> noisy = apply_readout_noise(hist, model, seed);
    Counts out{counts.num_qubits, counts.shots, {}};
    for (uint64_t i = 0; i < noisy.size(); ++i) {
        if (noisy[i] != 0) {
            out.tallies.emplace(basis_label(i, counts.num_qubits), noisy[i]);
        }
    }
    return out;
}

std::vector<double> mitigate_distribution(std::span<const double> distribution, const ReadoutModel &model) {
    const size_t n = model.num_qubits();
    if (distribution.size() != (size_t{1} << n)) {
        throw std::invalid_argument("mitigate: model qubit count does not match outcomes");
    }
    std::vector<double> out(distribution.begin(), distribution.end());
    for (size_t q = 0; q < n; ++q) {
        const double p01 = model.qubit(q).p01;
        const double p10 = model.qubit(q).p10;
        const double det = 1.0 - p01 - p10;
        if (std::abs(det) < kSingularConfusion) {
            throw ConditioningError(
                "mitigate: confusion matrix of qubit " + std::to_string(q) + " is singular", std::abs(det));
        }
        // Inverse of [[1-p10, p01], [p10, 1-p01]] (columns: true value).
        const double i00 = (1 - p01) / det;
        const double i01 = -p01 / det;
        const double i10 = -p10 / det;
        const double i11 = (1 - p10) / det;
        const uint64_t bit = qubit_bit(n, q);
        for (uint64_t b = 0; b < out.size(); ++b) {
            if (b & bit) {
                continue;
            }
            const double r0 = out[b];
            const double r1 = out[b | bit];
            out[b] = i00 * r0 + i01 * r1;
            out[b | bit] = i10 * r0 + i11 * r1;
        }
    }
    return out;
}

std::map<std::string, double> mitigate_counts(const Counts &counts, const ReadoutModel &model) {
    if (model.num_qubits() != counts.num_qubits) {
        throw std::invalid_argument("mitigate_counts: model qubit count does not match outcomes");
    }
    if (counts.shots == 0) {
        throw std::invalid_argument("mitigate_counts: empty record");
    }
    std::vector<double> dist(size_t{1} << counts.num_qubits, 0.0);
    for (const auto &[bits, n] : counts.tallies) {
        dist[basis_index(bits)] += double(n) / double(counts.shots);
    }
    const std::vector<double> quasi = mitigate_distribution(dist, model);
    std::map<std::string, double> out;
    for (uint64_t i = 0; i < quasi.size(); ++i) {
        if (quasi[i] != 0.0) {
            out.emplace(basis_label(i, counts.num_qubits), quasi[i]);
        }
    }
    return out;
}

Projection project(const StateVector &state, std::span<const size_t> qubits, std::string_view bits) {
    const size_t n = state.num_qubits();
    if (bits.size() != qubits.size()) {
        throw std::invalid_argument("project: outcome length must equal the number of measured qubits");
    }
    if (qubits.size() >= n) {
        throw std::invalid_argument("project: at least one qubit must remain unmeasured");
    }
    uint64_t measured_mask = 0;
    uint64_t measured_value = 0;
    for (size_t k = 0; k < qubits.size(); ++k) {
        check_qubit(state, qubits[k]);
        const uint64_t bit = qubit_bit(n, qubits[k]);
        if (measured_mask & bit) {
            throw std::invalid_argument("project: measured qubits must be distinct");
        }
        measured_mask |= bit;
        if (bits[k] == '1') {
            measured_value |= bit;
        } else if (bits[k] != '0') {
            throw std::invalid_argument("project: outcome must contain only '0' and '1'");
        }
    }

    std::vector<uint64_t> kept_bits;
    for (size_t q = 0; q < n; ++q) {
        const uint64_t bit = qubit_bit(n, q);
        if (!(measured_mask & bit)) {
            kept_bits.push_back(bit);
        }
    }
    const size_t m = kept_bits.size();
    std::vector<Complex> reduced(size_t{1} << m, Complex{0, 0});
    double probability = 0;
    for (uint64_t i = 0; i < state.dimension(); ++i) {
        if ((i & measured_mask) != measured_value) {
            continue;
        }
        uint64_t r = 0;
        for (size_t k = 0; k < m; ++k) {
            r = (r << 1) | uint64_t((i & kept_bits[k]) != 0);
        }
        reduced[r] = state[i];
        probability += std::norm(state[i]);
    }

    Projection out;
    out.probability = probability;
    if (probability > kZeroProbability) {
        StateVector collapsed(m, std::move(reduced));
        collapsed.normalize();
        out.collapsed = std::move(collapsed);
    }
    return out;
}

}  // namespace aevqe
