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

#include "aevqe/pauli.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aevqe/errors.h"

namespace aevqe {

namespace {

uint64_t low_mask(size_t n) {
    return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

uint64_t reverse_low_bits(uint64_t mask, size_t n) {
    uint64_t out = 0;
    for (size_t q = 0; q < n; ++q) {
        if ((mask >> q) & 1) {
            out |= uint64_t{1} << (n - 1 - q);
        }
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

PauliString::PauliString(size_t num_qubits, uint64_t x_mask, uint64_t z_mask)
    : num_qubits_(num_qubits), x_mask_(x_mask), z_mask_(z_mask) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("PauliString: qubit count must be in [1, 64]");
    }
    if (((x_mask | z_mask) & ~low_mask(num_qubits)) != 0) {
        throw std::invalid_argument("PauliString: mask has bits beyond the qubit count");
    }
}

PauliString PauliString::identity(size_t num_qubits) {
    return PauliString(num_qubits, 0, 0);
}

PauliString PauliString::x_parity(size_t num_qubits) {
    return PauliString(num_qubits, low_mask(num_qubits), 0);
}

PauliString PauliString::from_label(std::string_view label) {
    if (label.empty() || label.size() > kMaxQubits) {
        throw std::invalid_argument("PauliString: label length must be in [1, 64]");
    }
    uint64_t x = 0;
    uint64_t z = 0;
    for (size_t q = 0; q < label.size(); ++q) {
        const uint64_t bit = uint64_t{1} << q;
        switch (label[q]) {
            case 'I':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw std::invalid_argument("PauliString: bad character '" + std::string(1, label[q]) + "' in label");
        }
    }
    return PauliString(label.size(), x, z);
}

uint64_t PauliString::basis_x_mask() const {
    return reverse_low_bits(x_mask_, num_qubits_);
}

uint64_t PauliString::basis_z_mask() const {
    return reverse_low_bits(z_mask_, num_qubits_);
}

char PauliString::factor(size_t qubit) const {
    const bool x = (x_mask_ >> qubit) & 1;
    const bool z = (z_mask_ >> qubit) & 1;
    return "IZXY"[int(x) * 2 + int(z)];
}

std::string PauliString::label() const {
    std::string out(num_qubits_, 'I');
    for (size_t q = 0; q < num_qubits_; ++q) {
        out[q] = factor(q);
    }
    return out;
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("PauliString: qubit count mismatch");
    }
    const int anticommuting = std::popcount(x_mask_ & other.z_mask_) + std::popcount(z_mask_ & other.x_mask_);
    return anticommuting % 2 == 0;
}

PauliString PauliString::concat(const PauliString &tail) const {
    if (num_qubits_ + tail.num_qubits_ > kMaxQubits) {
        throw std::invalid_argument("PauliString: concatenation exceeds 64 qubits");
    }
    return PauliString(
        num_qubits_ + tail.num_qubits_,
        x_mask_ | (tail.x_mask_ << num_qubits_),
        z_mask_ | (tail.z_mask_ << num_qubits_));
}

std::pair<Complex, PauliString> multiply(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("multiply: qubit count mismatch");
    }
    const PauliString c(a.num_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask());
    // Z^za X^xb = (-1)^{|za & xb|} X^xb Z^za, and each string carries i^{|x & z|}.
    const int k = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) -
                  std::popcount(c.x_mask() & c.z_mask()) + 2 * std::popcount(a.z_mask() & b.x_mask());
    static constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {kPhases[((k % 4) + 4) % 4], c};
}

std::ostream &operator<<(std::ostream &out, const PauliString &s) {
    return out << s.label();
}

PauliSum::PauliSum(size_t num_qubits, std::vector<PauliTerm> terms) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > PauliString::kMaxQubits) {
        throw std::invalid_argument("PauliSum: qubit count must be in [1, 64]");
    }
    for (const auto &t : terms) {
        if (t.string.num_qubits() != num_qubits) {
            throw std::invalid_argument("PauliSum: term qubit count differs from the sum");
        }
        if (!std::isfinite(t.coefficient)) {
            throw std::invalid_argument("PauliSum: non-finite coefficient");
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const PauliTerm &a, const PauliTerm &b) {
        return a.string < b.string;
    });
    for (const auto &t : terms) {
        if (!terms_.empty() && terms_.back().string == t.string) {
            terms_.back().coefficient += t.coefficient;
        } else {
            terms_.push_back(t);
        }
    }
    std::erase_if(terms_, [](const PauliTerm &t) { return t.coefficient == 0.0; });
}

double PauliSum::coefficient(const PauliString &s) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), s, [](const PauliTerm &t, const PauliString &key) {
        return t.string < key;
    });
    return (it != terms_.end() && it->string == s) ? it->coefficient : 0.0;
}

bool PauliSum::commutes_with_x_parity() const {
    const PauliString parity = PauliString::x_parity(num_qubits_);
    return std::all_of(terms_.begin(), terms_.end(), [&](const PauliTerm &t) {
        return t.string.commutes_with(parity);
    });
}

PauliSum tfim_hamiltonian(size_t n_spins, double coupling, double field) {
    if (n_spins < 2) {
        throw std::invalid_argument("tfim_hamiltonian: need at least 2 spins");
    }
    std::vector<PauliTerm> terms;
    for (size_t i = 0; i + 1 < n_spins; ++i) {
        const uint64_t bond = (uint64_t{1} << i) | (uint64_t{1} << (i + 1));
        terms.push_back({-coupling, PauliString(n_spins, 0, bond)});
    }
    for (size_t i = 0; i < n_spins; ++i) {
        terms.push_back({field, PauliString(n_spins, uint64_t{1} << i, 0)});
    }
    return PauliSum(n_spins, std::move(terms));
}

PauliSum load_pauli_sum(std::istream &in) {
    std::vector<PauliTerm> terms;
    size_t width = 0;
    std::string raw;
    size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const size_t split = line.find_first_of(" \t");
        if (split == std::string_view::npos) {
            throw ParseError(line_no, "expected '<coefficient> <label>'");
        }
        const std::string_view number = line.substr(0, split);
        const std::string_view label = trim(line.substr(split));
        if (label.find_first_of(" \t") != std::string_view::npos) {
            throw ParseError(line_no, "trailing content after label");
        }

        double coefficient = 0;
        const char *first = number.data();
        const char *last = number.data() + number.size();
        if (*first == '+') {
            ++first;
        }
        auto [ptr, ec] = std::from_chars(first, last, coefficient);
        if (ec != std::errc() || ptr != last || !std::isfinite(coefficient)) {
            throw ParseError(line_no, "non-numeric coefficient '" + std::string(number) + "'");
        }

        PauliString string;
        try {
            string = PauliString::from_label(label);
        } catch (const std::invalid_argument &e) {
            throw ParseError(line_no, e.what());
        }
        if (width == 0) {
            width = label.size();
        } else if (label.size() != width) {
            throw ParseError(
                line_no,
                "label length " + std::to_string(label.size()) + " differs from " + std::to_string(width));
        }
        terms.push_back({coefficient, string});
    }
    if (width == 0) {
        throw ParseError(line_no, "no terms found");
    }
    return PauliSum(width, std::move(terms));
}

PauliSum parse_pauli_sum(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_pauli_sum(in);
}

PauliSum load_pauli_sum_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open Pauli-sum file " + path.string());
    }
    return load_pauli_sum(in);
}

std::string serialize(const PauliSum &sum) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto &t : sum.terms()) {
        out << t.coefficient << ' ' << t.string.label() << '\n';
    }
    return out.str();
}

ComplexMatrix to_dense(const PauliString &s) {
    if (s.num_qubits() > kMaxDenseQubits) {
        throw CapacityError("to_dense: " + std::to_string(s.num_qubits()) + " qubits exceeds the dense limit of 12");
    }
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
    const uint64_t bx = s.basis_x_mask();
    const uint64_t bz = s.basis_z_mask();
    static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex y_phase = kIPowers[std::popcount(s.x_mask() & s.z_mask()) % 4];
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const bool odd = std::popcount(uint64_t(col) & bz) & 1;
        out(Eigen::Index(uint64_t(col) ^ bx), col) = odd ? -y_phase : y_phase;
    }
    return out;
}

ComplexMatrix to_dense(const PauliSum &sum) {
    if (sum.num_qubits() > kMaxDenseQubits) {
        throw CapacityError("to_dense: " + std::to_string(sum.num_qubits()) + " qubits exceeds the dense limit of 12");
    }
    const Eigen::Index dim = Eigen::Index{1} << sum.num_qubits();
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (const auto &t : sum.terms()) {
        out += t.coefficient * to_dense(t.string);
    }
    return out;
}

Spectrum exact_spectrum(const PauliSum &sum, bool with_vectors) {
    EigenDecomposition eig = jacobi_eig(to_dense(sum));
    Spectrum out;
    out.values = std::move(eig.values);
    if (with_vectors) {
        out.vectors = std::move(eig.vectors);
    }
    return out;
}

}  // namespace aevqe
