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

#ifndef AEVQE_ERRORS_H
#define AEVQE_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aevqe {

// Argument validation failures use std::invalid_argument directly. The types
// below cover the remaining failure classes callers may want to distinguish.

/// Malformed Pauli-sum text. `line()` is 1-based.
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {
    }
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

/// A dense operation was requested on more qubits than the dense guard allows.
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// A matrix that must be inverted (confusion matrix, overlap matrix) is too
/// close to singular.
class ConditioningError : public std::runtime_error {
   public:
    ConditioningError(const std::string &what, double smallest)
        : std::runtime_error(what), smallest_(smallest) {
    }
    double smallest() const {
        return smallest_;
    }

   private:
    double smallest_;
};

/// An iterative solver exhausted its sweep budget.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A projection annihilated the state it was applied to.
class ZeroNormError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Invalid or unreadable experiment configuration.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace aevqe

#endif
