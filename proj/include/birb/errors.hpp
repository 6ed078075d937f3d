// Copyright 2026 The BiRB Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace birb {

/// Operands disagree on qubit count or matrix size.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An argument is outside the domain an operation is defined on.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request is well formed but exceeds what a backend can do (e.g. dense engine above its qubit cap).
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid user configuration (design, noise model, CLI options).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Text could not be parsed. Carries 1-based line and column.
struct ParseError : std::invalid_argument {
    ParseError(const std::string &msg, size_t line, size_t column)
        : std::invalid_argument(
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line(line),
          column(column) {
    }
    size_t line;
    size_t column;
};

/// The decay fit could not produce a trustworthy estimate.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace birb
