// Copyright 2026 The qccs Authors
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

#ifndef QCCS_ERROR_H
#define QCCS_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qccs {

enum class ErrorKind {
    DimensionMismatch,
    BadIndex,
    DuplicatePosition,
    DuplicateVar,
    UnknownVar,
    TraceMismatch,
    NotUnitary,
    NotDensity,
    InvalidObservable,
    UnboundVariable,
    TypeMismatch,
    Precondition,
    BadWeights,
    NotEnabled,
    BoundExceeded,
    OpenProcess,
    NumericalFailure,
    Parse,
    Elaboration,
    Stuck,
};

std::string_view error_kind_name(ErrorKind kind);

/// Exception type used across the library. `kind()` lets callers branch on
/// the failure without parsing messages.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

   private:
    ErrorKind kind_;
};

}  // namespace qccs

#endif
