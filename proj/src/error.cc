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

#include "qccs/error.h"

namespace qccs {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorKind::BadIndex:
            return "BadIndex";
        case ErrorKind::DuplicatePosition:
            return "DuplicatePosition";
        case ErrorKind::DuplicateVar:
            return "DuplicateVar";
        case ErrorKind::UnknownVar:
            return "UnknownVar";
        case ErrorKind::TraceMismatch:
            return "TraceMismatch";
        case ErrorKind::NotUnitary:
            return "NotUnitary";
        case ErrorKind::NotDensity:
            return "NotDensity";
        case ErrorKind::InvalidObservable:
            return "InvalidObservable";
        case ErrorKind::UnboundVariable:
            return "UnboundVariable";
        case ErrorKind::TypeMismatch:
            return "TypeMismatch";
        case ErrorKind::Precondition:
            return "Precondition";
        case ErrorKind::BadWeights:
            return "BadWeights";
        case ErrorKind::NotEnabled:
            return "NotEnabled";
        case ErrorKind::BoundExceeded:
            return "BoundExceeded";
        case ErrorKind::OpenProcess:
            return "OpenProcess";
        case ErrorKind::NumericalFailure:
            return "NumericalFailure";
        case ErrorKind::Parse:
            return "Parse";
        case ErrorKind::Elaboration:
            return "Elaboration";
        case ErrorKind::Stuck:
            return "Stuck";
    }
    return "Unknown";
}

}  // namespace qccs
