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

#ifndef QCCS_TELEPORT_H
#define QCCS_TELEPORT_H

#include <string>
#include <vector>

#include "qccs/linalg.h"
#include "qccs/lts.h"

namespace qccs {

struct TeleportBranch {
    double probability;
    std::string process;
    std::vector<std::string> vars;
    Matrix bob;    // reduced state of Bob's qubit
    double error;  // max entrywise distance from the input state
};

struct TeleportResult {
    Complex alpha;
    Complex beta;
    std::string bob_qubit;
    Matrix expected;
    std::vector<TeleportBranch> branches;
    Trace trace;
    bool ok = false;
};

/// Runs the teleportation corpus file with q = alpha|0> + beta|1> to its
/// terminal distribution and compares Bob's qubit with the input in every
/// branch. A non-normalized input is rejected by elaboration.
TeleportResult run_teleport(Complex alpha, Complex beta, double tol = kMatrixTol);

}  // namespace qccs

#endif
