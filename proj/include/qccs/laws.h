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

#ifndef QCCS_LAWS_H
#define QCCS_LAWS_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccs/bisim.h"
#include "qccs/lts.h"

namespace qccs {

struct LawOptions {
    int samples = 200;   // random terms for the static laws
    int pairs = 50;      // established pairs per mode for congruence
    int eq_pairs = 25;   // established equality pairs
    uint64_t seed = 1;
    int max_depth = 4;
    int threads = 1;
    bool mutate = false;  // swap a gate on the right-hand side
    double tol = kLpTol;
    LtsBounds bounds{20000, 64, 1};
};

struct LawTally {
    int passed = 0;
    int failed = 0;
    int skipped = 0;  // bound exceeded, or the instance does not apply
};

struct LawFailure {
    std::string law;
    Mode mode = Mode::Strong;
    std::string left;
    std::string right;
    std::string detail;
};

struct LawReport {
    std::map<std::string, LawTally> tally;
    std::vector<LawFailure> failures;
    int terms = 0;  // distinct instances drawn

    bool ok() const { return failures.empty(); }
    void merge(const LawReport &other);
};

/// Environment used for laws: open inputs over {0,1} and the default
/// quantum recipes. Both sides of a law see the same environment.
InputPolicy law_policy();

/// E+F ~ F+E, E+E ~ E, (E+F)+G ~ E+(F+G), E+nil ~ E, E||nil ~ E and E ~ E on
/// random terms.
LawReport check_laws(const LawOptions &opt);

/// Prefix, summation, classical-parallel and relabeling contexts applied to
/// pairs the checker itself finds equivalent, for strong and weak
/// bisimilarity; and E+G ~weak F+G for pairs with E equal to F.
LawReport check_congruence(const LawOptions &opt);

}  // namespace qccs

#endif
