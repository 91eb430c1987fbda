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

#ifndef QCCS_TESTS_RULE_CASES_H
#define QCCS_TESTS_RULE_CASES_H

#include <functional>
#include <string>
#include <vector>

namespace qccs::testing {

/// One transition-rule scenario. `run` returns an empty string on success and
/// a description of the mismatch otherwise.
struct RuleCase {
    std::string rule;
    bool positive;
    std::string name;
    std::function<std::string()> run;
};

const std::vector<RuleCase> &rule_cases();

/// The rule names every table must cover.
const std::vector<std::string> &rule_names();

}  // namespace qccs::testing

#endif
