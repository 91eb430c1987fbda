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

#ifndef QCCS_SERIALIZE_H
#define QCCS_SERIALIZE_H

#include <string>

#include "json.hpp"
#include "qccs/bisim.h"
#include "qccs/laws.h"
#include "qccs/lts.h"
#include "qccs/teleport.h"

namespace qccs {

using Json = nlohmann::ordered_json;

/// {"rows", "cols", "re": [[...]], "im": [[...]]}
Json matrix_to_json(const Matrix &m);
Json action_to_json(const Action &a);
Json context_to_json(const QContext &ctx);
Json distribution_to_json(const Distribution &d);

Json lts_to_json(const Lts &lts);
/// Nodes are labelled by a hash of the term; probabilistic edges go through a
/// small branch point with one "alpha, p" edge per target.
std::string lts_to_dot(const Lts &lts);

Json report_to_json(const Report &r);
Json verdict_to_json(const Verdict &v, const Lts &lts);
Json trace_to_json(const Trace &t);
Json laws_to_json(const LawReport &r);
Json teleport_to_json(const TeleportResult &t);

}  // namespace qccs

#endif
