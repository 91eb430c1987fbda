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

#ifndef QCCS_GENERATOR_H
#define QCCS_GENERATOR_H

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qccs/ast.h"
#include "qccs/context.h"
#include "qccs/frontend.h"

namespace qccs {

struct GenOptions {
    int max_depth = 4;
    std::vector<std::string> qubits{"q", "r", "s"};
    std::vector<std::string> cchannels{"a", "b"};
    std::vector<std::string> qchannels{"qa", "qb"};
    std::vector<double> values{0, 1};
    bool inputs = true;
};

/// Random well-formed terms. Every term is closed for classical variables and
/// its free qubits are drawn from opts.qubits.
class TermGenerator {
   public:
    explicit TermGenerator(uint64_t seed, GenOptions opts = {});

    ProcPtr term();
    ProcPtr term(const std::set<std::string> &avail, int depth);
    /// No qubit operations at all: only classical channels, sums, guards,
    /// parallel, relabel and restrict.
    ProcPtr classical_term(int depth);
    ExprPtr value_expr(const std::vector<std::string> &vars, int depth);
    ExprPtr bool_expr(const std::vector<std::string> &vars, int depth);
    RelabelFn relabeling();
    std::set<std::string> restriction();

    /// A random mixed state on all of opts.qubits.
    QContext context();

    GatePtr gate(const std::string &name) const;
    ObservablePtr observable(const std::string &name) const;

    std::mt19937_64 &rng() { return rng_; }
    const GenOptions &options() const { return opts_; }

   private:
    ProcPtr gen(const std::set<std::string> &avail, std::vector<std::string> &vars, int depth);
    ProcPtr gen_classical(std::vector<std::string> &vars, int depth);
    int pick(int n);
    bool coin(double p);
    std::string fresh_binder(const std::set<std::string> &avail) const;

    GenOptions opts_;
    std::mt19937_64 rng_;
    std::map<std::string, GatePtr> gates_;
    std::map<std::string, ObservablePtr> observables_;
};

/// Declarations that make generated terms parse back (channels of both kinds).
SourceFile generator_env(const GenOptions &opts = {});

/// Replaces one gate application by a different gate of the same arity.
/// Returns nullptr when the term applies no gate.
ProcPtr mutate_gate(const ProcPtr &p, std::mt19937_64 &rng);

}  // namespace qccs

#endif
