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

#ifndef QCCS_LTS_H
#define QCCS_LTS_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qccs/ast.h"
#include "qccs/context.h"

namespace qccs {

enum class ActionKind { Tau, CIn, COut, QIn, QOut };

struct Action {
    ActionKind kind = ActionKind::Tau;
    std::string channel;
    double value = 0.0;  // CIn, COut
    std::string qvar;    // QIn, QOut

    static Action tau() { return {}; }
    static Action cin(std::string c, double v) { return {ActionKind::CIn, std::move(c), v, {}}; }
    static Action cout(std::string c, double v) { return {ActionKind::COut, std::move(c), v, {}}; }
    static Action qin(std::string c, std::string r) { return {ActionKind::QIn, std::move(c), 0.0, std::move(r)}; }
    static Action qout(std::string c, std::string r) { return {ActionKind::QOut, std::move(c), 0.0, std::move(r)}; }

    bool visible() const { return kind != ActionKind::Tau; }
    friend bool operator==(const Action &a, const Action &b) {
        return a.kind == b.kind && a.channel == b.channel && a.value == b.value && a.qvar == b.qvar;
    }
    friend bool operator<(const Action &a, const Action &b);
};

std::string to_string(const Action &a);

/// A closed, well-formed process together with a context covering qv(proc).
struct Configuration {
    ProcPtr proc;
    QContext ctx;
    std::string key;  // canonical_key(*proc)
};

/// Validates the configuration invariants: well-formed, no free classical
/// variables, qv(proc) contained in the context.
Configuration make_configuration(ProcPtr proc, QContext ctx);

bool same_configuration(const Configuration &a, const Configuration &b, double tol = kMatrixTol);

struct Distribution {
    std::vector<std::pair<Configuration, double>> support;

    static Distribution point(Configuration c);
    double total() const;
};

/// Sum of p_i * mu_i with equal support points merged. Weights must lie in
/// (0,1] and sum to one within 1e-9.
Distribution combine_distributions(const std::vector<std::pair<double, Distribution>> &parts);

bool distribution_equal(const Distribution &a, const Distribution &b, double tol = kMatrixTol);

struct Transition {
    Action action;
    Distribution target;
};

struct QuantumRecipe {
    std::string name;
    Matrix state;  // one-qubit density matrix; the input is state (x) rho
};

struct InputPolicy {
    std::map<std::string, std::vector<double>> classical_domains;
    std::vector<double> default_domain{0, 1, 2, 3};
    std::vector<QuantumRecipe> quantum_recipes = default_recipes();
    bool closed_only = true;

    const std::vector<double> &domain(const std::string &channel) const;
    static std::vector<QuantumRecipe> default_recipes();
};

/// All transitions of c, in a deterministic order without duplicates.
/// Throws OpenProcess when closed_only and an environment input is enabled.
std::vector<Transition> transitions(const Configuration &c, const InputPolicy &policy);

/// Actions enabled somewhere inside c but dropped by a restriction.
std::vector<Action> blocked_actions(const Configuration &c);

// ---------------------------------------------------------------------------
// Finite LTS

struct LtsEdge {
    Action action;
    std::vector<std::pair<int, double>> targets;
};

struct LtsNode {
    Configuration config;
    std::vector<LtsEdge> edges;
    int depth = 0;
};

struct LtsBounds {
    size_t max_nodes = 200000;
    int max_depth = 10000;
    int threads = 1;
};

class Lts {
   public:
    std::vector<LtsNode> nodes;
    std::vector<int> roots;

    int size() const { return static_cast<int>(nodes.size()); }
    /// Index of a node equal to c, or -1.
    int find(const Configuration &c) const;
    int insert(Configuration c, int depth);

   private:
    std::map<std::string, std::vector<int>> index_;
};

/// Breadth-first closure from the roots. Throws BoundExceeded.
Lts build_lts(const std::vector<Configuration> &roots, const InputPolicy &policy,
              const LtsBounds &bounds = {});
Lts build_lts(const Configuration &root, const InputPolicy &policy, const LtsBounds &bounds = {});

/// Ordinary alpha-successors of a node; their convex hull is the set of
/// alpha-combined transitions.
std::vector<const LtsEdge *> combined_transitions(const Lts &lts, int node, const Action &a);

using NodeDistribution = std::vector<std::pair<int, double>>;

/// Distributions reachable from mu by choosing one alpha-transition per
/// support point (at most `cap` results). Throws NotEnabled if some support
/// point has no alpha-transition.
std::vector<NodeDistribution> lift_transition(const Lts &lts, const NodeDistribution &mu,
                                              const Action &a, size_t cap = 64);

// ---------------------------------------------------------------------------
// Trace runner

enum class SchedulerKind { First, Random, Script };

struct Scheduler {
    SchedulerKind kind = SchedulerKind::First;
    uint64_t seed = 0;
    std::vector<int> script;  // transition indices, consumed in order
    bool sample = false;      // pick one outcome at probabilistic branches
};

struct TraceStep {
    Action action;
    Distribution before;
    Distribution after;
};

struct Trace {
    std::vector<TraceStep> steps;
    Distribution final;
};

/// Follows one adversary until every support point has no transitions.
/// Throws Stuck if a reached configuration is blocked by a restriction.
Trace run_trace(const Configuration &c0, const InputPolicy &policy, const Scheduler &scheduler,
                size_t max_steps = 10000);

}  // namespace qccs

#endif
