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

#ifndef QCCS_BISIM_H
#define QCCS_BISIM_H

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qccs/lp.h"
#include "qccs/lts.h"

namespace qccs {

/// The part of an LTS the checkers look at: labelled probabilistic edges and,
/// for stuck nodes, an id for the context equivalence class.
struct ProbLts {
    std::vector<std::vector<LtsEdge>> edges;
    std::vector<int> stuck_class;  // -1 for nodes with transitions

    int size() const { return static_cast<int>(edges.size()); }
    bool stuck(int n) const { return edges[n].empty(); }
};

ProbLts to_prob_lts(const Lts &lts, double tol = kMatrixTol);

struct Partition {
    std::vector<int> block_of;
    int num_blocks = 0;

    std::vector<std::vector<int>> blocks() const;
    bool same(int a, int b) const { return block_of[a] == block_of[b]; }
};

std::vector<double> class_vector(const NodeDistribution &mu, const Partition &p);
bool dist_equiv(const NodeDistribution &mu, const NodeDistribution &nu, const Partition &p,
                double tol = kLpTol);

// ---------------------------------------------------------------------------
// Weak transitions as flows

enum class WeakLabelKind {
    TauHat,     // zero or more tau steps
    Visible,    // tau* alpha tau*
    StrictTau,  // at least one tau step
};

struct WeakLabel {
    WeakLabelKind kind = WeakLabelKind::TauHat;
    Action action;

    static WeakLabel tau_hat() { return {}; }
    static WeakLabel strict_tau() { return {WeakLabelKind::StrictTau, Action::tau()}; }
    static WeakLabel visible(Action a) { return {WeakLabelKind::Visible, std::move(a)}; }
    /// alpha-hat: tau_hat for tau, visible otherwise.
    static WeakLabel hat(const Action &a);
};

struct WeakReachQuery {
    int source = 0;
    WeakLabel label;
    std::vector<double> target;  // mass per block
    const Partition *partition = nullptr;
};

struct FlowEntry {
    int node;
    int edge;   // index into the node's edges; -1 for stopping at the node
    int phase;  // 1 before the visible step, 2 after it
    double flow;
};

struct WeakReachResult {
    bool feasible = false;
    std::vector<FlowEntry> flow;
    bool near_tie = false;
    int certificate_size = 0;
};

WeakReachResult weak_reach_feasible(const ProbLts &lts, const WeakReachQuery &q, double tol = kLpTol);

// ---------------------------------------------------------------------------
// Checkers

enum class Mode { Strong, Weak, Equality };

std::string_view mode_name(Mode m);

enum class ReportKind {
    TerminalContext,    // both stuck, contexts differ
    StuckMismatch,      // one stuck, the other not (strong)
    UnmatchedMove,      // a move the other side cannot match
    TerminalSignature,  // terminal behaviour differs after internal steps (weak)
};

std::string_view report_kind_name(ReportKind k);

struct ClassMass {
    int block;
    double mass;
    std::vector<int> members;
};

struct Report {
    ReportKind kind = ReportKind::UnmatchedMove;
    int left = -1;
    int right = -1;
    int mover = -1;  // the node whose move is not matched (left or right)
    Action action;
    std::vector<ClassMass> target;
    std::vector<std::pair<int, double>> realized_by;  // mover edge index -> weight
    int certificate_size = 0;
    std::string message;
    std::shared_ptr<Report> cause;
};

struct MatchWeight {
    int node;
    int edge;  // -1: stop at node (weak)
    int phase;
    double weight;
};

struct MoveMatch {
    int mover;
    int edge;
    int matcher;
    std::vector<MatchWeight> weights;
};

struct Verdict {
    Mode mode = Mode::Strong;
    bool equivalent = false;
    int left = -1;
    int right = -1;
    Partition partition;
    std::optional<Report> report;
    std::vector<MoveMatch> witness;  // how each top-level move is matched
    std::vector<std::string> warnings;
};

struct BisimOptions {
    double tol = kLpTol;
    int threads = 1;
};

/// Coarsest strong probabilistic bisimulation on the whole LTS.
Partition strong_partition(const ProbLts &lts, const BisimOptions &opt = {});
Partition weak_partition(const ProbLts &lts, const BisimOptions &opt = {});

Verdict strong_bisim(const ProbLts &lts, int c, int d, const BisimOptions &opt = {});
Verdict weak_bisim(const ProbLts &lts, int c, int d, const BisimOptions &opt = {});
Verdict equality_check(const ProbLts &lts, int c, int d, const BisimOptions &opt = {});

Verdict check(Mode mode, const ProbLts &lts, int c, int d, const BisimOptions &opt = {});

/// Builds the joint LTS of two configurations and runs the chosen checker.
struct PairCheck {
    Lts lts;
    ProbLts prob;
    Verdict verdict;
};
PairCheck check_configurations(Mode mode, const Configuration &c, const Configuration &d,
                               const InputPolicy &policy, const LtsBounds &bounds = {},
                               const BisimOptions &opt = {});

}  // namespace qccs

#endif
