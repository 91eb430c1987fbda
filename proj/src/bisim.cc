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

#include "qccs/bisim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "qccs/error.h"

namespace qccs {

ProbLts to_prob_lts(const Lts &lts, double tol) {
    ProbLts out;
    out.edges.reserve(lts.nodes.size());
    out.stuck_class.assign(lts.nodes.size(), -1);
    std::vector<int> reps;
    for (int i = 0; i < lts.size(); ++i) {
        out.edges.push_back(lts.nodes[i].edges);
        if (!lts.nodes[i].edges.empty()) continue;
        int cls = -1;
        for (size_t k = 0; k < reps.size(); ++k) {
            if (context_equal(lts.nodes[reps[k]].config.ctx, lts.nodes[i].config.ctx, tol)) {
                cls = static_cast<int>(k);
                break;
            }
        }
        if (cls < 0) {
            cls = static_cast<int>(reps.size());
            reps.push_back(i);
        }
        out.stuck_class[i] = cls;
    }
    return out;
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(num_blocks);
    for (size_t i = 0; i < block_of.size(); ++i) out[block_of[i]].push_back(static_cast<int>(i));
    return out;
}

std::vector<double> class_vector(const NodeDistribution &mu, const Partition &p) {
    std::vector<double> v(p.num_blocks, 0.0);
    for (const auto &[n, q] : mu) v[p.block_of[n]] += q;
    return v;
}

namespace {

bool vec_equal(const std::vector<double> &a, const std::vector<double> &b, double tol) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

bool dist_equiv(const NodeDistribution &mu, const NodeDistribution &nu, const Partition &p, double tol) {
    return vec_equal(class_vector(mu, p), class_vector(nu, p), tol);
}

WeakLabel WeakLabel::hat(const Action &a) {
    return a.visible() ? visible(a) : tau_hat();
}

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::Strong:
            return "strong";
        case Mode::Weak:
            return "weak";
        case Mode::Equality:
            return "eq";
    }
    return "?";
}

std::string_view report_kind_name(ReportKind k) {
    switch (k) {
        case ReportKind::TerminalContext:
            return "TerminalContext";
        case ReportKind::StuckMismatch:
            return "StuckMismatch";
        case ReportKind::UnmatchedMove:
            return "UnmatchedMove";
        case ReportKind::TerminalSignature:
            return "TerminalSignature";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Weak reachability LP

namespace {

std::vector<int> tau_closure(const ProbLts &lts, const std::vector<int> &start) {
    std::vector<char> seen(lts.size(), 0);
    std::vector<int> order, stack;
    for (int s : start) {
        if (!seen[s]) {
            seen[s] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (const auto &e : lts.edges[u]) {
            if (e.action.visible()) continue;
            for (const auto &[t, p] : e.targets) {
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
            }
        }
    }
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

WeakReachResult weak_reach_feasible(const ProbLts &lts, const WeakReachQuery &q, double tol) {
    if (!q.partition || static_cast<int>(q.target.size()) != q.partition->num_blocks) {
        throw Error(ErrorKind::Precondition, "weak query target does not match the partition");
    }
    LinearProgram lp;
    struct VarInfo {
        int node, edge, phase;
    };
    std::vector<VarInfo> info;
    std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> rows;  // (phase, node)
    auto var = [&](int node, int edge, int phase) {
        int v = lp.add_variable();
        info.push_back({node, edge, phase});
        return v;
    };
    // An edge flow leaves (from_phase, u) and spreads over (to_phase, targets).
    auto edge_flow = [&](int u, int ei, int from_phase, int to_phase) {
        int v = var(u, ei, from_phase);
        rows[{from_phase, u}].push_back({v, 1.0});
        for (const auto &[t, p] : lts.edges[u][ei].targets) rows[{to_phase, t}].push_back({v, -p});
    };

    std::vector<int> post_start;
    int source_phase = 2;
    switch (q.label.kind) {
        case WeakLabelKind::TauHat:
            post_start = {q.source};
            break;
        case WeakLabelKind::Visible: {
            source_phase = 1;
            for (int u : tau_closure(lts, {q.source})) {
                rows[{1, u}];
                for (size_t ei = 0; ei < lts.edges[u].size(); ++ei) {
                    const auto &e = lts.edges[u][ei];
                    if (!e.action.visible()) {
                        edge_flow(u, static_cast<int>(ei), 1, 1);
                    } else if (e.action == q.label.action) {
                        edge_flow(u, static_cast<int>(ei), 1, 2);
                        for (const auto &[t, p] : e.targets) post_start.push_back(t);
                    }
                }
            }
            break;
        }
        case WeakLabelKind::StrictTau: {
            source_phase = 1;
            rows[{1, q.source}];
            for (size_t ei = 0; ei < lts.edges[q.source].size(); ++ei) {
                const auto &e = lts.edges[q.source][ei];
                if (e.action.visible()) continue;
                edge_flow(q.source, static_cast<int>(ei), 1, 2);
                for (const auto &[t, p] : e.targets) post_start.push_back(t);
            }
            break;
        }
    }
    std::vector<std::vector<std::pair<int, double>>> block_rows(q.partition->num_blocks);
    for (int u : tau_closure(lts, post_start)) {
        rows[{2, u}];
        for (size_t ei = 0; ei < lts.edges[u].size(); ++ei) {
            if (!lts.edges[u][ei].action.visible()) edge_flow(u, static_cast<int>(ei), 2, 2);
        }
        int a = var(u, -1, 2);
        rows[{2, u}].push_back({a, 1.0});
        block_rows[q.partition->block_of[u]].push_back({a, 1.0});
    }
    rows[{source_phase, q.source}];
    for (auto &[key, row] : rows) {
        double rhs = (key.first == source_phase && key.second == q.source) ? 1.0 : 0.0;
        lp.add_constraint(std::move(row), rhs);
    }
    for (int b = 0; b < q.partition->num_blocks; ++b) {
        lp.add_constraint(std::move(block_rows[b]), q.target[b]);
    }

    LpResult r = solve(lp, tol);
    WeakReachResult out;
    out.feasible = r.feasible;
    out.near_tie = r.near_tie;
    out.certificate_size = r.certificate_size;
    if (r.feasible) {
        for (size_t v = 0; v < r.x.size(); ++v) {
            if (r.x[v] > tol) out.flow.push_back({info[v].node, info[v].edge, info[v].phase, r.x[v]});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partition refinement

namespace {

struct SplitEvent {
    int old_block;
    int new_block;
    int splitter;
    int edge;
    Action action;
    std::vector<double> vec;
};

struct History {
    Partition initial;
    std::vector<SplitEvent> events;
    std::vector<std::vector<std::pair<int, int>>> moved;  // node -> (event, new block)

    int block_at(int node, size_t e) const {
        int b = initial.block_of[node];
        for (const auto &[ev, nb] : moved[node]) {
            if (static_cast<size_t>(ev) >= e) break;
            b = nb;
        }
        return b;
    }

    // Partition in force just before event e.
    Partition at(size_t e) const {
        Partition p;
        p.num_blocks = initial.num_blocks + static_cast<int>(e);
        p.block_of.resize(initial.block_of.size());
        for (size_t n = 0; n < p.block_of.size(); ++n) p.block_of[n] = block_at(static_cast<int>(n), e);
        return p;
    }
};

// Can node t produce class vector v under label derived from action a?
using Matcher = std::function<bool(int t, const Action &a, const std::vector<double> &v, const Partition &p)>;

template <class F>
void parallel_for(size_t n, int threads, F f) {
    size_t workers = std::min<size_t>(std::max(1, threads), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    f(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string splitter_key(const Action &a, const std::vector<double> &v) {
    std::string k = to_string(a);
    char buf[32];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "|%.9f", x);
        k += buf;
    }
    return k;
}

Partition refine(const ProbLts &lts, const Partition &initial, const Matcher &match, int threads,
                 History &hist) {
    hist.initial = initial;
    hist.events.clear();
    hist.moved.assign(lts.size(), {});
    Partition p = initial;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int b = 0; b < p.num_blocks; ++b) {
            std::vector<int> members;
            for (int n = 0; n < lts.size(); ++n) {
                if (p.block_of[n] == b) members.push_back(n);
            }
            if (members.size() < 2) continue;
            std::set<std::string> seen;
            bool split = false;
            for (int s : members) {
                for (size_t ei = 0; ei < lts.edges[s].size() && !split; ++ei) {
                    const auto &e = lts.edges[s][ei];
                    auto v = class_vector(e.targets, p);
                    if (!seen.insert(splitter_key(e.action, v)).second) continue;
                    std::vector<char> ok(members.size(), 1);
                    parallel_for(members.size(), threads, [&](size_t i) {
                        if (members[i] != s) ok[i] = match(members[i], e.action, v, p);
                    });
                    if (std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; })) continue;
                    int nb = p.num_blocks++;
                    int ev = static_cast<int>(hist.events.size());
                    hist.events.push_back({b, nb, s, static_cast<int>(ei), e.action, v});
                    for (size_t i = 0; i < members.size(); ++i) {
                        if (!ok[i]) {
                            p.block_of[members[i]] = nb;
                            hist.moved[members[i]].push_back({ev, nb});
                        }
                    }
                    split = true;
                    changed = true;
                }
                if (split) break;
            }
        }
    }
    return p;
}

Partition strong_initial(const ProbLts &lts) {
    Partition p;
    p.block_of.resize(lts.size());
    std::map<int, int> ids;  // stuck class (or -1 for moving nodes) -> block
    for (int n = 0; n < lts.size(); ++n) {
        int key = lts.stuck(n) ? lts.stuck_class[n] : -1;
        auto it = ids.find(key);
        if (it == ids.end()) it = ids.emplace(key, p.num_blocks++).first;
        p.block_of[n] = it->second;
    }
    return p;
}

// A node whose internal closure has no visible move and ends only in stuck
// nodes of one context class behaves like that stuck node; everything else
// starts in a common block.
Partition weak_initial(const ProbLts &lts) {
    Partition p;
    p.block_of.resize(lts.size());
    std::map<int, int> ids;
    for (int n = 0; n < lts.size(); ++n) {
        int key = -1;
        if (lts.stuck(n)) {
            key = lts.stuck_class[n];
        } else {
            bool visible = false;
            std::set<int> classes;
            for (int u : tau_closure(lts, {n})) {
                if (lts.stuck(u)) classes.insert(lts.stuck_class[u]);
                for (const auto &e : lts.edges[u]) visible = visible || e.action.visible();
            }
            if (!visible && classes.size() == 1) key = *classes.begin();
        }
        auto it = ids.find(key);
        if (it == ids.end()) it = ids.emplace(key, p.num_blocks++).first;
        p.block_of[n] = it->second;
    }
    return p;
}

struct Checker {
    const ProbLts &lts;
    BisimOptions opt;
    bool weak;
    mutable std::atomic<int> near_ties{0};

    std::vector<std::vector<double>> edge_vectors(int t, const Action &a, const Partition &p,
                                                  std::vector<int> *idx = nullptr) const {
        std::vector<std::vector<double>> out;
        for (size_t ei = 0; ei < lts.edges[t].size(); ++ei) {
            if (lts.edges[t][ei].action == a) {
                out.push_back(class_vector(lts.edges[t][ei].targets, p));
                if (idx) idx->push_back(static_cast<int>(ei));
            }
        }
        return out;
    }

    HullResult hull(int t, const Action &a, const std::vector<double> &v, const Partition &p,
                    std::vector<int> *idx) const {
        auto pts = edge_vectors(t, a, p, idx);
        for (size_t i = 0; i < pts.size(); ++i) {
            if (vec_equal(pts[i], v, opt.tol)) {
                HullResult h;
                h.member = true;
                h.weights.assign(pts.size(), 0.0);
                h.weights[i] = 1.0;
                return h;
            }
        }
        HullResult h = convex_hull_member(pts, v, opt.tol);
        if (h.near_tie) ++near_ties;
        return h;
    }

    WeakReachResult weak_query(int t, const WeakLabel &label, const std::vector<double> &v,
                               const Partition &p) const {
        WeakReachResult r = weak_reach_feasible(lts, {t, label, v, &p}, opt.tol);
        if (r.near_tie) ++near_ties;
        return r;
    }

    bool weak_match(int t, const WeakLabel &label, const std::vector<double> &v, const Partition &p) const {
        if (label.kind == WeakLabelKind::TauHat) {
            std::vector<double> unit(p.num_blocks, 0.0);
            unit[p.block_of[t]] = 1.0;
            if (vec_equal(unit, v, opt.tol)) return true;
        }
        for (const auto &pt : edge_vectors(t, label.action, p)) {
            if (vec_equal(pt, v, opt.tol)) return true;
        }
        return weak_query(t, label, v, p).feasible;
    }

    Matcher matcher() const {
        if (weak) {
            return [this](int t, const Action &a, const std::vector<double> &v, const Partition &p) {
                return weak_match(t, WeakLabel::hat(a), v, p);
            };
        }
        return [this](int t, const Action &a, const std::vector<double> &v, const Partition &p) {
            return hull(t, a, v, p, nullptr).member;
        };
    }

    std::vector<ClassMass> masses(const std::vector<double> &v, const Partition &p) const {
        std::vector<ClassMass> out;
        auto blocks = p.blocks();
        for (int b = 0; b < p.num_blocks; ++b) {
            if (std::abs(v[b]) > opt.tol) out.push_back({b, v[b], blocks[b]});
        }
        return out;
    }

    // Nodes the matcher could end up in after an alpha-hat step.
    std::vector<int> answer_nodes(int y, const Action &a, bool strict) const {
        std::vector<int> start;
        if (!a.visible() && weak && !strict) start.push_back(y);
        for (const auto &e : lts.edges[y]) {
            if (e.action == a) {
                for (const auto &[t, p] : e.targets) start.push_back(t);
            }
        }
        if (weak) return tau_closure(lts, start);
        std::sort(start.begin(), start.end());
        start.erase(std::unique(start.begin(), start.end()), start.end());
        return start;
    }

    std::shared_ptr<Report> pick_cause(const History &hist, size_t e, int x, const Action &a,
                                       const std::vector<int> &via, int y, bool strict, int depth) const {
        std::vector<int> mine;
        for (int ei : via) {
            for (const auto &[t, p] : lts.edges[x][ei].targets) mine.push_back(t);
        }
        for (int u : mine) {
            for (int w : answer_nodes(y, a, strict)) {
                if (hist.block_at(u, e) != hist.block_at(w, e)) {
                    return explain(hist, u, w, depth + 1);
                }
            }
        }
        return nullptr;
    }

    std::shared_ptr<Report> explain(const History &hist, int c, int d, int depth = 0) const {
        auto rep = std::make_shared<Report>();
        rep->left = c;
        rep->right = d;
        if (hist.initial.block_of[c] != hist.initial.block_of[d]) {
            if (lts.stuck(c) && lts.stuck(d)) {
                rep->kind = ReportKind::TerminalContext;
                rep->message = "both configurations are stuck with different quantum contexts";
            } else if (!weak) {
                rep->kind = ReportKind::StuckMismatch;
                rep->mover = lts.stuck(c) ? d : c;
                rep->message = "one configuration is stuck and the other can move";
            } else {
                rep->kind = ReportKind::TerminalSignature;
                rep->message =
                    "after internal steps the two sides differ in visible moves or final contexts";
            }
            return rep;
        }
        size_t e = 0;
        int bc = hist.initial.block_of[c], bd = bc;
        for (; e < hist.events.size(); ++e) {
            bc = hist.block_at(c, e + 1);
            bd = hist.block_at(d, e + 1);
            if (bc != bd) break;
        }
        if (e == hist.events.size()) {
            rep->message = "no separating step recorded";
            return rep;
        }
        const SplitEvent &ev = hist.events[e];
        Partition pe = hist.at(e);
        int x = (bc == ev.old_block) ? c : d;
        int y = (x == c) ? d : c;
        rep->kind = ReportKind::UnmatchedMove;
        rep->mover = x;
        rep->action = ev.action;
        rep->target = masses(ev.vec, pe);
        std::vector<int> via;
        if (!weak) {
            std::vector<int> idx;
            HullResult hx = hull(x, ev.action, ev.vec, pe, &idx);
            for (size_t i = 0; i < idx.size() && i < hx.weights.size(); ++i) {
                if (hx.weights[i] > opt.tol) {
                    rep->realized_by.push_back({idx[i], hx.weights[i]});
                    via.push_back(idx[i]);
                }
            }
            std::vector<int> yidx;
            rep->certificate_size = hull(y, ev.action, ev.vec, pe, &yidx).certificate_size;
        } else {
            WeakLabel label = WeakLabel::hat(ev.action);
            WeakReachResult rx = weak_query(x, label, ev.vec, pe);
            for (const auto &f : rx.flow) {
                if (f.node == x && f.edge >= 0) {
                    rep->realized_by.push_back({f.edge, f.flow});
                    via.push_back(f.edge);
                }
            }
            rep->certificate_size = weak_query(y, label, ev.vec, pe).certificate_size;
        }
        rep->message = "move " + to_string(ev.action) + " of node " + std::to_string(x) +
                       " cannot be matched by node " + std::to_string(y);
        if (depth < 64) rep->cause = pick_cause(hist, e, x, ev.action, via, y, false, depth);
        return rep;
    }
};

std::vector<MatchWeight> hull_weights(int matcher, const std::vector<int> &idx, const HullResult &h, double tol) {
    std::vector<MatchWeight> out;
    for (size_t i = 0; i < idx.size() && i < h.weights.size(); ++i) {
        if (h.weights[i] > tol) out.push_back({matcher, idx[i], 1, h.weights[i]});
    }
    return out;
}

std::vector<MatchWeight> flow_weights(const WeakReachResult &r) {
    std::vector<MatchWeight> out;
    for (const auto &f : r.flow) out.push_back({f.node, f.edge, f.phase, f.flow});
    return out;
}

void finish_warnings(const Checker &ch, Verdict &v) {
    if (ch.near_ties > 0) {
        v.warnings.push_back(std::to_string(ch.near_ties.load()) +
                             " linear-program verdict(s) fell within 10x of the tolerance; "
                             "prefer exact probabilities in the input");
    }
}

void check_nodes(const ProbLts &lts, int c, int d) {
    if (c < 0 || d < 0 || c >= lts.size() || d >= lts.size()) {
        throw Error(ErrorKind::BadIndex, "configuration index outside the LTS");
    }
}

}  // namespace

Partition strong_partition(const ProbLts &lts, const BisimOptions &opt) {
    Checker ch{lts, opt, false};
    History hist;
    return refine(lts, strong_initial(lts), ch.matcher(), opt.threads, hist);
}

Partition weak_partition(const ProbLts &lts, const BisimOptions &opt) {
    Checker ch{lts, opt, true};
    History hist;
    return refine(lts, weak_initial(lts), ch.matcher(), opt.threads, hist);
}

Verdict strong_bisim(const ProbLts &lts, int c, int d, const BisimOptions &opt) {
    check_nodes(lts, c, d);
    Checker ch{lts, opt, false};
    History hist;
    Verdict v;
    v.mode = Mode::Strong;
    v.left = c;
    v.right = d;
    v.partition = refine(lts, strong_initial(lts), ch.matcher(), opt.threads, hist);
    v.equivalent = v.partition.same(c, d);
    if (!v.equivalent) {
        v.report = *ch.explain(hist, c, d);
    } else {
        for (auto [x, y] : {std::pair{c, d}, std::pair{d, c}}) {
            for (size_t ei = 0; ei < lts.edges[x].size(); ++ei) {
                const auto &e = lts.edges[x][ei];
                std::vector<int> idx;
                HullResult h = ch.hull(y, e.action, class_vector(e.targets, v.partition), v.partition, &idx);
                v.witness.push_back({x, static_cast<int>(ei), y, hull_weights(y, idx, h, opt.tol)});
            }
            if (c == d) break;
        }
    }
    finish_warnings(ch, v);
    return v;
}

Verdict weak_bisim(const ProbLts &lts, int c, int d, const BisimOptions &opt) {
    check_nodes(lts, c, d);
    Checker ch{lts, opt, true};
    History hist;
    Verdict v;
    v.mode = Mode::Weak;
    v.left = c;
    v.right = d;
    v.partition = refine(lts, weak_initial(lts), ch.matcher(), opt.threads, hist);
    v.equivalent = v.partition.same(c, d);
    if (!v.equivalent) {
        v.report = *ch.explain(hist, c, d);
    } else {
        for (auto [x, y] : {std::pair{c, d}, std::pair{d, c}}) {
            for (size_t ei = 0; ei < lts.edges[x].size(); ++ei) {
                const auto &e = lts.edges[x][ei];
                auto r = ch.weak_query(y, WeakLabel::hat(e.action), class_vector(e.targets, v.partition),
                                       v.partition);
                v.witness.push_back({x, static_cast<int>(ei), y, flow_weights(r)});
            }
            if (c == d) break;
        }
    }
    finish_warnings(ch, v);
    return v;
}

Verdict equality_check(const ProbLts &lts, int c, int d, const BisimOptions &opt) {
    check_nodes(lts, c, d);
    Checker ch{lts, opt, true};
    History hist;
    Verdict v;
    v.mode = Mode::Equality;
    v.left = c;
    v.right = d;
    v.partition = refine(lts, weak_initial(lts), ch.matcher(), opt.threads, hist);
    const Partition &w = v.partition;
    v.equivalent = true;
    if (lts.stuck(c) && lts.stuck(d) && lts.stuck_class[c] != lts.stuck_class[d]) {
        v.equivalent = false;
        Report r;
        r.kind = ReportKind::TerminalContext;
        r.left = c;
        r.right = d;
        r.message = "both configurations are stuck with different quantum contexts";
        v.report = r;
    }
    for (auto [x, y] : {std::pair{c, d}, std::pair{d, c}}) {
        for (size_t ei = 0; ei < lts.edges[x].size() && v.equivalent; ++ei) {
            const auto &e = lts.edges[x][ei];
            WeakLabel label = e.action.visible() ? WeakLabel::visible(e.action) : WeakLabel::strict_tau();
            auto vec = class_vector(e.targets, w);
            auto r = ch.weak_query(y, label, vec, w);
            if (r.feasible) {
                v.witness.push_back({x, static_cast<int>(ei), y, flow_weights(r)});
                continue;
            }
            v.equivalent = false;
            Report rep;
            rep.kind = ReportKind::UnmatchedMove;
            rep.left = c;
            rep.right = d;
            rep.mover = x;
            rep.action = e.action;
            rep.target = ch.masses(vec, w);
            rep.realized_by = {{static_cast<int>(ei), 1.0}};
            rep.certificate_size = r.certificate_size;
            rep.message = "move " + to_string(e.action) + " of node " + std::to_string(x) +
                          " has no matching " + (e.action.visible() ? "weak move" : "real internal move") +
                          " from node " + std::to_string(y);
            rep.cause = ch.pick_cause(hist, hist.events.size(), x, e.action, {static_cast<int>(ei)}, y,
                                      !e.action.visible(), 0);
            v.report = rep;
        }
        if (!v.equivalent || c == d) break;
    }
    if (!v.equivalent) v.witness.clear();
    finish_warnings(ch, v);
    return v;
}

Verdict check(Mode mode, const ProbLts &lts, int c, int d, const BisimOptions &opt) {
    switch (mode) {
        case Mode::Strong:
            return strong_bisim(lts, c, d, opt);
        case Mode::Weak:
            return weak_bisim(lts, c, d, opt);
        case Mode::Equality:
            return equality_check(lts, c, d, opt);
    }
    throw Error(ErrorKind::Precondition, "unknown mode");
}

PairCheck check_configurations(Mode mode, const Configuration &c, const Configuration &d,
                               const InputPolicy &policy, const LtsBounds &bounds,
                               const BisimOptions &opt) {
    PairCheck out;
    out.lts = build_lts(std::vector<Configuration>{c, d}, policy, bounds);
    out.prob = to_prob_lts(out.lts);
    out.verdict = check(mode, out.prob, out.lts.roots[0], out.lts.roots[1], opt);
    return out;
}

}  // namespace qccs
