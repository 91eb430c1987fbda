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

#include "qccs/lts.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "qccs/error.h"

namespace qccs {

bool operator<(const Action &a, const Action &b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.channel != b.channel) return a.channel < b.channel;
    if (a.value != b.value) return a.value < b.value;
    return a.qvar < b.qvar;
}

namespace {

std::string fmt_value(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(const Action &a) {
    switch (a.kind) {
        case ActionKind::Tau:
            return "tau";
        case ActionKind::CIn:
            return a.channel + "?" + fmt_value(a.value);
        case ActionKind::COut:
            return a.channel + "!" + fmt_value(a.value);
        case ActionKind::QIn:
            return a.channel + "?" + a.qvar;
        case ActionKind::QOut:
            return a.channel + "!" + a.qvar;
    }
    return "?";
}

Configuration make_configuration(ProcPtr proc, QContext ctx) {
    if (auto v = check_wellformed(*proc)) {
        throw Error(ErrorKind::Precondition,
                    std::string("ill-formed process (") + std::string(violation_name(v->kind)) +
                        "): " + v->detail);
    }
    auto fv = fv_classical(*proc);
    if (!fv.empty()) {
        throw Error(ErrorKind::Precondition,
                    "process has free classical variable '" + *fv.begin() + "'");
    }
    for (const auto &q : qv(*proc)) {
        if (!ctx.contains(q)) {
            throw Error(ErrorKind::UnknownVar, "free qubit '" + q + "' is missing from the context");
        }
    }
    std::string key = canonical_key(*proc);
    return {std::move(proc), std::move(ctx), std::move(key)};
}

bool same_configuration(const Configuration &a, const Configuration &b, double tol) {
    return a.key == b.key && context_equal(a.ctx, b.ctx, tol);
}

Distribution Distribution::point(Configuration c) {
    Distribution d;
    d.support.push_back({std::move(c), 1.0});
    return d;
}

double Distribution::total() const {
    double s = 0.0;
    for (const auto &[c, p] : support) s += p;
    return s;
}

namespace {

void accumulate(Distribution &into, const Configuration &c, double p) {
    for (auto &[d, q] : into.support) {
        if (same_configuration(c, d)) {
            q += p;
            return;
        }
    }
    into.support.push_back({c, p});
}

}  // namespace

Distribution combine_distributions(const std::vector<std::pair<double, Distribution>> &parts) {
    double total = 0.0;
    for (const auto &[p, mu] : parts) {
        if (!(p > 0.0) || p > 1.0 + 1e-9) {
            throw Error(ErrorKind::BadWeights, "combination weight " + fmt_value(p) + " outside (0,1]");
        }
        total += p;
    }
    if (parts.empty() || std::abs(total - 1.0) > 1e-9) {
        throw Error(ErrorKind::BadWeights, "combination weights sum to " + fmt_value(total));
    }
    Distribution out;
    for (const auto &[p, mu] : parts) {
        for (const auto &[c, q] : mu.support) accumulate(out, c, p * q);
    }
    return out;
}

bool distribution_equal(const Distribution &a, const Distribution &b, double tol) {
    if (a.support.size() != b.support.size()) return false;
    for (const auto &[c, p] : a.support) {
        bool found = false;
        for (const auto &[d, q] : b.support) {
            if (same_configuration(c, d, tol)) {
                found = std::abs(p - q) <= tol;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

const std::vector<double> &InputPolicy::domain(const std::string &channel) const {
    auto it = classical_domains.find(channel);
    return it == classical_domains.end() ? default_domain : it->second;
}

std::vector<QuantumRecipe> InputPolicy::default_recipes() {
    Matrix plus = Matrix::Constant(2, 2, Complex(0.5, 0.0));
    return {{"|0>", outer(basis_ket("0"))}, {"|1>", outer(basis_ket("1"))}, {"|+>", plus}};
}

// ---------------------------------------------------------------------------
// Rule engine
//
// Moves are computed for a subterm against the global context. Inputs from
// an unknown partner stay symbolic (a continuation) until they either meet a
// matching output (C-Com) or reach the top level, where the input policy
// instantiates them.

namespace {

struct Branch {
    double p;
    ProcPtr proc;
    QContext ctx;
};

enum class MoveKind { Concrete, CInSym, QInSym };

struct Move {
    MoveKind kind = MoveKind::Concrete;
    Action action;  // for symbolic moves only kind and channel are meaningful
    std::vector<Branch> branches;
    std::function<ProcPtr(double)> ccont;
    std::function<ProcPtr(const std::string &)> qcont;
};

Move concrete(Action a, ProcPtr proc, QContext ctx) {
    Move m;
    m.action = std::move(a);
    m.branches.push_back({1.0, std::move(proc), std::move(ctx)});
    return m;
}

template <class Wrap>
Move wrap_move(const Move &m, Wrap wrap) {
    Move out = m;
    for (auto &b : out.branches) b.proc = wrap(b.proc);
    if (m.ccont) {
        auto inner = m.ccont;
        out.ccont = [inner, wrap](double v) { return wrap(inner(v)); };
    }
    if (m.qcont) {
        auto inner = m.qcont;
        out.qcont = [inner, wrap](const std::string &r) { return wrap(inner(r)); };
    }
    return out;
}

class Engine {
   public:
    explicit Engine(const QContext &ctx, std::vector<Action> *blocked = nullptr)
        : ctx_(ctx), blocked_(blocked) {}

    std::vector<Move> moves(const ProcPtr &p) {
        std::vector<Move> out;
        switch (p->kind) {
            case ProcKind::Nil:
                break;
            case ProcKind::CInput: {
                Move m;
                m.kind = MoveKind::CInSym;
                m.action = Action::cin(p->channel, 0.0);
                ProcPtr self = p;
                m.ccont = [self](double v) { return subst_classical(self->body, self->var, v); };
                out.push_back(std::move(m));
                break;
            }
            case ProcKind::COutput:
                out.push_back(concrete(Action::cout(p->channel, eval_expr(*p->expr)), p->body, ctx_));
                break;
            case ProcKind::QbitNew: {
                std::string r = fresh_qvar(ctx_);
                out.push_back(concrete(Action::tau(), subst_quantum(p->body, p->var, r),
                                       new_qubit(ctx_, r)));
                break;
            }
            case ProcKind::QInput: {
                // Rule 1: a fresh system from the environment.
                Move m;
                m.kind = MoveKind::QInSym;
                m.action = Action::qin(p->channel, {});
                ProcPtr self = p;
                m.qcont = [self](const std::string &r) {
                    return subst_quantum(self->body, self->var, r);
                };
                out.push_back(std::move(m));
                // Rule 2: a system already in the context, not owned by the residual.
                auto owned = qv(*p->body);
                owned.erase(p->var);
                for (const auto &r : ctx_.vars()) {
                    if (owned.count(r)) continue;
                    out.push_back(concrete(Action::qin(p->channel, r),
                                           subst_quantum(p->body, p->var, r), ctx_));
                }
                break;
            }
            case ProcKind::QOutput:
                out.push_back(concrete(Action::qout(p->channel, p->var), p->body, ctx_));
                break;
            case ProcKind::Unitary:
                out.push_back(concrete(Action::tau(), p->body,
                                       apply_unitary(ctx_, p->gate->matrix, p->qubits)));
                break;
            case ProcKind::Measure: {
                Move m;
                for (auto &o : measure(ctx_, p->observable->spectrum, p->qubits)) {
                    m.branches.push_back(
                        {o.probability, subst_classical(p->body, p->var, o.eigenvalue), std::move(o.post)});
                }
                out.push_back(std::move(m));
                break;
            }
            case ProcKind::Sum: {
                out = moves(p->body);
                auto r = moves(p->other);
                out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
                break;
            }
            case ProcKind::Parallel:
                out = parallel(p);
                break;
            case ProcKind::Relabel: {
                const RelabelFn &f = p->relabel;
                auto wrap = [f](const ProcPtr &q) { return pr::relabel(q, f); };
                for (const auto &m : moves(p->body)) {
                    Move w = wrap_move(m, wrap);
                    if (w.action.visible()) w.action.channel = apply_relabel(f, w.action.channel);
                    out.push_back(std::move(w));
                }
                break;
            }
            case ProcKind::Restrict: {
                const auto &l = p->restricted;
                auto wrap = [l](const ProcPtr &q) { return pr::restrict(q, l); };
                for (const auto &m : moves(p->body)) {
                    if (m.action.visible() && l.count(m.action.channel)) {
                        if (blocked_) blocked_->push_back(m.action);
                        continue;
                    }
                    out.push_back(wrap_move(m, wrap));
                }
                break;
            }
            case ProcKind::If:
                if (eval_bool(*p->expr)) out = moves(p->body);
                break;
        }
        return out;
    }

   private:
    std::vector<Move> parallel(const ProcPtr &p) {
        const ProcPtr l = p->body;
        const ProcPtr r = p->other;
        auto ml = moves(l);
        auto mr = moves(r);
        auto qvl = qv(*l);
        auto qvr = qv(*r);
        std::vector<Move> out;
        auto with_right = [r](const ProcPtr &x) { return pr::parallel(x, r); };
        auto with_left = [l](const ProcPtr &x) { return pr::parallel(l, x); };
        // Interleaving; a received system must not belong to the other side.
        for (const auto &m : ml) {
            if (m.kind == MoveKind::Concrete && m.action.kind == ActionKind::QIn && qvr.count(m.action.qvar)) {
                continue;
            }
            out.push_back(wrap_move(m, with_right));
        }
        for (const auto &m : mr) {
            if (m.kind == MoveKind::Concrete && m.action.kind == ActionKind::QIn && qvl.count(m.action.qvar)) {
                continue;
            }
            out.push_back(wrap_move(m, with_left));
        }
        // Synchronization.
        auto sync = [&](const Move &a, const Move &b, bool a_left) {
            auto join = [&](const ProcPtr &x, const ProcPtr &y) {
                return a_left ? pr::parallel(x, y) : pr::parallel(y, x);
            };
            if (a.kind != MoveKind::Concrete || a.action.channel != b.action.channel) return;
            if (a.action.kind == ActionKind::COut && b.kind == MoveKind::CInSym) {
                out.push_back(concrete(Action::tau(), join(a.branches[0].proc, b.ccont(a.action.value)), ctx_));
            } else if (a.action.kind == ActionKind::QOut && b.kind == MoveKind::Concrete &&
                       b.action.kind == ActionKind::QIn && b.action.qvar == a.action.qvar) {
                out.push_back(concrete(Action::tau(), join(a.branches[0].proc, b.branches[0].proc), ctx_));
            }
        };
        for (const auto &a : ml) {
            for (const auto &b : mr) {
                sync(a, b, true);
                sync(b, a, false);
            }
        }
        return out;
    }

    const QContext &ctx_;
    std::vector<Action> *blocked_;
};

Configuration config_of(ProcPtr proc, QContext ctx) {
    std::string key = canonical_key(*proc);
    return {std::move(proc), std::move(ctx), std::move(key)};
}

void add_unique(std::vector<Transition> &out, Transition t) {
    for (const auto &e : out) {
        if (e.action == t.action && distribution_equal(e.target, t.target)) return;
    }
    out.push_back(std::move(t));
}

}  // namespace

std::vector<Transition> transitions(const Configuration &c, const InputPolicy &policy) {
    Engine engine(c.ctx);
    std::vector<Transition> out;
    for (auto &m : engine.moves(c.proc)) {
        switch (m.kind) {
            case MoveKind::Concrete: {
                Distribution d;
                for (auto &b : m.branches) accumulate(d, config_of(b.proc, b.ctx), b.p);
                add_unique(out, {m.action, std::move(d)});
                break;
            }
            case MoveKind::CInSym:
                if (policy.closed_only) {
                    throw Error(ErrorKind::OpenProcess,
                                "process can read channel '" + m.action.channel +
                                    "' from the environment; restrict it or allow open inputs");
                }
                for (double v : policy.domain(m.action.channel)) {
                    add_unique(out, {Action::cin(m.action.channel, v),
                                     Distribution::point(config_of(m.ccont(v), c.ctx))});
                }
                break;
            case MoveKind::QInSym: {
                if (policy.closed_only) {
                    throw Error(ErrorKind::OpenProcess,
                                "process can receive a fresh qubit on '" + m.action.channel +
                                    "' from the environment; restrict it or allow open inputs");
                }
                std::string r = fresh_qvar(c.ctx);
                for (const auto &recipe : policy.quantum_recipes) {
                    QContext ext = extend_with_input(c.ctx, r, tensor(recipe.state, c.ctx.rho()));
                    add_unique(out, {Action::qin(m.action.channel, r),
                                     Distribution::point(config_of(m.qcont(r), std::move(ext)))});
                }
                break;
            }
        }
    }
    return out;
}

std::vector<Action> blocked_actions(const Configuration &c) {
    std::vector<Action> blocked;
    Engine engine(c.ctx, &blocked);
    engine.moves(c.proc);
    std::sort(blocked.begin(), blocked.end());
    blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());
    return blocked;
}

// ---------------------------------------------------------------------------
// LTS

namespace {

std::string index_key(const Configuration &c) {
    auto vars = c.ctx.vars();
    std::sort(vars.begin(), vars.end());
    std::string k = c.key;
    for (const auto &v : vars) k += "|" + v;
    return k;
}

}  // namespace

int Lts::find(const Configuration &c) const {
    auto it = index_.find(index_key(c));
    if (it == index_.end()) return -1;
    for (int i : it->second) {
        if (context_equal(nodes[i].config.ctx, c.ctx)) return i;
    }
    return -1;
}

int Lts::insert(Configuration c, int depth) {
    int idx = size();
    index_[index_key(c)].push_back(idx);
    nodes.push_back({std::move(c), {}, depth});
    return idx;
}

Lts build_lts(const std::vector<Configuration> &roots, const InputPolicy &policy,
              const LtsBounds &bounds) {
    Lts lts;
    std::vector<int> frontier;
    auto add = [&](const Configuration &c, int depth) {
        int j = lts.find(c);
        if (j >= 0) return j;
        if (static_cast<size_t>(lts.size()) >= bounds.max_nodes) {
            throw Error(ErrorKind::BoundExceeded,
                        "max_nodes bound of " + std::to_string(bounds.max_nodes) + " exceeded");
        }
        if (depth > bounds.max_depth) {
            throw Error(ErrorKind::BoundExceeded,
                        "max_depth bound of " + std::to_string(bounds.max_depth) + " exceeded");
        }
        j = lts.insert(c, depth);
        frontier.push_back(j);
        return j;
    };
    for (const auto &r : roots) lts.roots.push_back(add(r, 0));

    while (!frontier.empty()) {
        std::vector<int> level;
        level.swap(frontier);
        std::vector<std::vector<Transition>> results(level.size());
        std::vector<std::exception_ptr> errors(level.size());
        auto work = [&](size_t i) {
            try {
                results[i] = transitions(lts.nodes[level[i]].config, policy);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        };
        size_t nthreads = std::min<size_t>(std::max(1, bounds.threads), level.size());
        if (nthreads <= 1) {
            for (size_t i = 0; i < level.size(); ++i) work(i);
        } else {
            std::atomic<size_t> next{0};
            std::vector<std::thread> pool;
            for (size_t t = 0; t < nthreads; ++t) {
                pool.emplace_back([&] {
                    for (size_t i; (i = next.fetch_add(1)) < level.size();) work(i);
                });
            }
            for (auto &th : pool) th.join();
        }
        for (size_t i = 0; i < level.size(); ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            int src = level[i];
            int depth = lts.nodes[src].depth + 1;
            for (auto &t : results[i]) {
                LtsEdge e{t.action, {}};
                for (const auto &[c, p] : t.target.support) e.targets.push_back({add(c, depth), p});
                lts.nodes[src].edges.push_back(std::move(e));
            }
        }
    }
    return lts;
}

Lts build_lts(const Configuration &root, const InputPolicy &policy, const LtsBounds &bounds) {
    return build_lts(std::vector<Configuration>{root}, policy, bounds);
}

std::vector<const LtsEdge *> combined_transitions(const Lts &lts, int node, const Action &a) {
    std::vector<const LtsEdge *> out;
    for (const auto &e : lts.nodes.at(node).edges) {
        if (e.action == a) out.push_back(&e);
    }
    return out;
}

std::vector<NodeDistribution> lift_transition(const Lts &lts, const NodeDistribution &mu,
                                              const Action &a, size_t cap) {
    std::vector<std::vector<const LtsEdge *>> options;
    std::string missing;
    for (const auto &[n, p] : mu) {
        options.push_back(combined_transitions(lts, n, a));
        if (options.back().empty()) missing += (missing.empty() ? "" : ", ") + std::to_string(n);
    }
    if (!missing.empty()) {
        throw Error(ErrorKind::NotEnabled,
                    "action " + to_string(a) + " is not enabled at node(s) " + missing);
    }
    std::vector<NodeDistribution> out;
    std::vector<size_t> choice(mu.size(), 0);
    while (out.size() < cap) {
        std::map<int, double> acc;
        for (size_t i = 0; i < mu.size(); ++i) {
            for (const auto &[t, q] : options[i][choice[i]]->targets) acc[t] += mu[i].second * q;
        }
        out.emplace_back(acc.begin(), acc.end());
        size_t k = 0;
        while (k < choice.size() && ++choice[k] == options[k].size()) choice[k++] = 0;
        if (k == choice.size()) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Trace runner

Trace run_trace(const Configuration &c0, const InputPolicy &policy, const Scheduler &scheduler,
                size_t max_steps) {
    Trace trace;
    Distribution cur = Distribution::point(c0);
    std::mt19937_64 rng(scheduler.seed);
    size_t script_pos = 0;
    auto pick = [&](size_t n) -> size_t {
        switch (scheduler.kind) {
            case SchedulerKind::First:
                return 0;
            case SchedulerKind::Random:
                return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
            case SchedulerKind::Script: {
                int k = scheduler.script[script_pos++];
                if (k < 0 || static_cast<size_t>(k) >= n) {
                    throw Error(ErrorKind::Precondition,
                                "script choice " + std::to_string(k) + " out of range (" +
                                    std::to_string(n) + " transitions)");
                }
                return static_cast<size_t>(k);
            }
        }
        return 0;
    };

    for (size_t step = 0; step < max_steps; ++step) {
        std::vector<std::vector<Transition>> ts;
        int lead = -1;
        for (size_t i = 0; i < cur.support.size(); ++i) {
            ts.push_back(transitions(cur.support[i].first, policy));
            if (lead < 0 && !ts.back().empty()) lead = static_cast<int>(i);
        }
        if (lead < 0) {
            for (const auto &[c, p] : cur.support) {
                auto blocked = blocked_actions(c);
                if (!blocked.empty()) {
                    std::string msg = "stuck; blocked actions:";
                    for (const auto &a : blocked) msg += " " + to_string(a);
                    throw Error(ErrorKind::Stuck, msg);
                }
            }
            break;
        }
        if (scheduler.kind == SchedulerKind::Script && script_pos >= scheduler.script.size()) break;
        const Transition &chosen = ts[lead][pick(ts[lead].size())];
        const Action action = chosen.action;
        std::vector<std::pair<double, Distribution>> parts;
        for (size_t i = 0; i < cur.support.size(); ++i) {
            const auto &[c, p] = cur.support[i];
            if (ts[i].empty()) {
                parts.push_back({p, Distribution::point(c)});  // finished branch stays put
                continue;
            }
            std::vector<const Transition *> cand;
            for (const auto &t : ts[i]) {
                if (t.action == action) cand.push_back(&t);
            }
            if (cand.empty()) {
                throw Error(ErrorKind::NotEnabled,
                            "scheduler chose " + to_string(action) + " but a branch cannot perform it");
            }
            if (static_cast<int>(i) == lead) {
                parts.push_back({p, chosen.target});
                continue;
            }
            size_t k = 0;
            if (scheduler.kind == SchedulerKind::Random) {
                k = std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng);
            }
            parts.push_back({p, cand[k]->target});
        }
        // Renormalize against accumulated round-off before combining.
        double total = 0.0;
        for (const auto &pt : parts) total += pt.first;
        for (auto &pt : parts) pt.first /= total;
        Distribution after = combine_distributions(parts);
        trace.steps.push_back({action, cur, after});
        if (scheduler.sample && after.support.size() > 1) {
            std::vector<double> w;
            for (const auto &[c, p] : after.support) w.push_back(p);
            size_t k = std::discrete_distribution<size_t>(w.begin(), w.end())(rng);
            cur = Distribution::point(after.support[k].first);
        } else {
            cur = std::move(after);
        }
    }
    trace.final = cur;
    return trace;
}

}  // namespace qccs
