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

#include "qccs/laws.h"

#include <functional>

#include "qccs/frontend.h"
#include "qccs/generator.h"

namespace qccs {

void LawReport::merge(const LawReport &other) {
    for (const auto &[law, t] : other.tally) {
        auto &mine = tally[law];
        mine.passed += t.passed;
        mine.failed += t.failed;
        mine.skipped += t.skipped;
    }
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    terms += other.terms;
}

InputPolicy law_policy() {
    InputPolicy p;
    p.default_domain = {0, 1};
    p.closed_only = false;
    return p;
}

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Runner {
    explicit Runner(const LawOptions &o) : opt(o) {}

    const LawOptions &opt;
    InputPolicy policy = law_policy();
    std::string detail;

    Outcome run(Mode mode, const ProcPtr &l, const ProcPtr &r, const QContext &ctx) {
        detail.clear();
        try {
            Configuration c = make_configuration(l, ctx);
            Configuration d = make_configuration(r, ctx);
            LtsBounds b = opt.bounds;
            b.threads = opt.threads;
            BisimOptions bo{opt.tol, opt.threads};
            PairCheck pc = check_configurations(mode, c, d, policy, b, bo);
            if (pc.verdict.equivalent) return Outcome::Pass;
            detail = pc.verdict.report ? pc.verdict.report->message : "not equivalent";
            return Outcome::Fail;
        } catch (const Error &e) {
            if (e.kind() == ErrorKind::BoundExceeded) return Outcome::Skip;
            detail = e.what();
            return Outcome::Fail;
        }
    }

    void record(LawReport &rep, const std::string &law, Mode mode, const ProcPtr &l, const ProcPtr &r,
                const QContext &ctx) {
        auto &t = rep.tally[law];
        switch (run(mode, l, r, ctx)) {
            case Outcome::Pass:
                ++t.passed;
                break;
            case Outcome::Skip:
                ++t.skipped;
                break;
            case Outcome::Fail:
                ++t.failed;
                rep.failures.push_back({law, mode, pretty_print(*l), pretty_print(*r), detail});
                break;
        }
    }
};

}  // namespace

LawReport check_laws(const LawOptions &opt) {
    GenOptions go;
    go.max_depth = opt.max_depth;
    TermGenerator gen(opt.seed, go);
    Runner runner(opt);
    LawReport rep;

    for (int i = 0; i < opt.samples; ++i) {
        ProcPtr e = gen.term(), f = gen.term(), g = gen.term();
        QContext ctx = gen.context();
        ++rep.terms;

        std::vector<std::pair<std::string, std::pair<ProcPtr, ProcPtr>>> laws = {
            {"E+F ~ F+E", {pr::sum(e, f), pr::sum(f, e)}},
            {"E+E ~ E", {pr::sum(e, e), e}},
            {"(E+F)+G ~ E+(F+G)", {pr::sum(pr::sum(e, f), g), pr::sum(e, pr::sum(f, g))}},
            {"E+nil ~ E", {pr::sum(e, pr::nil()), e}},
            {"E||nil ~ E", {pr::parallel(e, pr::nil()), e}},
            {"E ~ E", {e, e}},
        };
        for (auto &[name, sides] : laws) {
            ProcPtr right = sides.second;
            if (opt.mutate) {
                right = mutate_gate(right, gen.rng());
                if (!right) {
                    ++rep.tally[name].skipped;
                    continue;
                }
            }
            runner.record(rep, name, Mode::Strong, sides.first, right, ctx);
        }
    }
    return rep;
}

namespace {

struct Pair {
    ProcPtr left;
    ProcPtr right;
    QContext ctx;
};

// Candidates that are often, but not always, related by the checker.
Pair candidate(TermGenerator &gen, Mode mode, const std::set<std::string> &avail, int depth) {
    ProcPtr e = gen.term(avail, depth), f = gen.term(avail, depth);
    QContext ctx = gen.context();
    std::vector<std::string> qs(avail.begin(), avail.end());
    std::string q = qs[std::uniform_int_distribution<size_t>(0, qs.size() - 1)(gen.rng())];
    auto u = [&](const char *g, ProcPtr body) { return pr::unitary(gen.gate(g), {q}, std::move(body)); };
    int kinds = mode == Mode::Strong ? 5 : 8;
    switch (std::uniform_int_distribution<int>(0, kinds - 1)(gen.rng())) {
        case 0:
            return {pr::sum(e, f), pr::sum(f, e), ctx};
        case 1:
            return {e, pr::sum(e, e), ctx};
        case 2: {
            ProcPtr m = mutate_gate(e, gen.rng());
            return {e, m ? m : e, ctx};
        }
        case 3:
            return {e, f, ctx};
        case 4:
            return {pr::parallel(e, pr::nil()), e, ctx};
        case 5:
            return {e, u("I", e), ctx};
        case 6:
            return {u("H", u("H", e)), u("X", u("X", e)), ctx};
        default:
            return {u("I", e), u("I", u("I", e)), ctx};
    }
}

// Term equivalence quantifies over all contexts; a pair counts only if it
// holds on its own context and on a few more random ones.
bool established(Runner &runner, TermGenerator &gen, Mode mode, const Pair &p) {
    if (runner.run(mode, p.left, p.right, p.ctx) != Outcome::Pass) return false;
    for (int k = 0; k < 2; ++k) {
        if (runner.run(mode, p.left, p.right, gen.context()) != Outcome::Pass) return false;
    }
    return true;
}

std::string unused_qubit(const GenOptions &go, const std::set<std::string> &used) {
    for (const auto &q : go.qubits) {
        if (!used.count(q)) return q;
    }
    return {};
}

}  // namespace

LawReport check_congruence(const LawOptions &opt) {
    GenOptions go;
    go.max_depth = opt.max_depth;
    TermGenerator gen(opt.seed, go);
    Runner runner(opt);
    LawReport rep;

    // Pair terms leave the last qubit free so that output and gate prefixes on
    // a qubit outside both terms are always available.
    std::set<std::string> avail(go.qubits.begin(), go.qubits.end() - 1);
    const int depth = std::min(opt.max_depth, 3);

    for (Mode mode : {Mode::Strong, Mode::Weak}) {
        std::string tag(mode_name(mode));
        int found = 0;
        for (int attempt = 0; found < opt.pairs && attempt < opt.pairs * 40; ++attempt) {
            Pair p = candidate(gen, mode, avail, depth);
            if (!established(runner, gen, mode, p)) continue;
            ++found;
            ++rep.terms;

            std::set<std::string> used = qv(*p.left);
            for (const auto &v : qv(*p.right)) used.insert(v);
            std::string free_q = unused_qubit(go, used);
            std::string any_q = go.qubits.front();
            std::string binder = "t";

            using Ctx = std::function<ProcPtr(ProcPtr)>;
            std::vector<std::pair<std::string, Ctx>> contexts = {
                {"prefix c!", [](ProcPtr x) { return pr::coutput("a", ex::num(1), x); }},
                {"prefix c?", [](ProcPtr x) { return pr::cinput("a", "y", x); }},
                {"prefix qbit", [&](ProcPtr x) { return pr::qbit(binder, x); }},
                {"prefix qc?", [&](ProcPtr x) { return pr::qinput("qa", binder, x); }},
                {"prefix U", [&](ProcPtr x) { return pr::unitary(gen.gate("H"), {any_q}, x); }},
                {"prefix M", [&](ProcPtr x) { return pr::measure(gen.observable("M01"), {any_q}, "y", x); }},
                {"prefix if", [](ProcPtr x) { return pr::guard(ex::boolean(true), x); }},
            };
            if (!free_q.empty()) {
                contexts.push_back({"prefix qc!", [&](ProcPtr x) { return pr::qoutput("qa", free_q, x); }});
            }
            RelabelFn f = gen.relabeling();
            contexts.push_back({"relabel", [&](ProcPtr x) { return pr::relabel(x, f); }});
            ProcPtr r = gen.classical_term(2);
            contexts.push_back({"parallel classical R", [&](ProcPtr x) { return pr::parallel(x, r); }});
            ProcPtr g = gen.term(std::set<std::string>(go.qubits.begin(), go.qubits.end()), depth);
            if (mode == Mode::Strong) {
                contexts.push_back({"sum +G", [&](ProcPtr x) { return pr::sum(x, g); }});
            }
            for (const auto &[name, c] : contexts) {
                runner.record(rep, tag + " " + name, mode, c(p.left), c(p.right), p.ctx);
            }
        }
        rep.tally[tag + " pairs"].passed = found;
    }

    // Equality: E ~eq F must give E ~weak F and E+G ~weak F+G.
    int found = 0;
    for (int attempt = 0; found < opt.eq_pairs && attempt < opt.eq_pairs * 40; ++attempt) {
        Pair p = candidate(gen, Mode::Equality, avail, depth);
        if (!established(runner, gen, Mode::Equality, p)) continue;
        ++found;
        ++rep.terms;
        runner.record(rep, "eq implies weak", Mode::Weak, p.left, p.right, p.ctx);
        ProcPtr g = gen.term(std::set<std::string>(go.qubits.begin(), go.qubits.end()), depth);
        runner.record(rep, "eq sum +G weak", Mode::Weak, pr::sum(p.left, g), pr::sum(p.right, g), p.ctx);
    }
    rep.tally["eq pairs"].passed = found;
    return rep;
}

}  // namespace qccs
