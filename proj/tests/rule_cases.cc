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

#include "rule_cases.h"

#include <cmath>
#include <optional>
#include <random>

#include "qccs/error.h"
#include "qccs/frontend.h"
#include "qccs/generator.h"
#include "qccs/lts.h"
#include "test_util.h"

namespace qccs::testing {

namespace {

struct Mismatch {
    std::string msg;
};

void expect(bool cond, const std::string &msg) {
    if (!cond) throw Mismatch{msg};
}

const SourceFile &env() {
    static const SourceFile e = generator_env();
    return e;
}

ProcPtr P(std::string_view text) { return parse_process(text, env()); }

Configuration cfg(std::string_view text, QContext ctx = {}) { return make_configuration(P(text), std::move(ctx)); }

InputPolicy open_policy() {
    InputPolicy p;
    p.closed_only = false;
    p.default_domain = {0, 1};
    return p;
}

std::string list(const std::vector<Transition> &ts) {
    std::string s = "[";
    for (const auto &t : ts) s += (s.size() > 1 ? " " : "") + to_string(t.action);
    return s + "]";
}

std::vector<const Transition *> with(const std::vector<Transition> &ts, const Action &a) {
    std::vector<const Transition *> out;
    for (const auto &t : ts) {
        if (t.action == a) out.push_back(&t);
    }
    return out;
}

const Transition &one(const std::vector<Transition> &ts, const Action &a) {
    auto m = with(ts, a);
    expect(m.size() == 1, "expected exactly one " + to_string(a) + " in " + list(ts));
    return *m[0];
}

void absent(const std::vector<Transition> &ts, const Action &a) {
    expect(with(ts, a).empty(), to_string(a) + " should not be enabled: " + list(ts));
}

/// The target is the Dirac distribution on <proc; ctx>.
void lands(const Transition &t, std::string_view proc, const QContext &ctx) {
    expect(t.target.support.size() == 1, to_string(t.action) + " should have a point target");
    const auto &[c, p] = t.target.support[0];
    expect(std::abs(p - 1.0) <= 1e-12, "point mass is " + std::to_string(p));
    expect(c.key == canonical_key(*P(proc)), "target process " + c.key + ", expected " + std::string(proc));
    expect(context_equal(c.ctx, ctx), "target context differs after " + to_string(t.action));
}

std::optional<ErrorKind> thrown(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    return std::nullopt;
}

QContext ctx1(const std::string &q, const Matrix &ket) { return QContext({q}, dm(ket)); }

Matrix random_density(int qubits, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::Index d = Eigen::Index{1} << qubits;
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    }
    Matrix r = a * a.adjoint();
    return r / r.trace();
}

RuleCase make(std::string rule, bool positive, std::string name, std::function<void()> body) {
    return {std::move(rule), positive, std::move(name), [body] {
                try {
                    body();
                } catch (const Mismatch &m) {
                    return m.msg;
                } catch (const std::exception &e) {
                    return std::string("unexpected exception: ") + e.what();
                }
                return std::string();
            }};
}

std::vector<RuleCase> build() {
    std::vector<RuleCase> cs;

    // C-Inp
    cs.push_back(make("C-Inp", true, "input offers every domain value", [] {
        auto ts = transitions(cfg("a?x.b!x.nil"), open_policy());
        expect(ts.size() == 2, "expected two inputs, got " + list(ts));
        lands(one(ts, Action::cin("a", 0)), "b!0.nil", {});
        lands(one(ts, Action::cin("a", 1)), "b!1.nil", {});
    }));
    cs.push_back(make("C-Inp", false, "no value outside the domain; closed policy refuses", [] {
        auto ts = transitions(cfg("a?x.nil"), open_policy());
        absent(ts, Action::cin("a", 2));
        auto k = thrown([] { transitions(cfg("a?x.nil"), InputPolicy{}); });
        expect(k == ErrorKind::OpenProcess, "closed policy should raise OpenProcess");
    }));

    // C-Outp
    cs.push_back(make("C-Outp", true, "output evaluates its expression", [] {
        auto ts = transitions(cfg("a!(1+2).nil"), InputPolicy{});
        expect(ts.size() == 1, "expected one transition, got " + list(ts));
        lands(one(ts, Action::cout("a", 3)), "nil", {});
    }));
    cs.push_back(make("C-Outp", false, "free classical variable rejected", [] {
        auto p = pr::coutput("a", ex::var("x"), pr::nil());
        auto k = thrown([&] { make_configuration(p, {}); });
        expect(k == ErrorKind::Precondition, "open output should not form a configuration");
        auto ts = transitions(cfg("a!(1+2).nil"), InputPolicy{});
        absent(ts, Action::cout("a", 2));
    }));

    // C-Com
    cs.push_back(make("C-Com", true, "output meets input in both orientations", [] {
        auto ts = transitions(cfg("(a!1.nil || a?x.b!x.nil) \\ {a}"), InputPolicy{});
        expect(ts.size() == 1, "expected only tau, got " + list(ts));
        lands(one(ts, Action::tau()), "(nil || b!1.nil) \\ {a}", {});
        auto ts2 = transitions(cfg("(a?x.b!x.nil || a!0.nil) \\ {a}"), InputPolicy{});
        lands(one(ts2, Action::tau()), "(b!0.nil || nil) \\ {a}", {});
    }));
    cs.push_back(make("C-Com", false, "different channels do not synchronize", [] {
        auto ts = transitions(cfg("(a!1.nil || b?x.nil) \\ {a, b}"), InputPolicy{});
        expect(ts.empty(), "expected no transitions, got " + list(ts));
    }));

    // Q-New
    cs.push_back(make("Q-New", true, "new qubit starts in |0>", [] {
        QContext c = ctx1("q", ket("1"));
        auto ts = transitions(cfg("qbit t.H[t].X[q].nil", c), InputPolicy{});
        lands(one(ts, Action::tau()), "H[#0].X[q].nil", QContext({"#0", "q"}, dm(ket("01"))));
    }));
    cs.push_back(make("Q-New", false, "a name already in the context is not reused", [] {
        QContext c = ctx1("#0", ket("1"));
        auto ts = transitions(cfg("qbit t.H[t].nil", c), InputPolicy{});
        const auto &t = one(ts, Action::tau());
        const auto &vars = t.target.support.at(0).first.ctx.vars();
        expect(vars.size() == 2 && vars[0] != "#0", "fresh name collides with #0");
        lands(t, "H[#1].nil", QContext({"#1", "#0"}, dm(ket("01"))));
    }));

    // Q-Inp, first variant
    cs.push_back(make("Q-Inp/1", true, "fresh system per recipe, reducing to the old state", [] {
        Matrix rho = random_density(1, 7);
        QContext c({"q"}, rho);
        auto ts = transitions(cfg("qa?t.X[t].nil || I[q].nil", c), open_policy());
        auto ins = with(ts, Action::qin("qa", "#0"));
        auto recipes = InputPolicy::default_recipes();
        expect(ins.size() == recipes.size(), "expected one input per recipe, got " + list(ts));
        for (size_t i = 0; i < ins.size(); ++i) {
            lands(*ins[i], "X[#0].nil || I[q].nil", QContext({"#0", "q"}, tensor(recipes[i].state, rho)));
            const auto &ext = ins[i]->target.support[0].first.ctx;
            std::vector<std::string> keep{"q"};
            expect(approx_equal(reduced_state(ext, keep), rho), "Tr_r sigma differs from rho");
        }
    }));
    cs.push_back(make("Q-Inp/1", false, "closed policy refuses a fresh input", [] {
        auto k = thrown([] { transitions(cfg("qa?t.H[t].nil"), InputPolicy{}); });
        expect(k == ErrorKind::OpenProcess, "closed policy should raise OpenProcess");
    }));

    // Q-Inp, second variant
    cs.push_back(make("Q-Inp/2", true, "a qubit already in the context can be received", [] {
        QContext c = ctx1("q", plus());
        auto ts = transitions(cfg("qa?t.X[t].nil", c), open_policy());
        lands(one(ts, Action::qin("qa", "q")), "X[q].nil", c);
    }));
    cs.push_back(make("Q-Inp/2", false, "a qubit the residual still uses is excluded", [] {
        QContext c({"q", "r"}, dm(ket("01")));
        auto ts = transitions(cfg("qa?t.X[q].nil", c), open_policy());
        lands(one(ts, Action::qin("qa", "r")), "X[q].nil", c);
        absent(ts, Action::qin("qa", "q"));
    }));

    // Q-Outp
    cs.push_back(make("Q-Outp", true, "output leaves the context unchanged", [] {
        QContext c({"q"}, random_density(1, 11));
        auto ts = transitions(cfg("qa!q.nil", c), InputPolicy{});
        expect(ts.size() == 1, "expected one transition, got " + list(ts));
        lands(one(ts, Action::qout("qa", "q")), "nil", c);
    }));
    cs.push_back(make("Q-Outp", false, "using a sent qubit is ill-formed", [] {
        auto k = thrown([] { cfg("qa!q.X[q].nil", ctx1("q", ket("0"))); });
        expect(k == ErrorKind::Precondition, "output-then-use should not form a configuration");
    }));

    // Unit
    cs.push_back(make("Unit", true, "gate acts on the named qubit only", [] {
        QContext c({"q", "r"}, dm(ket("01")));
        auto ts = transitions(cfg("X[r].nil", c), InputPolicy{});
        lands(one(ts, Action::tau()), "nil", QContext({"q", "r"}, dm(ket("00"))));
        auto ts2 = transitions(cfg("CNOT[r, q].nil", c), InputPolicy{});
        lands(one(ts2, Action::tau()), "nil", QContext({"q", "r"}, dm(ket("11"))));
    }));
    cs.push_back(make("Unit", false, "arity mismatch is rejected", [] {
        auto p = pr::unitary(gate("CNOT"), {"q"}, pr::nil());
        auto k = thrown([&] { make_configuration(p, ctx1("q", ket("0"))); });
        expect(k == ErrorKind::Precondition, "CNOT on one qubit should not form a configuration");
    }));

    // Meas
    cs.push_back(make("Meas", true, "branch probabilities are Tr(P rho)", [] {
        Matrix rho = random_density(2, 3);
        QContext c({"q", "r"}, rho);
        auto ts = transitions(cfg("M01[r; x].a!x.nil", c), InputPolicy{});
        const auto &t = one(ts, Action::tau());
        expect(t.target.support.size() == 2, "expected two outcomes");
        for (int i = 0; i < 2; ++i) {
            Matrix proj = tensor(identity(1), dm(ket(i ? "1" : "0")));
            double p = (proj * rho).trace().real();
            std::string proc = i ? "a!1.nil" : "a!0.nil";
            bool found = false;
            for (const auto &[conf, q] : t.target.support) {
                if (conf.key != canonical_key(*P(proc))) continue;
                found = true;
                expect(std::abs(q - p) <= 1e-12, "probability " + std::to_string(q) + " vs Tr(P rho) " +
                                                     std::to_string(p));
                expect(context_equal(conf.ctx, QContext({"q", "r"}, proj * rho * proj / p)),
                       "post-measurement state differs");
            }
            expect(found, "missing outcome " + proc);
        }
    }));
    cs.push_back(make("Meas", false, "zero-probability outcome is dropped", [] {
        QContext c({"q", "r"}, tensor(dm(ket("0")), random_density(1, 5)));
        auto ts = transitions(cfg("M01[q; x].a!x.nil", c), InputPolicy{});
        const auto &t = one(ts, Action::tau());
        expect(t.target.support.size() == 1, "outcome 1 has probability 0 and must not appear");
        lands(t, "a!0.nil", c);
    }));

    // Q-Com
    cs.push_back(make("Q-Com", true, "quantum communication keeps the context", [] {
        QContext c({"q"}, random_density(1, 13));
        auto ts = transitions(cfg("(qa!q.nil || qa?t.X[t].nil) \\ {qa}", c), InputPolicy{});
        expect(ts.size() == 1, "expected only tau, got " + list(ts));
        lands(one(ts, Action::tau()), "(nil || X[q].nil) \\ {qa}", c);
        auto ts2 = transitions(cfg("(qa?t.X[t].nil || qa!q.nil) \\ {qa}", c), InputPolicy{});
        lands(one(ts2, Action::tau()), "(X[q].nil || nil) \\ {qa}", c);
    }));
    cs.push_back(make("Q-Com", false, "different quantum channels do not synchronize", [] {
        QContext c = ctx1("q", ket("0"));
        auto ts = transitions(cfg("(qa!q.nil || qb?t.X[t].nil) \\ {qa, qb}", c), InputPolicy{});
        expect(ts.empty(), "expected no transitions, got " + list(ts));
    }));

    // Inp-Int
    cs.push_back(make("Inp-Int", true, "input of a qubit the other side does not own", [] {
        QContext c({"q", "r"}, dm(ket("10")));
        auto ts = transitions(cfg("qa?t.H[t].nil || X[q].nil", c), open_policy());
        lands(one(ts, Action::qin("qa", "r")), "H[r].nil || X[q].nil", c);
        auto ts2 = transitions(cfg("X[q].nil || qa?t.H[t].nil", c), open_policy());
        lands(one(ts2, Action::qin("qa", "r")), "X[q].nil || H[r].nil", c);
    }));
    cs.push_back(make("Inp-Int", false, "input of a qubit owned by the other side is blocked", [] {
        QContext c({"q", "r"}, dm(ket("10")));
        auto ts = transitions(cfg("qa?t.H[t].nil || X[q].nil", c), open_policy());
        absent(ts, Action::qin("qa", "q"));
        auto ts2 = transitions(cfg("X[q].nil || qa?t.H[t].nil", c), open_policy());
        absent(ts2, Action::qin("qa", "q"));
    }));

    // Oth-Int
    cs.push_back(make("Oth-Int", true, "moves and distributions lift through parallel", [] {
        QContext c = ctx1("q", plus());
        auto ts = transitions(cfg("a!0.nil || M01[q; x].nil", c), InputPolicy{});
        lands(one(ts, Action::cout("a", 0)), "nil || M01[q; x].nil", c);
        const auto &t = one(ts, Action::tau());
        expect(t.target.support.size() == 2, "measurement should split in two");
        for (const auto &[conf, p] : t.target.support) {
            expect(std::abs(p - 0.5) <= 1e-12, "branch probability " + std::to_string(p));
            expect(conf.key == canonical_key(*P("a!0.nil || nil")), "branch keeps the left component");
        }
    }));
    cs.push_back(make("Oth-Int", false, "quantum inputs are not interleaved by this rule", [] {
        // The left side alone could receive q; in parallel with its owner it
        // may only synchronize.
        QContext c = ctx1("q", ket("0"));
        auto ts = transitions(cfg("qa?t.nil || qa!q.nil", c), open_policy());
        absent(ts, Action::qin("qa", "q"));
        one(ts, Action::qout("qa", "q"));
        lands(one(ts, Action::tau()), "nil || nil", c);
    }));

    // Sum
    cs.push_back(make("Sum", true, "either summand may move", [] {
        auto ts = transitions(cfg("a!0.nil + b!1.b!0.nil"), InputPolicy{});
        expect(ts.size() == 2, "expected two transitions, got " + list(ts));
        lands(one(ts, Action::cout("a", 0)), "nil", {});
        lands(one(ts, Action::cout("b", 1)), "b!0.nil", {});
    }));
    cs.push_back(make("Sum", false, "nil contributes nothing", [] {
        auto ts = transitions(cfg("a!0.nil + nil"), InputPolicy{});
        expect(ts.size() == 1, "expected one transition, got " + list(ts));
        auto ts2 = transitions(cfg("nil + nil"), InputPolicy{});
        expect(ts2.empty(), "nil + nil should be stuck");
    }));

    // Rel
    cs.push_back(make("Rel", true, "actions are renamed, quantum too", [] {
        auto ts = transitions(cfg("a!0.b!1.nil[{a -> b}]"), InputPolicy{});
        lands(one(ts, Action::cout("b", 0)), "b!1.nil[{a -> b}]", {});
        QContext c = ctx1("q", ket("1"));
        auto ts2 = transitions(cfg("qa!q.nil[{qa -> qb}]", c), InputPolicy{});
        lands(one(ts2, Action::qout("qb", "q")), "nil[{qa -> qb}]", c);
    }));
    cs.push_back(make("Rel", false, "the original channel is gone", [] {
        auto ts = transitions(cfg("a!0.nil[{a -> b}]"), InputPolicy{});
        absent(ts, Action::cout("a", 0));
        QContext c = ctx1("q", ket("1"));
        auto ts2 = transitions(cfg("qa!q.nil[{qa -> qb}]", c), InputPolicy{});
        absent(ts2, Action::qout("qa", "q"));
    }));

    // Res
    cs.push_back(make("Res", true, "actions outside L and tau pass", [] {
        QContext c = ctx1("q", ket("0"));
        auto ts = transitions(cfg("(a!0.nil + b!1.nil + H[q].nil) \\ {a}", c), InputPolicy{});
        expect(ts.size() == 2, "expected b!1 and tau, got " + list(ts));
        lands(one(ts, Action::cout("b", 1)), "nil \\ {a}", c);
        lands(one(ts, Action::tau()), "nil \\ {a}", ctx1("q", plus()));
    }));
    cs.push_back(make("Res", false, "cn(alpha) in L is filtered, classical and quantum", [] {
        QContext c = ctx1("q", ket("0"));
        auto conf = cfg("(a!0.nil + qa!q.nil) \\ {a, qa}", c);
        auto ts = transitions(conf, InputPolicy{});
        expect(ts.empty(), "expected no transitions, got " + list(ts));
        auto blocked = blocked_actions(conf);
        expect(blocked.size() == 2, "expected two blocked actions");
        expect(blocked[0] == Action::cout("a", 0) && blocked[1] == Action::qout("qa", "q"),
               "blocked actions " + to_string(blocked[0]) + ", " + to_string(blocked[1]));
    }));

    // Cho
    cs.push_back(make("Cho", true, "true guard exposes the body", [] {
        auto ts = transitions(cfg("if 1 = 1 then a!0.nil"), InputPolicy{});
        lands(one(ts, Action::cout("a", 0)), "nil", {});
    }));
    cs.push_back(make("Cho", false, "false guard blocks", [] {
        auto ts = transitions(cfg("if 1 = 2 then a!0.nil"), InputPolicy{});
        expect(ts.empty(), "expected no transitions, got " + list(ts));
    }));

    return cs;
}

}  // namespace

const std::vector<RuleCase> &rule_cases() {
    static const std::vector<RuleCase> cases = build();
    return cases;
}

const std::vector<std::string> &rule_names() {
    static const std::vector<std::string> names{"C-Inp", "C-Outp", "C-Com",   "Q-New",   "Q-Inp/1",
                                                "Q-Inp/2", "Q-Outp", "Unit",    "Meas",    "Q-Com",
                                                "Inp-Int", "Oth-Int", "Sum",    "Rel",     "Res",
                                                "Cho"};
    return names;
}

}  // namespace qccs::testing
