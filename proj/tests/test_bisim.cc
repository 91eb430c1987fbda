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

#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "qccs/bisim.h"
#include "qccs/error.h"
#include "qccs/generator.h"
#include "qccs/laws.h"
#include "oracle.h"
#include "test_util.h"

using namespace qccs;
using namespace qccs::testing;

namespace {

const SourceFile &env() {
    static const SourceFile e = generator_env();
    return e;
}

Configuration cfg(std::string_view text, QContext ctx = {}) {
    return make_configuration(parse_process(text, env()), std::move(ctx));
}

PairCheck corpus_pair(Mode mode, const std::string &file, const std::string &l, const std::string &r) {
    auto e = load_corpus(file);
    return check_configurations(mode, e.config(l), e.config(r), e.policy);
}

Partition identity_partition(int n) {
    Partition p;
    for (int i = 0; i < n; ++i) p.block_of.push_back(i);
    p.num_blocks = n;
    return p;
}

}  // namespace

TEST(DistEquiv, Examples) {
    Partition p;
    p.block_of = {0, 0, 0, 1};
    p.num_blocks = 2;
    NodeDistribution mu{{0, 0.5}, {1, 0.5}}, nu{{2, 1.0}};
    EXPECT_TRUE(dist_equiv(mu, mu, p));
    EXPECT_TRUE(dist_equiv(mu, nu, p));
    EXPECT_FALSE(dist_equiv({{0, 0.5}, {3, 0.5}}, {{0, 0.75}, {3, 0.25}}, p));
    auto v = class_vector(mu, p);
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    EXPECT_DOUBLE_EQ(v[1], 0.0);
}

TEST(Strong, MeasurementIsMixtureOfUnitaries) {
    auto pc = corpus_pair(Mode::Strong, "example5.qccs", "Left", "Right");
    ASSERT_TRUE(pc.verdict.equivalent);
    // The measurement move on the left is matched by U and V with weight 1/2 each.
    bool half_half = false;
    for (const auto &m : pc.verdict.witness) {
        if (m.mover != pc.verdict.left || m.weights.size() != 2) continue;
        half_half = half_half || (std::abs(m.weights[0].weight - 0.5) < 1e-7 &&
                                  std::abs(m.weights[1].weight - 0.5) < 1e-7);
    }
    EXPECT_TRUE(half_half);
}

TEST(Strong, DifferentTerminalStates) {
    auto pc = corpus_pair(Mode::Strong, "intro.qccs", "Zero", "One");
    EXPECT_FALSE(pc.verdict.equivalent);
    ASSERT_TRUE(pc.verdict.report);
    const Report *r = &*pc.verdict.report;
    while (r->cause) r = r->cause.get();
    EXPECT_EQ(r->kind, ReportKind::TerminalContext);
}

TEST(Strong, RestrictionIsNotACongruence) {
    EXPECT_TRUE(corpus_pair(Mode::Strong, "restriction.qccs", "Popen", "Qopen").verdict.equivalent);
    auto pc = corpus_pair(Mode::Strong, "restriction.qccs", "Pres", "Qres");
    EXPECT_FALSE(pc.verdict.equivalent);
    ASSERT_TRUE(pc.verdict.report);
    EXPECT_EQ(pc.verdict.report->kind, ReportKind::UnmatchedMove);
}

TEST(Weak, IdentityStepIsInvisible) {
    QContext c({"q"}, dm(plus()));
    auto pc = check_configurations(Mode::Weak, cfg("I[q].nil", c), cfg("nil", c), InputPolicy{});
    EXPECT_TRUE(pc.verdict.equivalent);
    auto strong = check_configurations(Mode::Strong, cfg("I[q].nil", c), cfg("nil", c), InputPolicy{});
    EXPECT_FALSE(strong.verdict.equivalent);
    auto eq = check_configurations(Mode::Equality, cfg("I[q].nil", c), cfg("nil", c), InputPolicy{});
    EXPECT_FALSE(eq.verdict.equivalent);
}

TEST(Weak, CorpusPair) {
    EXPECT_TRUE(corpus_pair(Mode::Weak, "weak.qccs", "Idle", "Direct").verdict.equivalent);
    EXPECT_FALSE(corpus_pair(Mode::Equality, "weak.qccs", "Idle", "Direct").verdict.equivalent);
}

TEST(Weak, ExpandedMeasurementBranch) {
    QContext c({"q"}, dm(plus()));
    auto orig = cfg("M01[q; x].H[q].qa!q.nil + Mpm[q; x].I[q].qa!q.nil", c);
    auto expanded =
        cfg("M01[q; x].(if x = 0 then H[q].qa!q.nil + if x = 1 then H[q].qa!q.nil) + Mpm[q; x].qa!q.nil", c);
    EXPECT_TRUE(check_configurations(Mode::Weak, orig, expanded, InputPolicy{}).verdict.equivalent);
    EXPECT_FALSE(check_configurations(Mode::Strong, orig, expanded, InputPolicy{}).verdict.equivalent);
}

// ---------------------------------------------------------------------------
// Weak transitions on the two-basis example

class WeakFigures : public ::testing::Test {
   protected:
    void SetUp() override {
        auto e = load_corpus("fig1.qccs");
        lts = build_lts(e.config("C"), e.policy);
        prob = to_prob_lts(lts);
        part = identity_partition(lts.size());
        QContext plus_ctx({"q"}, dm(plus())), minus_ctx({"q"}, dm(minus()));
        for (int i = 0; i < lts.size(); ++i) {
            const auto &c = lts.nodes[i].config;
            if (c.key != canonical_key(*pr::nil())) continue;
            if (context_equal(c.ctx, plus_ctx)) c5 = i;
            if (context_equal(c.ctx, minus_ctx)) c6 = i;
        }
        ASSERT_GE(c5, 0);
        ASSERT_GE(c6, 0);
    }

    WeakReachResult reach(int source, double m5, double m6) {
        WeakReachQuery q;
        q.source = source;
        q.label = WeakLabel::visible(Action::qout("qc", "q"));
        q.target.assign(part.num_blocks, 0.0);
        q.target[c5] = m5;
        q.target[c6] = m6;
        q.partition = &part;
        return weak_reach_feasible(prob, q);
    }

    Lts lts;
    ProbLts prob;
    Partition part;
    int c5 = -1, c6 = -1;
};

TEST_F(WeakFigures, Targets) {
    EXPECT_TRUE(reach(0, 0.5, 0.5).feasible);
    EXPECT_TRUE(reach(0, 1.0, 0.0).feasible);
    EXPECT_TRUE(reach(0, 0.75, 0.25).feasible);
    EXPECT_FALSE(reach(0, 0.25, 0.75).feasible);
    EXPECT_FALSE(reach(0, 0.0, 1.0).feasible);
    EXPECT_FALSE(reach(0, 1.1, 0.0).feasible);
    EXPECT_FALSE(reach(0, 1.1, -0.1).feasible);
}

TEST_F(WeakFigures, Convexity) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        double p = u(rng);
        EXPECT_TRUE(reach(0, p * 0.5 + (1 - p) * 1.0, p * 0.5).feasible) << p;
    }
}

TEST_F(WeakFigures, FirstStepDecomposition) {
    auto r = reach(0, 0.75, 0.25);
    ASSERT_TRUE(r.feasible);
    // Mass leaving the source along each edge; the mixture is forced to be 1/2 : 1/2.
    std::vector<double> out(prob.edges[0].size(), 0.0);
    for (const auto &f : r.flow) {
        if (f.node == 0 && f.edge >= 0) out[f.edge] += f.flow;
    }
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NEAR(out[0], 0.5, 1e-7);
    EXPECT_NEAR(out[1], 0.5, 1e-7);
    // Each successor realizes its share of the target on its own.
    std::vector<double> m5, m6;
    for (const auto &edge : prob.edges[0]) {
        for (const auto &[n, p] : edge.targets) {
            bool to5 = reach(n, 1.0, 0.0).feasible;
            bool to6 = reach(n, 0.0, 1.0).feasible;
            EXPECT_TRUE(to5 != to6) << "successor " << n << " should have a single outcome";
            (to5 ? m5 : m6).push_back(p * out[&edge - prob.edges[0].data()]);
        }
    }
    double s5 = 0, s6 = 0;
    for (double x : m5) s5 += x;
    for (double x : m6) s6 += x;
    EXPECT_NEAR(s5, 0.75, 1e-7);
    EXPECT_NEAR(s6, 0.25, 1e-7);
}

TEST_F(WeakFigures, StrictTauNeedsARealStep) {
    for (int n : {c5, c6}) {
        WeakReachQuery q;
        q.source = n;
        q.partition = &part;
        q.target.assign(part.num_blocks, 0.0);
        q.target[n] = 1.0;
        q.label = WeakLabel::tau_hat();
        EXPECT_TRUE(weak_reach_feasible(prob, q).feasible);
        q.label = WeakLabel::strict_tau();
        EXPECT_FALSE(weak_reach_feasible(prob, q).feasible);
    }
}

// ---------------------------------------------------------------------------
// Against exhaustive enumeration of equivalences

TEST(Strong, AgreesWithBruteForce) {
    std::mt19937_64 rng(8);
    int distinguished = 0, related = 0;
    for (int trial = 0; trial < 150; ++trial) {
        ProbLts lts = random_small_lts(rng);
        int n = lts.size();
        auto oracle = brute_force_bisimilar(lts);
        Partition p = strong_partition(lts);
        for (int c = 0; c < n; ++c) {
            for (int d = 0; d < n; ++d) {
                ASSERT_EQ(p.same(c, d), oracle[c][d]) << "trial " << trial << " nodes " << c << "," << d;
                if (c < d) (oracle[c][d] ? related : distinguished)++;
                if (c < d && c == 0) {
                    EXPECT_EQ(strong_bisim(lts, c, d).equivalent, oracle[c][d]);
                }
            }
        }
    }
    EXPECT_GT(related, 20);
    EXPECT_GT(distinguished, 100);
}

// ---------------------------------------------------------------------------
// Structural properties on generated terms

TEST(Bisim, ReflexiveSymmetricAndMonotone) {
    GenOptions go;
    go.max_depth = 3;
    TermGenerator gen(31, go);
    InputPolicy policy = law_policy();
    LtsBounds bounds;
    bounds.max_nodes = 5000;
    int strong_pairs = 0, checked = 0;
    for (int i = 0; i < 60; ++i) {
        auto ctx = gen.context();
        auto e = make_configuration(gen.term(), ctx);
        ProcPtr f_proc = (i % 3 == 0) ? mutate_gate(e.proc, gen.rng()) : nullptr;
        if (!f_proc) f_proc = (i % 3 == 1) ? pr::sum(e.proc, e.proc) : gen.term();
        auto f = make_configuration(f_proc, ctx);
        try {
            for (Mode m : {Mode::Strong, Mode::Weak, Mode::Equality}) {
                EXPECT_TRUE(check_configurations(m, e, e, policy, bounds).verdict.equivalent);
            }
            bool s = check_configurations(Mode::Strong, e, f, policy, bounds).verdict.equivalent;
            bool s2 = check_configurations(Mode::Strong, f, e, policy, bounds).verdict.equivalent;
            bool w = check_configurations(Mode::Weak, e, f, policy, bounds).verdict.equivalent;
            bool w2 = check_configurations(Mode::Weak, f, e, policy, bounds).verdict.equivalent;
            bool q = check_configurations(Mode::Equality, e, f, policy, bounds).verdict.equivalent;
            EXPECT_EQ(s, s2) << i;
            EXPECT_EQ(w, w2) << i;
            EXPECT_TRUE(!s || w) << "strong but not weak: " << i;
            EXPECT_TRUE(!q || w) << "equal but not weak: " << i;
            strong_pairs += s;
            ++checked;
        } catch (const Error &err) {
            if (err.kind() != ErrorKind::BoundExceeded) throw;
        }
    }
    EXPECT_GT(checked, 40);
    EXPECT_GT(strong_pairs, 10);
}

TEST(Bisim, PartitionIsEquivalence) {
    auto e = elaborate(parse(corpus_file("teleport.qccs")));
    Lts lts = build_lts(e.config("Main"), e.policy);
    ProbLts prob = to_prob_lts(lts);
    for (const Partition &p : {strong_partition(prob), weak_partition(prob)}) {
        ASSERT_EQ(static_cast<int>(p.block_of.size()), prob.size());
        int total = 0;
        for (const auto &b : p.blocks()) {
            EXPECT_FALSE(b.empty());
            total += static_cast<int>(b.size());
        }
        EXPECT_EQ(total, prob.size());
    }
}

// Receiving on a quantum channel can pick a qubit already in the context only
// if the continuation does not use it. Two bisimilar continuations with
// different free qubits therefore yield distinguishable input prefixes.
TEST(Bisim, QuantumInputPrefixSeesFreeQubits) {
    QContext c({"r"}, dm(ket("0")));
    auto e = cfg("qa!r.nil \\ {qa}", c);
    auto f = cfg("nil", c);
    InputPolicy open = law_policy();
    EXPECT_TRUE(check_configurations(Mode::Strong, e, f, open).verdict.equivalent);

    auto pe = cfg("qb?t.(qa!r.nil \\ {qa})", c);
    auto pf = cfg("qb?t.nil", c);
    auto pc = check_configurations(Mode::Strong, pe, pf, open);
    EXPECT_FALSE(pc.verdict.equivalent);
    ASSERT_TRUE(pc.verdict.report);
    EXPECT_EQ(pc.verdict.report->action, Action::qin("qb", "r"));
}
