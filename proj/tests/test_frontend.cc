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

#include <regex>

#include "qccs/error.h"
#include "qccs/frontend.h"
#include "qccs/generator.h"
#include "test_util.h"

using namespace qccs;
using namespace qccs::testing;

namespace {

SourceError parse_error(const std::string &text) {
    try {
        parse(text);
    } catch (const SourceError &e) {
        return e;
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return SourceError(ErrorKind::Parse, {}, "");
}

}  // namespace

TEST(Frontend, ParsesTeleport) {
    SourceFile f = parse(corpus_file("teleport.qccs"));
    ASSERT_EQ(f.procs.size(), 4u);
    for (const char *n : {"Alice", "Bob", "EPR", "Telep"}) EXPECT_NE(f.find_proc(n), nullptr) << n;
    ASSERT_NE(f.find_config("Main"), nullptr);
    EXPECT_TRUE(f.channels.at("qc").quantum);
    EXPECT_FALSE(f.channels.at("c").quantum);
    EXPECT_EQ(f.channels.at("c").domain, (std::vector<double>{0, 1, 2, 3}));
    // Telep hides every channel and owns q only.
    const Proc &telep = *f.find_proc("Telep")->proc;
    EXPECT_EQ(telep.kind, ProcKind::Restrict);
    EXPECT_EQ(qv(telep), (std::set<std::string>{"q"}));
}

TEST(Frontend, Nil) {
    ProcPtr p = parse_process("nil", SourceFile{});
    EXPECT_EQ(p->kind, ProcKind::Nil);
    EXPECT_EQ(pretty_print(*p), "nil");
}

TEST(Frontend, SumPrintsParenthesized) {
    SourceFile env = generator_env();
    ProcPtr p = parse_process("a!0.nil + b!1.nil", env);
    EXPECT_EQ(pretty_print(*p), "(a!0.nil + b!1.nil)");
}

TEST(Frontend, PrecedenceAndSugar) {
    SourceFile env = generator_env();
    // prefix binds tighter than restriction, then parallel, then sum
    ProcPtr p = parse_process("a!0.nil \\ {a} || b!0.nil + nil", env);
    ASSERT_EQ(p->kind, ProcKind::Sum);
    ASSERT_EQ(p->body->kind, ProcKind::Parallel);
    EXPECT_EQ(p->body->body->kind, ProcKind::Restrict);

    // sigma_x[q] is a four-way guarded sum over the Pauli gates
    ProcPtr s = parse_process("a?x.sigma_x[q].nil", env);
    ASSERT_EQ(s->kind, ProcKind::CInput);
    int guards = 0;
    std::function<void(const ProcPtr &)> walk = [&](const ProcPtr &n) {
        if (n->kind == ProcKind::If) ++guards;
        for (const auto &c : n->children()) walk(c);
    };
    walk(s);
    EXPECT_EQ(guards, 4);
}

TEST(Frontend, WellformednessIsSeparateFromParsing) {
    SourceFile f = parse(corpus_file("bad_output.qccs"));
    ASSERT_EQ(f.configs.size(), 1u);
    auto v = check_wellformed(*f.configs[0].proc);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->kind, ViolationKind::OutputThenUse);
    EXPECT_THROW(elaborate(f), SourceError);
}

TEST(Frontend, PositionedErrors) {
    std::regex prefix(R"(^\d+:\d+: .+)");
    struct Case {
        std::string text;
        int line;
        std::string needle;
    };
    std::vector<Case> cases{
        {"#qccs 1\nproc P = foo.nil;\n", 2, "foo"},
        {"#qccs 1\nchannel c;\nproc P = c!0.nil\n", 4, ";"},
        {"#qccs 1\nqchannel qc;\n\nproc P = qc!0.nil;\n", 4, "qubit"},
        {"#qccs 1\nchannel c;\nqchannel qc;\nproc P = nil[{c -> qc}];\n", 4, "qc"},
        {"#qccs 2\n", 1, "version"},
        {"#qccs 1\nproc P = nil;\nproc P = nil;\n", 3, "P"},
        {"#qccs 1\nproc P = (nil;\n", 2, ")"},
        {"#qccs 1\nconfig C = < nil ; q = |2> >;\n", 2, ""},
    };
    for (const auto &c : cases) {
        SourceError e = parse_error(c.text);
        std::string msg = e.what();
        EXPECT_TRUE(std::regex_search(msg, prefix)) << msg;
        EXPECT_EQ(e.pos().line, c.line) << msg;
        EXPECT_GT(e.pos().col, 0) << msg;
        EXPECT_NE(msg.find(c.needle), std::string::npos) << msg;
        EXPECT_EQ(msg.find('\n'), std::string::npos) << "one-line message: " << msg;
    }
}

TEST(Frontend, RoundTripGeneratedTerms) {
    GenOptions go;
    TermGenerator gen(77, go);
    SourceFile env = generator_env(go);
    std::set<ProcKind> seen;
    for (int i = 0; i < 500; ++i) {
        ProcPtr t = gen.term();
        std::function<void(const ProcPtr &)> walk = [&](const ProcPtr &n) {
            seen.insert(n->kind);
            for (const auto &c : n->children()) walk(c);
        };
        walk(t);
        std::string text = pretty_print(*t);
        ProcPtr back = parse_process(text, env);
        ASSERT_TRUE(structurally_equal(*t, *back)) << text << "\n  vs\n" << pretty_print(*back);
        EXPECT_EQ(pretty_print(*back), text);
    }
    EXPECT_EQ(seen.size(), 13u) << "every constructor appears";
}

TEST(Frontend, RoundTripTeleport) {
    SourceFile f = parse(corpus_file("teleport.qccs"));
    for (const auto &d : f.procs) {
        ProcPtr back = parse_process(pretty_print(*d.proc), f);
        EXPECT_TRUE(structurally_equal(*d.proc, *back)) << d.name;
    }
}

TEST(Frontend, ExpressionPrinting) {
    SourceFile env = generator_env();
    for (const char *t : {"if not (1 = 2) and 0 < 1 then a!(-(3) * 2).nil", "a!0.5.nil", "if 1 <= 2 or 2 = 2 then nil"}) {
        ProcPtr p = parse_process(t, env);
        ProcPtr back = parse_process(pretty_print(*p), env);
        EXPECT_TRUE(structurally_equal(*p, *back)) << t << " -> " << pretty_print(*p);
    }
}

TEST(Frontend, MatrixExpressions) {
    Matrix m = parse_matrix_expr("1/sqrt(2) * (|0> + |1>)");
    EXPECT_TRUE(approx_equal(m, plus()));
    Matrix t = parse_matrix_expr("|0> (x) |1>");
    EXPECT_TRUE(approx_equal(t, ket("01")));
    Matrix g = parse_matrix_expr("[[0, 1], [1, 0]]");
    EXPECT_TRUE(approx_equal(g, gates::builtin().at("X")));
    Matrix c = parse_matrix_expr("2i");
    EXPECT_NEAR(c(0, 0).imag(), 2.0, 1e-15);
    Matrix b = parse_matrix_expr("|1><1|");
    EXPECT_TRUE(approx_equal(b, dm(ket("1"))));
}

TEST(Elaborate, Teleport) {
    Elaborated e = load_corpus("teleport.qccs");
    const Configuration &main = e.config("Main");
    EXPECT_EQ(main.ctx.vars(), (std::vector<std::string>{"q"}));
    EXPECT_TRUE(approx_equal(main.ctx.rho(), dm(ket("0"))));  // alpha = 1, beta = 0
    EXPECT_EQ(e.policy.domain("c"), (std::vector<double>{0, 1, 2, 3}));

    ParseOptions o;
    o.param_overrides = {{"alpha", 0.6}, {"beta", -0.8}};
    Elaborated e2 = elaborate(parse(corpus_file("teleport.qccs"), o));
    EXPECT_TRUE(approx_equal(e2.config("Main").ctx.rho(), dm(ket("0") * 0.6 - ket("1") * 0.8)));
}

TEST(Elaborate, EmptyContextAndMissingQubit) {
    Elaborated ok = elaborate(parse("#qccs 1\nconfig E = < nil >;\n"));
    EXPECT_EQ(ok.config("E").ctx.size(), 0);
    EXPECT_THROW(ok.config("F"), Error);

    try {
        elaborate(parse("#qccs 1\nconfig E = < H[q].nil ; r = |0> >;\n"));
        FAIL() << "missing qubit accepted";
    } catch (const SourceError &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Elaboration);
        EXPECT_NE(std::string(e.what()).find("q"), std::string::npos);
    }
}

TEST(Elaborate, RejectsBadDeclarations) {
    const char *bad[] = {
        "#qccs 1\ngate G = [[1, 1], [0, 1]];\n",
        "#qccs 1\nmeasure M = { 0: |0><0| };\n",
        "#qccs 1\nconfig E = < nil ; q = 2 * |0> >;\n",
        "#qccs 1\nconfig E = < nil ; q = [[1, 0], [0, 1]] >;\n",
        "#qccs 1\nconfig E = < H[q].nil ; q = |0> ; q = |1> >;\n",
    };
    for (const char *t : bad) {
        EXPECT_THROW(elaborate(parse(t)), Error) << t;
    }
}

TEST(Elaborate, TensorBindings) {
    Elaborated e = elaborate(parse("#qccs 1\nconfig E = < CNOT[q, r].nil ; q = |1> ; r, s = (|00> + |11>) / sqrt(2) >;\n"));
    const QContext &c = e.config("E").ctx;
    EXPECT_EQ(c.vars(), (std::vector<std::string>{"q", "r", "s"}));
    Matrix expect = dm(tensor(ket("1"), (ket("00") + ket("11")) / std::sqrt(2.0)));
    EXPECT_TRUE(approx_equal(c.rho(), expect));
}
