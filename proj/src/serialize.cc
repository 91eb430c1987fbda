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

#include "qccs/serialize.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qccs/frontend.h"

namespace qccs {

Json matrix_to_json(const Matrix &m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json rr = Json::array(), ii = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

Json action_to_json(const Action &a) {
    static const char *kinds[] = {"tau", "cin", "cout", "qin", "qout"};
    Json j{{"kind", kinds[static_cast<int>(a.kind)]}, {"label", to_string(a)}};
    if (a.visible()) j["channel"] = a.channel;
    if (a.kind == ActionKind::CIn || a.kind == ActionKind::COut) j["value"] = a.value;
    if (a.kind == ActionKind::QIn || a.kind == ActionKind::QOut) j["qvar"] = a.qvar;
    return j;
}

Json context_to_json(const QContext &ctx) {
    return Json{{"vars", ctx.vars()}, {"rho", matrix_to_json(ctx.rho())}};
}

Json distribution_to_json(const Distribution &d) {
    Json out = Json::array();
    for (const auto &[c, p] : d.support) {
        out.push_back(Json{{"p", p}, {"process", pretty_print(*c.proc)}, {"context", context_to_json(c.ctx)}});
    }
    return out;
}

Json lts_to_json(const Lts &lts) {
    Json nodes = Json::array(), edges = Json::array();
    for (int i = 0; i < lts.size(); ++i) {
        const LtsNode &n = lts.nodes[i];
        nodes.push_back(Json{{"id", i},
                             {"depth", n.depth},
                             {"process", pretty_print(*n.config.proc)},
                             {"context", context_to_json(n.config.ctx)},
                             {"stuck", n.edges.empty()}});
        for (const auto &e : n.edges) {
            Json targets = Json::array();
            for (const auto &[t, p] : e.targets) targets.push_back(Json{{"node", t}, {"p", p}});
            edges.push_back(Json{{"source", i}, {"action", action_to_json(e.action)}, {"targets", targets}});
        }
    }
    return Json{{"schema", "qccs-lts/1"}, {"roots", lts.roots}, {"nodes", nodes}, {"edges", edges}};
}

namespace {

std::string term_hash(const std::string &key) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%08zx", std::hash<std::string>{}(key) & 0xffffffffu);
    return buf;
}

std::string dot_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string prob(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p);
    return buf;
}

}  // namespace

std::string lts_to_dot(const Lts &lts) {
    std::ostringstream os;
    os << "digraph lts {\n  node [shape=box, fontname=\"monospace\"];\n";
    for (int i = 0; i < lts.size(); ++i) {
        const auto &n = lts.nodes[i];
        os << "  n" << i << " [label=\"" << i << ": " << term_hash(n.config.key) << "\"";
        if (std::find(lts.roots.begin(), lts.roots.end(), i) != lts.roots.end()) os << ", penwidth=2";
        os << ", tooltip=\"" << dot_escape(pretty_print(*n.config.proc)) << "\"];\n";
    }
    int branch = 0;
    for (int i = 0; i < lts.size(); ++i) {
        for (const auto &e : lts.nodes[i].edges) {
            std::string a = dot_escape(to_string(e.action));
            if (e.targets.size() == 1) {
                os << "  n" << i << " -> n" << e.targets[0].first << " [label=\"" << a << ", 1\"];\n";
                continue;
            }
            os << "  b" << branch << " [shape=point];\n";
            os << "  n" << i << " -> b" << branch << " [label=\"" << a << "\", arrowhead=none];\n";
            for (const auto &[t, p] : e.targets) {
                os << "  b" << branch << " -> n" << t << " [label=\"" << a << ", " << prob(p) << "\"];\n";
            }
            ++branch;
        }
    }
    os << "}\n";
    return os.str();
}

Json report_to_json(const Report &r) {
    Json target = Json::array();
    for (const auto &c : r.target) {
        target.push_back(Json{{"block", c.block}, {"mass", c.mass}, {"members", c.members}});
    }
    Json realized = Json::array();
    for (const auto &[e, w] : r.realized_by) realized.push_back(Json{{"edge", e}, {"weight", w}});
    Json j{{"kind", report_kind_name(r.kind)},
           {"left", r.left},
           {"right", r.right},
           {"mover", r.mover},
           {"action", action_to_json(r.action)},
           {"target", target},
           {"realized_by", realized},
           {"certificate_size", r.certificate_size},
           {"message", r.message}};
    j["cause"] = r.cause ? report_to_json(*r.cause) : Json(nullptr);
    return j;
}

Json verdict_to_json(const Verdict &v, const Lts &lts) {
    Json blocks = Json::array();
    for (const auto &b : v.partition.blocks()) blocks.push_back(b);
    Json j{{"schema", "qccs-verdict/1"},
           {"mode", mode_name(v.mode)},
           {"verdict", v.equivalent ? "equivalent" : "distinguished"},
           {"left", v.left},
           {"right", v.right},
           {"nodes", lts.size()},
           {"blocks", blocks}};
    if (v.equivalent) {
        Json w = Json::array();
        for (const auto &m : v.witness) {
            Json weights = Json::array();
            for (const auto &x : m.weights) {
                weights.push_back(
                    Json{{"node", x.node}, {"edge", x.edge}, {"phase", x.phase}, {"weight", x.weight}});
            }
            const auto &edge = lts.nodes[m.mover].edges[m.edge];
            w.push_back(Json{{"mover", m.mover},
                             {"edge", m.edge},
                             {"action", to_string(edge.action)},
                             {"matcher", m.matcher},
                             {"weights", weights}});
        }
        j["witness"] = w;
    } else {
        j["counterexample"] = v.report ? report_to_json(*v.report) : Json(nullptr);
    }
    j["warnings"] = v.warnings;
    return j;
}

Json trace_to_json(const Trace &t) {
    Json steps = Json::array();
    for (const auto &s : t.steps) {
        steps.push_back(Json{{"action", action_to_json(s.action)}, {"after", distribution_to_json(s.after)}});
    }
    return Json{{"schema", "qccs-trace/1"}, {"steps", steps}, {"final", distribution_to_json(t.final)}};
}

Json laws_to_json(const LawReport &r) {
    Json tally = Json::array();
    for (const auto &[law, t] : r.tally) {
        tally.push_back(Json{{"law", law}, {"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}});
    }
    Json failures = Json::array();
    for (const auto &f : r.failures) {
        failures.push_back(Json{{"law", f.law},
                                {"mode", mode_name(f.mode)},
                                {"left", f.left},
                                {"right", f.right},
                                {"detail", f.detail}});
    }
    return Json{{"schema", "qccs-laws/1"},
                {"ok", r.ok()},
                {"instances", r.terms},
                {"tally", tally},
                {"failures", failures}};
}

Json teleport_to_json(const TeleportResult &t) {
    Json branches = Json::array();
    for (const auto &b : t.branches) {
        branches.push_back(Json{{"p", b.probability},
                                {"process", b.process},
                                {"vars", b.vars},
                                {"bob", matrix_to_json(b.bob)},
                                {"error", b.error}});
    }
    return Json{{"schema", "qccs-teleport/1"},
                {"alpha", {t.alpha.real(), t.alpha.imag()}},
                {"beta", {t.beta.real(), t.beta.imag()}},
                {"bob_qubit", t.bob_qubit},
                {"expected", matrix_to_json(t.expected)},
                {"branches", branches},
                {"ok", t.ok}};
}

}  // namespace qccs
