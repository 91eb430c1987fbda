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

#include "qccs/ast.h"

#include <algorithm>
#include <cstdio>
#include <functional>

#include "qccs/error.h"

namespace qccs {

bool Expr::is_boolean() const {
    switch (op) {
        case ExprOp::Bool:
        case ExprOp::Eq:
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::And:
        case ExprOp::Or:
        case ExprOp::Not:
            return true;
        default:
            return false;
    }
}

namespace ex {

ExprPtr num(double v) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Number;
    e->value = v;
    return e;
}

ExprPtr boolean(bool b) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Bool;
    e->value = b ? 1.0 : 0.0;
    return e;
}

ExprPtr var(std::string name) {
    auto e = std::make_shared<Expr>();
    e->op = ExprOp::Var;
    e->name = std::move(name);
    return e;
}

ExprPtr binary(ExprOp op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

ExprPtr unary(ExprOp op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(a);
    return e;
}

}  // namespace ex

namespace {

[[noreturn]] void type_error(const char *want) {
    throw Error(ErrorKind::TypeMismatch, std::string("expected ") + want + " expression");
}

}  // namespace

double eval_expr(const Expr &e, const Env &env) {
    switch (e.op) {
        case ExprOp::Number:
            return e.value;
        case ExprOp::Var: {
            auto it = env.find(e.name);
            if (it == env.end()) {
                throw Error(ErrorKind::UnboundVariable, "unbound classical variable '" + e.name + "'");
            }
            return it->second;
        }
        case ExprOp::Add:
            return eval_expr(*e.lhs, env) + eval_expr(*e.rhs, env);
        case ExprOp::Sub:
            return eval_expr(*e.lhs, env) - eval_expr(*e.rhs, env);
        case ExprOp::Mul:
            return eval_expr(*e.lhs, env) * eval_expr(*e.rhs, env);
        case ExprOp::Neg:
            return -eval_expr(*e.lhs, env);
        default:
            type_error("arithmetic");
    }
}

bool eval_bool(const Expr &e, const Env &env) {
    switch (e.op) {
        case ExprOp::Bool:
            return e.value != 0.0;
        case ExprOp::Eq:
            return eval_expr(*e.lhs, env) == eval_expr(*e.rhs, env);
        case ExprOp::Lt:
            return eval_expr(*e.lhs, env) < eval_expr(*e.rhs, env);
        case ExprOp::Le:
            return eval_expr(*e.lhs, env) <= eval_expr(*e.rhs, env);
        case ExprOp::And:
            return eval_bool(*e.lhs, env) && eval_bool(*e.rhs, env);
        case ExprOp::Or:
            return eval_bool(*e.lhs, env) || eval_bool(*e.rhs, env);
        case ExprOp::Not:
            return !eval_bool(*e.lhs, env);
        default:
            type_error("boolean");
    }
}

std::set<std::string> free_vars(const Expr &e) {
    std::set<std::string> out;
    std::function<void(const Expr &)> walk = [&](const Expr &n) {
        if (n.op == ExprOp::Var) out.insert(n.name);
        if (n.lhs) walk(*n.lhs);
        if (n.rhs) walk(*n.rhs);
    };
    walk(e);
    return out;
}

ExprPtr subst_expr(const ExprPtr &e, const std::string &x, double v) {
    if (!e) return e;
    if (e->op == ExprOp::Var) {
        return e->name == x ? ex::num(v) : e;
    }
    if (!e->lhs) return e;
    ExprPtr l = subst_expr(e->lhs, x, v);
    ExprPtr r = subst_expr(e->rhs, x, v);
    if (l == e->lhs && r == e->rhs) return e;
    auto out = std::make_shared<Expr>(*e);
    out->lhs = l;
    out->rhs = r;
    return out;
}

bool expr_equal(const Expr &a, const Expr &b) {
    if (a.op != b.op) return false;
    switch (a.op) {
        case ExprOp::Number:
        case ExprOp::Bool:
            return a.value == b.value;
        case ExprOp::Var:
            return a.name == b.name;
        default:
            break;
    }
    if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
    if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
    if (a.lhs && !expr_equal(*a.lhs, *b.lhs)) return false;
    if (a.rhs && !expr_equal(*a.rhs, *b.rhs)) return false;
    return true;
}

std::string apply_relabel(const RelabelFn &f, const std::string &channel) {
    auto it = f.find(channel);
    return it == f.end() ? channel : it->second;
}

std::vector<ProcPtr> Proc::children() const {
    std::vector<ProcPtr> out;
    if (body) out.push_back(body);
    if (other) out.push_back(other);
    return out;
}

namespace pr {

namespace {
std::shared_ptr<Proc> node(ProcKind k) {
    auto p = std::make_shared<Proc>();
    p->kind = k;
    return p;
}
}  // namespace

ProcPtr nil() {
    static const ProcPtr instance = node(ProcKind::Nil);
    return instance;
}

ProcPtr cinput(std::string channel, std::string x, ProcPtr body) {
    auto p = node(ProcKind::CInput);
    p->channel = std::move(channel);
    p->var = std::move(x);
    p->body = std::move(body);
    return p;
}

ProcPtr coutput(std::string channel, ExprPtr value, ProcPtr body) {
    auto p = node(ProcKind::COutput);
    p->channel = std::move(channel);
    p->expr = std::move(value);
    p->body = std::move(body);
    return p;
}

ProcPtr qbit(std::string q, ProcPtr body) {
    auto p = node(ProcKind::QbitNew);
    p->var = std::move(q);
    p->body = std::move(body);
    return p;
}

ProcPtr qinput(std::string channel, std::string q, ProcPtr body) {
    auto p = node(ProcKind::QInput);
    p->channel = std::move(channel);
    p->var = std::move(q);
    p->body = std::move(body);
    return p;
}

ProcPtr qoutput(std::string channel, std::string q, ProcPtr body) {
    auto p = node(ProcKind::QOutput);
    p->channel = std::move(channel);
    p->var = std::move(q);
    p->body = std::move(body);
    return p;
}

ProcPtr unitary(GatePtr gate, std::vector<std::string> qubits, ProcPtr body) {
    auto p = node(ProcKind::Unitary);
    p->gate = std::move(gate);
    p->qubits = std::move(qubits);
    p->body = std::move(body);
    return p;
}

ProcPtr measure(ObservablePtr obs, std::vector<std::string> qubits, std::string x, ProcPtr body) {
    auto p = node(ProcKind::Measure);
    p->observable = std::move(obs);
    p->qubits = std::move(qubits);
    p->var = std::move(x);
    p->body = std::move(body);
    return p;
}

ProcPtr sum(ProcPtr l, ProcPtr r) {
    auto p = node(ProcKind::Sum);
    p->body = std::move(l);
    p->other = std::move(r);
    return p;
}

ProcPtr parallel(ProcPtr l, ProcPtr r) {
    auto p = node(ProcKind::Parallel);
    p->body = std::move(l);
    p->other = std::move(r);
    return p;
}

ProcPtr relabel(ProcPtr body, RelabelFn f) {
    auto p = node(ProcKind::Relabel);
    p->body = std::move(body);
    p->relabel = std::move(f);
    return p;
}

ProcPtr restrict(ProcPtr body, std::set<std::string> channels) {
    auto p = node(ProcKind::Restrict);
    p->body = std::move(body);
    p->restricted = std::move(channels);
    return p;
}

ProcPtr guard(ExprPtr cond, ProcPtr body) {
    auto p = node(ProcKind::If);
    p->expr = std::move(cond);
    p->body = std::move(body);
    return p;
}

}  // namespace pr

std::set<std::string> qv(const Proc &p) {
    switch (p.kind) {
        case ProcKind::Nil:
            return {};
        case ProcKind::QbitNew:
        case ProcKind::QInput: {
            auto s = qv(*p.body);
            s.erase(p.var);
            return s;
        }
        case ProcKind::QOutput: {
            auto s = qv(*p.body);
            s.insert(p.var);
            return s;
        }
        case ProcKind::Unitary:
        case ProcKind::Measure: {
            auto s = qv(*p.body);
            s.insert(p.qubits.begin(), p.qubits.end());
            return s;
        }
        case ProcKind::Sum:
        case ProcKind::Parallel: {
            auto s = qv(*p.body);
            auto t = qv(*p.other);
            s.insert(t.begin(), t.end());
            return s;
        }
        default:
            return qv(*p.body);
    }
}

std::set<std::string> fv_classical(const Proc &p) {
    std::set<std::string> s;
    switch (p.kind) {
        case ProcKind::Nil:
            return s;
        case ProcKind::CInput:
        case ProcKind::Measure:
            s = fv_classical(*p.body);
            s.erase(p.var);
            return s;
        case ProcKind::COutput:
        case ProcKind::If: {
            s = fv_classical(*p.body);
            auto e = free_vars(*p.expr);
            s.insert(e.begin(), e.end());
            return s;
        }
        default:
            for (const auto &c : p.children()) {
                auto t = fv_classical(*c);
                s.insert(t.begin(), t.end());
            }
            return s;
    }
}

std::string_view violation_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::OutputThenUse:
            return "OutputThenUse";
        case ViolationKind::ParallelOverlap:
            return "ParallelOverlap";
        case ViolationKind::DuplicateQubit:
            return "DuplicateQubit";
        case ViolationKind::ArityMismatch:
            return "ArityMismatch";
    }
    return "?";
}

namespace {

std::optional<Violation> check_node(const Proc &p, std::vector<int> &path) {
    auto fail = [&](ViolationKind k, std::string detail) {
        return Violation{k, path, std::move(detail)};
    };
    switch (p.kind) {
        case ProcKind::QOutput:
            if (qv(*p.body).count(p.var)) {
                return fail(ViolationKind::OutputThenUse,
                            "qubit '" + p.var + "' is used after being sent on '" + p.channel + "'");
            }
            break;
        case ProcKind::Parallel: {
            auto l = qv(*p.body);
            for (const auto &q : qv(*p.other)) {
                if (l.count(q)) {
                    return fail(ViolationKind::ParallelOverlap,
                                "qubit '" + q + "' is free on both sides of ||");
                }
            }
            break;
        }
        case ProcKind::Unitary:
        case ProcKind::Measure: {
            std::set<std::string> seen;
            for (const auto &q : p.qubits) {
                if (!seen.insert(q).second) {
                    return fail(ViolationKind::DuplicateQubit, "qubit '" + q + "' listed twice");
                }
            }
            int arity = -1;
            if (p.kind == ProcKind::Unitary && p.gate) {
                arity = qubit_count(p.gate->matrix);
            } else if (p.kind == ProcKind::Measure && p.observable) {
                arity = p.observable->spectrum.arity();
            }
            if (arity >= 0 && arity != static_cast<int>(p.qubits.size())) {
                return fail(ViolationKind::ArityMismatch,
                            "operator acts on " + std::to_string(arity) + " qubits, " +
                                std::to_string(p.qubits.size()) + " given");
            }
            break;
        }
        default:
            break;
    }
    auto kids = p.children();
    for (size_t i = 0; i < kids.size(); ++i) {
        path.push_back(static_cast<int>(i));
        if (auto v = check_node(*kids[i], path)) return v;
        path.pop_back();
    }
    return std::nullopt;
}

ProcPtr with_body(const ProcPtr &p, ProcPtr body, ProcPtr other = nullptr) {
    if (body == p->body && other == p->other) return p;
    auto out = std::make_shared<Proc>(*p);
    out->body = std::move(body);
    out->other = std::move(other);
    return out;
}

}  // namespace

std::optional<Violation> check_wellformed(const Proc &p) {
    std::vector<int> path;
    return check_node(p, path);
}

ProcPtr subst_classical(const ProcPtr &p, const std::string &x, double v) {
    switch (p->kind) {
        case ProcKind::Nil:
            return p;
        case ProcKind::CInput:
        case ProcKind::Measure:
            if (p->var == x) return p;
            return with_body(p, subst_classical(p->body, x, v));
        case ProcKind::COutput:
        case ProcKind::If: {
            ExprPtr e = subst_expr(p->expr, x, v);
            ProcPtr b = subst_classical(p->body, x, v);
            if (e == p->expr && b == p->body) return p;
            auto out = std::make_shared<Proc>(*p);
            out->expr = e;
            out->body = b;
            return out;
        }
        case ProcKind::Sum:
        case ProcKind::Parallel:
            return with_body(p, subst_classical(p->body, x, v), subst_classical(p->other, x, v));
        default:
            return with_body(p, subst_classical(p->body, x, v));
    }
}

ProcPtr subst_quantum(const ProcPtr &p, const std::string &q, const std::string &r) {
    if (q == r || !qv(*p).count(q)) return p;
    switch (p->kind) {
        case ProcKind::QbitNew:
        case ProcKind::QInput: {
            if (p->var != r) {
                return with_body(p, subst_quantum(p->body, q, r));
            }
            // The binder would capture r: rename it first.
            auto used = all_names(*p->body);
            used.insert(q);
            std::string fresh = r + "'";
            while (used.count(fresh)) fresh += "'";
            auto out = std::make_shared<Proc>(*p);
            out->var = fresh;
            out->body = subst_quantum(subst_quantum(p->body, r, fresh), q, r);
            return out;
        }
        case ProcKind::QOutput: {
            auto out = std::make_shared<Proc>(*p);
            if (out->var == q) out->var = r;
            out->body = subst_quantum(p->body, q, r);
            return out;
        }
        case ProcKind::Unitary:
        case ProcKind::Measure: {
            auto out = std::make_shared<Proc>(*p);
            std::replace(out->qubits.begin(), out->qubits.end(), q, r);
            out->body = subst_quantum(p->body, q, r);
            return out;
        }
        case ProcKind::Sum:
        case ProcKind::Parallel:
            return with_body(p, subst_quantum(p->body, q, r), subst_quantum(p->other, q, r));
        default:
            return with_body(p, subst_quantum(p->body, q, r));
    }
}

bool is_classical(const Proc &p) {
    switch (p.kind) {
        case ProcKind::QbitNew:
        case ProcKind::QInput:
        case ProcKind::Unitary:
        case ProcKind::Measure:
            return false;
        default:
            for (const auto &c : p.children()) {
                if (!is_classical(*c)) return false;
            }
            return true;
    }
}

bool structurally_equal(const Proc &a, const Proc &b) {
    if (a.kind != b.kind || a.channel != b.channel || a.var != b.var || a.qubits != b.qubits ||
        a.relabel != b.relabel || a.restricted != b.restricted) {
        return false;
    }
    if (static_cast<bool>(a.expr) != static_cast<bool>(b.expr)) return false;
    if (a.expr && !expr_equal(*a.expr, *b.expr)) return false;
    if (static_cast<bool>(a.gate) != static_cast<bool>(b.gate)) return false;
    if (a.gate && (a.gate->name != b.gate->name || a.gate->matrix.rows() != b.gate->matrix.rows() ||
                   !approx_equal(a.gate->matrix, b.gate->matrix))) {
        return false;
    }
    if (static_cast<bool>(a.observable) != static_cast<bool>(b.observable)) return false;
    if (a.observable && a.observable->name != b.observable->name) return false;
    auto ka = a.children();
    auto kb = b.children();
    if (ka.size() != kb.size()) return false;
    for (size_t i = 0; i < ka.size(); ++i) {
        if (!structurally_equal(*ka[i], *kb[i])) return false;
    }
    return true;
}

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Renaming = std::map<std::string, std::string>;

std::string lookup(const Renaming &ren, const std::string &n) {
    auto it = ren.find(n);
    return it == ren.end() ? n : it->second;
}

void key_expr(const Expr &e, const Renaming &ren, std::string &out) {
    switch (e.op) {
        case ExprOp::Number:
            out += fmt_num(e.value);
            return;
        case ExprOp::Bool:
            out += e.value != 0.0 ? "T" : "F";
            return;
        case ExprOp::Var:
            out += lookup(ren, e.name);
            return;
        default:
            break;
    }
    out += '(';
    out += std::to_string(static_cast<int>(e.op));
    out += ' ';
    key_expr(*e.lhs, ren, out);
    if (e.rhs) {
        out += ' ';
        key_expr(*e.rhs, ren, out);
    }
    out += ')';
}

void key_proc(const Proc &p, Renaming ren, int depth, std::string &out) {
    auto bind = [&](const std::string &name) {
        std::string b = "%" + std::to_string(depth++);
        ren[name] = b;
        return b;
    };
    auto qubit_list = [&]() {
        out += '[';
        for (size_t i = 0; i < p.qubits.size(); ++i) {
            if (i) out += ',';
            out += lookup(ren, p.qubits[i]);
        }
        out += ']';
    };
    switch (p.kind) {
        case ProcKind::Nil:
            out += "0";
            return;
        case ProcKind::CInput: {
            out += p.channel + "?";
            out += bind(p.var);
            break;
        }
        case ProcKind::COutput:
            out += p.channel + "!";
            key_expr(*p.expr, ren, out);
            break;
        case ProcKind::QbitNew:
            out += "new ";
            out += bind(p.var);
            break;
        case ProcKind::QInput:
            out += p.channel + "??";
            out += bind(p.var);
            break;
        case ProcKind::QOutput:
            out += p.channel + "!!" + lookup(ren, p.var);
            break;
        case ProcKind::Unitary:
            out += "U:" + p.gate->name;
            qubit_list();
            break;
        case ProcKind::Measure:
            out += "M:" + p.observable->name;
            qubit_list();
            out += ';';
            out += bind(p.var);
            break;
        case ProcKind::Sum:
        case ProcKind::Parallel:
            out += p.kind == ProcKind::Sum ? "(+ " : "(| ";
            key_proc(*p.body, ren, depth, out);
            out += ' ';
            key_proc(*p.other, ren, depth, out);
            out += ')';
            return;
        case ProcKind::Relabel:
            out += "(rel ";
            key_proc(*p.body, ren, depth, out);
            for (const auto &[a, b] : p.relabel) out += " " + a + ">" + b;
            out += ')';
            return;
        case ProcKind::Restrict:
            out += "(res ";
            key_proc(*p.body, ren, depth, out);
            for (const auto &c : p.restricted) out += " " + c;
            out += ')';
            return;
        case ProcKind::If:
            out += "if ";
            key_expr(*p.expr, ren, out);
            break;
    }
    out += '.';
    key_proc(*p.body, std::move(ren), depth, out);
}

}  // namespace

std::string canonical_key(const Proc &p) {
    std::string out;
    key_proc(p, {}, 0, out);
    return out;
}

std::set<std::string> all_names(const Proc &p) {
    std::set<std::string> s;
    std::function<void(const Proc &)> walk = [&](const Proc &n) {
        if (!n.var.empty()) s.insert(n.var);
        s.insert(n.qubits.begin(), n.qubits.end());
        if (n.expr) {
            auto e = free_vars(*n.expr);
            s.insert(e.begin(), e.end());
        }
        for (const auto &c : n.children()) walk(*c);
    };
    walk(p);
    return s;
}

size_t term_size(const Proc &p) {
    size_t n = 1;
    for (const auto &c : p.children()) n += term_size(*c);
    return n;
}

}  // namespace qccs
