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

#include "qccs/generator.h"

#include <algorithm>

namespace qccs {

namespace {

const char *const kOneQubitGates[] = {"H", "X", "Z", "I"};

}  // namespace

TermGenerator::TermGenerator(uint64_t seed, GenOptions opts) : opts_(std::move(opts)), rng_(seed) {
    for (const auto &[name, m] : gates::builtin()) {
        gates_[name] = std::make_shared<GateDef>(GateDef{name, m});
    }
    for (const auto &[name, o] : observables::builtin()) {
        observables_[name] = std::make_shared<ObservableDef>(ObservableDef{name, o});
    }
}

GatePtr TermGenerator::gate(const std::string &name) const { return gates_.at(name); }
ObservablePtr TermGenerator::observable(const std::string &name) const { return observables_.at(name); }

int TermGenerator::pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
bool TermGenerator::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

std::string TermGenerator::fresh_binder(const std::set<std::string> &avail) const {
    for (const char *n : {"t", "u", "v", "w"}) {
        if (!avail.count(n) && std::find(opts_.qubits.begin(), opts_.qubits.end(), n) == opts_.qubits.end()) {
            return n;
        }
    }
    return {};
}

ProcPtr TermGenerator::term() {
    std::set<std::string> avail(opts_.qubits.begin(), opts_.qubits.end());
    return term(avail, opts_.max_depth);
}

ProcPtr TermGenerator::term(const std::set<std::string> &avail, int depth) {
    std::vector<std::string> vars;
    return gen(avail, vars, depth);
}

ExprPtr TermGenerator::value_expr(const std::vector<std::string> &vars, int depth) {
    int choice = pick(depth > 0 ? 4 : 2);
    if (choice == 1 && !vars.empty()) return ex::var(vars[pick(static_cast<int>(vars.size()))]);
    if (choice >= 2) {
        static const ExprOp ops[] = {ExprOp::Add, ExprOp::Sub, ExprOp::Mul};
        return ex::binary(ops[pick(3)], value_expr(vars, depth - 1), value_expr(vars, depth - 1));
    }
    return ex::num(opts_.values[pick(static_cast<int>(opts_.values.size()))]);
}

ExprPtr TermGenerator::bool_expr(const std::vector<std::string> &vars, int depth) {
    int choice = pick(depth > 0 ? 5 : 2);
    switch (choice) {
        case 0:
            return ex::boolean(coin(0.7));
        case 1: {
            static const ExprOp ops[] = {ExprOp::Eq, ExprOp::Lt, ExprOp::Le};
            return ex::binary(ops[pick(3)], value_expr(vars, 1), value_expr(vars, 0));
        }
        case 2:
            return ex::unary(ExprOp::Not, bool_expr(vars, depth - 1));
        case 3:
            return ex::binary(ExprOp::And, bool_expr(vars, depth - 1), bool_expr(vars, depth - 1));
        default:
            return ex::binary(ExprOp::Or, bool_expr(vars, depth - 1), bool_expr(vars, depth - 1));
    }
}

RelabelFn TermGenerator::relabeling() {
    const auto &chans = coin(0.7) ? opts_.cchannels : opts_.qchannels;
    RelabelFn f;
    std::string a = chans[pick(static_cast<int>(chans.size()))];
    std::string b = chans[pick(static_cast<int>(chans.size()))];
    if (a != b) f[a] = b;
    return f;
}

std::set<std::string> TermGenerator::restriction() {
    std::vector<std::string> all = opts_.cchannels;
    all.insert(all.end(), opts_.qchannels.begin(), opts_.qchannels.end());
    return {all[pick(static_cast<int>(all.size()))]};
}

ProcPtr TermGenerator::gen(const std::set<std::string> &avail, std::vector<std::string> &vars, int depth) {
    if (depth <= 0) return pr::nil();

    enum K { Nil, CIn, COut, New, QIn, QOut, Unit, Meas, Sum, Par, Rel, Res, If, N };
    std::vector<double> w(N, 0.0);
    std::string binder = fresh_binder(avail);
    w[Nil] = 1;
    w[COut] = 2;
    w[Sum] = 2;
    w[Par] = 1;
    w[Rel] = 0.5;
    w[Res] = 0.5;
    w[If] = 1;
    if (opts_.inputs) w[CIn] = 1;
    if (!binder.empty()) w[New] = 0.7;
    if (opts_.inputs && !binder.empty()) w[QIn] = 0.5;
    if (!avail.empty()) {
        w[QOut] = 0.7;
        w[Unit] = 3;
        w[Meas] = 1.5;
    }
    int k = std::discrete_distribution<int>(w.begin(), w.end())(rng_);

    std::vector<std::string> pool(avail.begin(), avail.end());
    auto any_qubit = [&] { return pool[pick(static_cast<int>(pool.size()))]; };
    auto cchan = [&] { return opts_.cchannels[pick(static_cast<int>(opts_.cchannels.size()))]; };
    auto qchan = [&] { return opts_.qchannels[pick(static_cast<int>(opts_.qchannels.size()))]; };

    switch (k) {
        case Nil:
            return pr::nil();
        case CIn: {
            std::string x = "x" + std::to_string(vars.size());
            vars.push_back(x);
            ProcPtr body = gen(avail, vars, depth - 1);
            vars.pop_back();
            return pr::cinput(cchan(), x, body);
        }
        case COut:
            return pr::coutput(cchan(), value_expr(vars, 1), gen(avail, vars, depth - 1));
        case New:
        case QIn: {
            std::set<std::string> inner = avail;
            inner.insert(binder);
            ProcPtr body = gen(inner, vars, depth - 1);
            return k == New ? pr::qbit(binder, body) : pr::qinput(qchan(), binder, body);
        }
        case QOut: {
            std::string q = any_qubit();
            std::set<std::string> inner = avail;
            inner.erase(q);
            return pr::qoutput(qchan(), q, gen(inner, vars, depth - 1));
        }
        case Unit: {
            if (pool.size() >= 2 && coin(0.3)) {
                std::shuffle(pool.begin(), pool.end(), rng_);
                return pr::unitary(gate("CNOT"), {pool[0], pool[1]}, gen(avail, vars, depth - 1));
            }
            return pr::unitary(gate(kOneQubitGates[pick(4)]), {any_qubit()}, gen(avail, vars, depth - 1));
        }
        case Meas: {
            std::string q = any_qubit();
            std::string x = "x" + std::to_string(vars.size());
            vars.push_back(x);
            ProcPtr body = gen(avail, vars, depth - 1);
            vars.pop_back();
            return pr::measure(observable(coin(0.5) ? "M01" : "Mpm"), {q}, x, body);
        }
        case Sum:
            return pr::sum(gen(avail, vars, depth - 1), gen(avail, vars, depth - 1));
        case Par: {
            std::set<std::string> l, r;
            for (const auto &q : avail) {
                int side = pick(3);
                if (side == 0) l.insert(q);
                if (side == 1) r.insert(q);
            }
            return pr::parallel(gen(l, vars, depth - 1), gen(r, vars, depth - 1));
        }
        case Rel:
            return pr::relabel(gen(avail, vars, depth - 1), relabeling());
        case Res:
            return pr::restrict(gen(avail, vars, depth - 1), restriction());
        default:
            return pr::guard(bool_expr(vars, 1), gen(avail, vars, depth - 1));
    }
}

ProcPtr TermGenerator::classical_term(int depth) {
    std::vector<std::string> vars;
    return gen_classical(vars, depth);
}

ProcPtr TermGenerator::gen_classical(std::vector<std::string> &vars, int depth) {
    if (depth <= 0) return pr::nil();
    auto cchan = [&] { return opts_.cchannels[pick(static_cast<int>(opts_.cchannels.size()))]; };
    switch (pick(opts_.inputs ? 7 : 6)) {
        case 0:
            return pr::nil();
        case 1:
        case 2:
            return pr::coutput(cchan(), value_expr(vars, 1), gen_classical(vars, depth - 1));
        case 3:
            return pr::sum(gen_classical(vars, depth - 1), gen_classical(vars, depth - 1));
        case 4:
            return pr::guard(bool_expr(vars, 1), gen_classical(vars, depth - 1));
        case 5: {
            std::set<std::string> l{cchan()};
            return pr::restrict(gen_classical(vars, depth - 1), l);
        }
        default: {
            std::string x = "x" + std::to_string(vars.size());
            vars.push_back(x);
            ProcPtr body = gen_classical(vars, depth - 1);
            vars.pop_back();
            return pr::cinput(cchan(), x, body);
        }
    }
}

QContext TermGenerator::context() {
    int n = static_cast<int>(opts_.qubits.size());
    Eigen::Index dim = Eigen::Index{1} << n;
    std::normal_distribution<double> g;
    Matrix a(dim, 2);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = Complex(g(rng_), g(rng_));
    }
    Matrix rho = a * a.adjoint();
    rho /= rho.trace();
    return QContext(opts_.qubits, rho);
}

SourceFile generator_env(const GenOptions &opts) {
    SourceFile env;
    for (const auto &c : opts.cchannels) env.channels[c] = {c, false, opts.values, {}};
    for (const auto &c : opts.qchannels) env.channels[c] = {c, true, {}, {}};
    return env;
}

namespace {

GatePtr other_gate(const GateDef &g, std::mt19937_64 &rng) {
    const auto &table = gates::builtin();
    if (g.matrix.rows() == 2) {
        std::vector<std::string> names;
        for (const char *n : {"H", "X", "Z", "Y"}) {
            if (n != g.name) names.push_back(n);
        }
        std::string n = names[std::uniform_int_distribution<size_t>(0, names.size() - 1)(rng)];
        return std::make_shared<GateDef>(GateDef{n, table.at(n)});
    }
    Matrix cz = Matrix::Identity(g.matrix.rows(), g.matrix.cols());
    cz(cz.rows() - 1, cz.cols() - 1) = -1.0;
    if (approx_equal(cz, g.matrix)) return std::make_shared<GateDef>(GateDef{"CNOT", table.at("CNOT")});
    return std::make_shared<GateDef>(GateDef{"CZ", cz});
}

ProcPtr rebuild(const ProcPtr &p, int &target, std::mt19937_64 &rng) {
    if (p->kind == ProcKind::Unitary && target-- == 0) {
        auto n = std::make_shared<Proc>(*p);
        n->gate = other_gate(*p->gate, rng);
        return n;
    }
    if (!p->body) return p;
    ProcPtr body = rebuild(p->body, target, rng);
    ProcPtr other = p->other ? rebuild(p->other, target, rng) : nullptr;
    if (body == p->body && other == p->other) return p;
    auto n = std::make_shared<Proc>(*p);
    n->body = body;
    n->other = other;
    return n;
}

int count_gates(const Proc &p) {
    int n = p.kind == ProcKind::Unitary ? 1 : 0;
    for (const auto &c : p.children()) n += count_gates(*c);
    return n;
}

}  // namespace

ProcPtr mutate_gate(const ProcPtr &p, std::mt19937_64 &rng) {
    int n = count_gates(*p);
    if (n == 0) return nullptr;
    int target = std::uniform_int_distribution<int>(0, n - 1)(rng);
    return rebuild(p, target, rng);
}

}  // namespace qccs
