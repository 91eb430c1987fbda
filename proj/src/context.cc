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

#include "qccs/context.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "qccs/error.h"

namespace qccs {

struct ContextAccess {
    static QContext make(std::vector<std::string> vars, Matrix rho) {
        return QContext(QContext::Unchecked{}, std::move(vars), std::move(rho));
    }
};

QContext::QContext() : rho_(Matrix::Ones(1, 1)) {}

QContext::QContext(Unchecked, std::vector<std::string> vars, Matrix rho)
    : vars_(std::move(vars)), rho_(std::move(rho)) {}

QContext::QContext(std::vector<std::string> vars, Matrix rho, double tol)
    : vars_(std::move(vars)), rho_(std::move(rho)) {
    std::set<std::string> seen;
    for (const auto &v : vars_) {
        if (!seen.insert(v).second) {
            throw Error(ErrorKind::DuplicateVar, "context lists variable '" + v + "' twice");
        }
    }
    size_t dim = size_t{1} << vars_.size();
    if (static_cast<size_t>(rho_.rows()) != dim || static_cast<size_t>(rho_.cols()) != dim) {
        throw Error(ErrorKind::DimensionMismatch,
                    "context state has dimension " + std::to_string(rho_.rows()) + ", expected " +
                        std::to_string(dim));
    }
    if (!is_density(rho_, tol)) {
        throw Error(ErrorKind::NotDensity, "context state is not a density matrix");
    }
}

bool QContext::contains(const std::string &var) const {
    return std::find(vars_.begin(), vars_.end(), var) != vars_.end();
}

int QContext::position(const std::string &var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) {
        throw Error(ErrorKind::UnknownVar, "variable '" + var + "' is not in the context");
    }
    return static_cast<int>(it - vars_.begin());
}

std::vector<int> QContext::positions(std::span<const std::string> names) const {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto &n : names) {
        out.push_back(position(n));
    }
    return out;
}

QContext new_qubit(const QContext &ctx, const std::string &r) {
    if (ctx.contains(r)) {
        throw Error(ErrorKind::DuplicateVar, "new qubit '" + r + "' already in the context");
    }
    std::vector<std::string> vars;
    vars.reserve(ctx.vars().size() + 1);
    vars.push_back(r);
    vars.insert(vars.end(), ctx.vars().begin(), ctx.vars().end());
    return ContextAccess::make(std::move(vars), tensor(outer(basis_ket("0")), ctx.rho()));
}

QContext extend_with_input(const QContext &ctx, const std::string &r, const Matrix &sigma,
                           double tol) {
    if (ctx.contains(r)) {
        throw Error(ErrorKind::DuplicateVar, "input qubit '" + r + "' already in the context");
    }
    std::vector<std::string> vars;
    vars.push_back(r);
    vars.insert(vars.end(), ctx.vars().begin(), ctx.vars().end());
    QContext out(std::move(vars), sigma, tol);
    std::vector<int> keep;
    for (int i = 1; i <= ctx.size(); ++i) {
        keep.push_back(i);
    }
    if (!approx_equal(partial_trace(sigma, keep), ctx.rho(), tol)) {
        throw Error(ErrorKind::TraceMismatch,
                    "input state changes the reduced state of the existing context");
    }
    return out;
}

QContext apply_unitary(const QContext &ctx, const Matrix &u, std::span<const std::string> targets) {
    if (!is_unitary(u)) {
        throw Error(ErrorKind::NotUnitary, "operator is not unitary");
    }
    std::vector<int> pos = ctx.positions(targets);
    Matrix lifted = lift_operator(u, pos, ctx.size());
    return ContextAccess::make(ctx.vars(), lifted * ctx.rho() * lifted.adjoint());
}

std::vector<MeasurementOutcome> measure(const QContext &ctx, const Observable &obs,
                                        std::span<const std::string> targets) {
    std::vector<int> pos = ctx.positions(targets);
    Eigen::Index dim = Eigen::Index{1} << pos.size();
    if (auto bad = validate_observable(obs, dim)) {
        throw Error(ErrorKind::InvalidObservable, "invalid observable: " + bad->message);
    }
    std::vector<MeasurementOutcome> out;
    for (const auto &term : obs.terms) {
        Matrix p = lift_operator(term.projector, pos, ctx.size());
        Matrix projected = p * ctx.rho() * p;
        double prob = projected.trace().real();
        if (prob <= kDropProbability) {
            continue;
        }
        Matrix post = projected / prob;
        // Re-hermitize to keep round-off from accumulating along long runs.
        post = 0.5 * (post + post.adjoint()).eval();
        out.push_back({term.eigenvalue, prob, ContextAccess::make(ctx.vars(), post)});
    }
    return out;
}

bool context_equal(const QContext &a, const QContext &b, double tol) {
    if (a.size() != b.size()) {
        return false;
    }
    if (a.vars() == b.vars()) {
        return approx_equal(a.rho(), b.rho(), tol);
    }
    // Names pin the permutation: a's variable i goes to b's position of it.
    std::vector<int> perm;
    perm.reserve(a.size());
    for (const auto &v : a.vars()) {
        if (!b.contains(v)) {
            return false;
        }
        perm.push_back(b.position(v));
    }
    Matrix pi = permutation_op(perm);
    return approx_equal(pi * a.rho() * pi.adjoint(), b.rho(), tol);
}

Matrix reduced_state(const QContext &ctx, std::span<const std::string> names) {
    std::vector<int> pos = ctx.positions(names);
    return partial_trace(ctx.rho(), pos);
}

std::string fresh_qvar(const QContext &ctx) {
    for (int k = 0;; ++k) {
        std::string name = "#" + std::to_string(k);
        if (!ctx.contains(name)) {
            return name;
        }
    }
}

}  // namespace qccs
