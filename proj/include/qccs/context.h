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

#ifndef QCCS_CONTEXT_H
#define QCCS_CONTEXT_H

#include <span>
#include <string>
#include <vector>

#include "qccs/linalg.h"

namespace qccs {

/// A quantum context "q1,...,qn = rho": distinct variable names together with
/// the 2^n x 2^n density matrix of their joint state. The empty context holds
/// the 1x1 matrix [1].
class QContext {
   public:
    QContext();
    /// Validates distinct names, dimension, and the density-matrix property.
    QContext(std::vector<std::string> vars, Matrix rho, double tol = kMatrixTol);

    static QContext empty() { return QContext(); }

    const std::vector<std::string> &vars() const { return vars_; }
    const Matrix &rho() const { return rho_; }
    int size() const { return static_cast<int>(vars_.size()); }

    bool contains(const std::string &var) const;
    /// Position of `var`; throws UnknownVar.
    int position(const std::string &var) const;
    std::vector<int> positions(std::span<const std::string> names) const;

   private:
    struct Unchecked {};
    QContext(Unchecked, std::vector<std::string> vars, Matrix rho);

    friend struct ContextAccess;

    std::vector<std::string> vars_;
    Matrix rho_;
};

/// r, vars = |0><0| (x) rho.
QContext new_qubit(const QContext &ctx, const std::string &r);

/// r, vars = sigma, where sigma must reduce to ctx.rho() after tracing out r.
QContext extend_with_input(const QContext &ctx, const std::string &r, const Matrix &sigma,
                           double tol = kMatrixTol);

QContext apply_unitary(const QContext &ctx, const Matrix &u, std::span<const std::string> targets);

struct MeasurementOutcome {
    double eigenvalue;
    double probability;
    QContext post;
};

/// Outcomes with probability above kDropProbability, in spectral order.
std::vector<MeasurementOutcome> measure(const QContext &ctx, const Observable &obs,
                                        std::span<const std::string> targets);

inline constexpr double kDropProbability = 1e-12;

/// Equal variable sets, and rho agrees with the other's rho once both are
/// expressed in the same variable order.
bool context_equal(const QContext &a, const QContext &b, double tol = kMatrixTol);

/// Reduced density matrix on `names` (in the listed order).
Matrix reduced_state(const QContext &ctx, std::span<const std::string> names);

/// Lowest "#k" not used by the context. Fresh names depend only on the
/// context, so equal states reached along different paths get equal names.
std::string fresh_qvar(const QContext &ctx);

}  // namespace qccs

#endif
