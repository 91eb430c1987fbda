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

#ifndef QCCS_AST_H
#define QCCS_AST_H

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qccs/linalg.h"

namespace qccs {

// ---------------------------------------------------------------------------
// Classical expressions

enum class ExprOp { Number, Bool, Var, Add, Sub, Mul, Neg, Eq, Lt, Le, And, Or, Not };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Arithmetic and boolean expressions over 64-bit reals. Booleans are a
/// separate sort: eval_bool on an arithmetic node (or vice versa) is a
/// TypeMismatch.
struct Expr {
    ExprOp op;
    double value = 0.0;  // Number, Bool (0/1)
    std::string name;    // Var
    ExprPtr lhs;
    ExprPtr rhs;

    bool is_boolean() const;
};

namespace ex {
ExprPtr num(double v);
ExprPtr boolean(bool b);
ExprPtr var(std::string name);
ExprPtr binary(ExprOp op, ExprPtr l, ExprPtr r);
ExprPtr unary(ExprOp op, ExprPtr e);
}  // namespace ex

using Env = std::map<std::string, double>;

double eval_expr(const Expr &e, const Env &env = {});
bool eval_bool(const Expr &e, const Env &env = {});
std::set<std::string> free_vars(const Expr &e);
ExprPtr subst_expr(const ExprPtr &e, const std::string &x, double v);
bool expr_equal(const Expr &a, const Expr &b);

// ---------------------------------------------------------------------------
// Process expressions

struct GateDef {
    std::string name;
    Matrix matrix;
};
using GatePtr = std::shared_ptr<const GateDef>;

struct ObservableDef {
    std::string name;
    Observable spectrum;
};
using ObservablePtr = std::shared_ptr<const ObservableDef>;

/// Finite channel renaming, identity outside its domain.
using RelabelFn = std::map<std::string, std::string>;

std::string apply_relabel(const RelabelFn &f, const std::string &channel);

enum class ProcKind {
    Nil,
    CInput,    // c?x.E
    COutput,   // c!e.E
    QbitNew,   // (qbit q).E
    QInput,    // qc?q.E
    QOutput,   // qc!q.E
    Unitary,   // U[q1..qk].E
    Measure,   // M[q1..qk; x].E
    Sum,       // E + F
    Parallel,  // E || F
    Relabel,   // E[f]
    Restrict,  // E \ L
    If,        // if b then E
};

struct Proc;
using ProcPtr = std::shared_ptr<const Proc>;

/// Immutable process-expression node. Which fields are meaningful depends on
/// `kind`; build nodes through the factory functions in namespace `pr`.
struct Proc {
    ProcKind kind = ProcKind::Nil;
    std::string channel;              // CInput, COutput, QInput, QOutput
    std::string var;                  // bound/used variable: x or q
    ExprPtr expr;                     // COutput value, If guard
    std::vector<std::string> qubits;  // Unitary, Measure
    GatePtr gate;
    ObservablePtr observable;
    ProcPtr body;   // prefixes, Relabel, Restrict, If; left operand of Sum/Parallel
    ProcPtr other;  // right operand of Sum/Parallel
    RelabelFn relabel;
    std::set<std::string> restricted;

    /// Direct children in left-to-right order.
    std::vector<ProcPtr> children() const;
};

namespace pr {
ProcPtr nil();
ProcPtr cinput(std::string channel, std::string x, ProcPtr body);
ProcPtr coutput(std::string channel, ExprPtr value, ProcPtr body);
ProcPtr qbit(std::string q, ProcPtr body);
ProcPtr qinput(std::string channel, std::string q, ProcPtr body);
ProcPtr qoutput(std::string channel, std::string q, ProcPtr body);
ProcPtr unitary(GatePtr gate, std::vector<std::string> qubits, ProcPtr body);
ProcPtr measure(ObservablePtr obs, std::vector<std::string> qubits, std::string x, ProcPtr body);
ProcPtr sum(ProcPtr l, ProcPtr r);
ProcPtr parallel(ProcPtr l, ProcPtr r);
ProcPtr relabel(ProcPtr body, RelabelFn f);
ProcPtr restrict(ProcPtr body, std::set<std::string> channels);
ProcPtr guard(ExprPtr cond, ProcPtr body);
}  // namespace pr

/// Free quantum variables.
std::set<std::string> qv(const Proc &p);

/// Free classical variables (binders: c?x and M[..;x]).
std::set<std::string> fv_classical(const Proc &p);

enum class ViolationKind {
    OutputThenUse,    // qc!q.E with q in qv(E)
    ParallelOverlap,  // E || F sharing a free quantum variable
    DuplicateQubit,   // repeated variable in U[..] or M[..;x]
    ArityMismatch,    // qubit list length differs from the gate/observable
};

std::string_view violation_name(ViolationKind k);

struct Violation {
    ViolationKind kind;
    std::vector<int> path;  // child indices from the root
    std::string detail;
};

std::optional<Violation> check_wellformed(const Proc &p);

ProcPtr subst_classical(const ProcPtr &p, const std::string &x, double v);

/// Replaces free occurrences of q by r, renaming (qbit .) and qc?. binders
/// that would capture r. Requires r not free in p whenever q is.
ProcPtr subst_quantum(const ProcPtr &p, const std::string &q, const std::string &r);

/// No QbitNew, QInput, Unitary or Measure anywhere.
bool is_classical(const Proc &p);

bool structurally_equal(const Proc &a, const Proc &b);

/// Serialization used as term identity: bound variables are renamed by
/// binding depth, so alpha-equivalent terms produce the same key.
std::string canonical_key(const Proc &p);

/// Every variable name that occurs in p, bound or free, classical or quantum.
std::set<std::string> all_names(const Proc &p);

size_t term_size(const Proc &p);

}  // namespace qccs

#endif
