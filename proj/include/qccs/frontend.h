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

#ifndef QCCS_FRONTEND_H
#define QCCS_FRONTEND_H

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qccs/ast.h"
#include "qccs/bisim.h"
#include "qccs/error.h"
#include "qccs/lts.h"

namespace qccs {

struct SourcePos {
    int line = 0;
    int col = 0;
};

/// An Error that carries a source position. what() starts with "line:col: ".
class SourceError : public Error {
   public:
    SourceError(ErrorKind kind, SourcePos pos, const std::string &msg);
    SourcePos pos() const { return pos_; }

   private:
    SourcePos pos_;
};

struct ChannelDecl {
    std::string name;
    bool quantum = false;
    std::vector<double> domain;  // empty: policy default
    SourcePos pos;
};

struct ProcDef {
    std::string name;
    ProcPtr proc;
    SourcePos pos;
};

struct Binding {
    std::vector<std::string> vars;
    Matrix state;  // column vector (ket) or density matrix
    SourcePos pos;
};

struct ConfigDef {
    std::string name;
    ProcPtr proc;
    std::vector<Binding> bindings;
    SourcePos pos;
};

struct CheckDirective {
    Mode mode = Mode::Strong;
    std::string left;
    std::string right;
    SourcePos pos;
};

struct GateDecl {
    GatePtr gate;
    SourcePos pos;
};

struct ObservableDecl {
    ObservablePtr observable;
    SourcePos pos;
};

struct SourceFile {
    int version = 1;
    std::map<std::string, GateDecl> gates;
    std::map<std::string, ObservableDecl> observables;
    std::map<std::string, ChannelDecl> channels;
    std::map<std::string, Complex> params;
    std::vector<ProcDef> procs;
    std::vector<ConfigDef> configs;
    std::vector<CheckDirective> checks;

    const ProcDef *find_proc(const std::string &name) const;
    const ConfigDef *find_config(const std::string &name) const;
};

struct ParseOptions {
    /// Replace the value of a declared param.
    std::map<std::string, Complex> param_overrides;
};

SourceFile parse(std::string_view text, const ParseOptions &options = {});

/// Parses a single process term using the declarations of env.
ProcPtr parse_process(std::string_view text, const SourceFile &env);

/// Parses a matrix or ket expression ("|0> + |1>", "[[0,1],[1,0]]", ...).
Matrix parse_matrix_expr(std::string_view text, const SourceFile &env = {});

std::string pretty_print(const Proc &p);
std::string pretty_print(const Expr &e);

struct NamedConfiguration {
    std::string name;
    Configuration config;
};

struct Elaborated {
    std::vector<NamedConfiguration> configs;
    InputPolicy policy;
    std::vector<CheckDirective> checks;

    /// Throws UnknownVar if there is no such configuration.
    const Configuration &config(const std::string &name) const;
};

/// Validates gates and observables, builds every configuration's context and
/// checks the configuration invariants.
Elaborated elaborate(const SourceFile &file);

}  // namespace qccs

#endif
