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

#include "qccs/frontend.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace qccs {

SourceError::SourceError(ErrorKind kind, SourcePos pos, const std::string &msg)
    : Error(kind, std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + msg), pos_(pos) {}

const ProcDef *SourceFile::find_proc(const std::string &name) const {
    for (const auto &p : procs) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

const ConfigDef *SourceFile::find_config(const std::string &name) const {
    for (const auto &c : configs) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, Ket, Bra, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}
bool ket_char(char c) { return c == '0' || c == '1' || c == '+' || c == '-'; }

std::vector<Token> lex(std::string_view src, int *version) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
    };
    auto error = [&](const std::string &msg) { throw SourceError(ErrorKind::Parse, {line, col}, msg); };

    if (version && src.substr(0, 5) == "#qccs") {
        size_t eol = src.find('\n');
        std::string head(src.substr(5, eol == std::string_view::npos ? std::string_view::npos : eol - 5));
        char *end = nullptr;
        long v = std::strtol(head.c_str(), &end, 10);
        if (end == head.c_str()) error("expected a version number after #qccs");
        if (v != 1) error("unsupported format version " + std::to_string(v));
        *version = static_cast<int>(v);
        advance(eol == std::string_view::npos ? src.size() : eol);
    }

    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (src.substr(i, 2) == "//") {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.pos = {line, col};
        if (ident_start(c)) {
            size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    j = k;
                    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
                }
            }
            t.kind = Tok::Number;
            t.text = std::string(src.substr(i, j - i));
            t.number = std::strtod(t.text.c_str(), nullptr);
            advance(j - i);
        } else if (c == '|' && i + 1 < src.size() && src[i + 1] == '|') {
            t.kind = Tok::Punct;
            t.text = "||";
            advance(2);
        } else if (c == '|') {
            size_t j = i + 1;
            while (j < src.size() && ket_char(src[j])) ++j;
            if (j == i + 1 || j >= src.size() || src[j] != '>') error("expected a ket such as |0>");
            t.kind = Tok::Ket;
            t.text = std::string(src.substr(i + 1, j - i - 1));
            advance(j + 1 - i);
        } else if (c == '<' && i + 1 < src.size() && ket_char(src[i + 1])) {
            size_t j = i + 1;
            while (j < src.size() && ket_char(src[j])) ++j;
            if (j < src.size() && src[j] == '|' && !(j + 1 < src.size() && src[j + 1] == '|')) {
                t.kind = Tok::Bra;
                t.text = std::string(src.substr(i + 1, j - i - 1));
                advance(j + 1 - i);
            } else {
                t.kind = Tok::Punct;
                t.text = "<";
                advance(1);
            }
        } else if (src.substr(i, 3) == "‖") {  // double vertical line
            t.kind = Tok::Punct;
            t.text = "||";
            advance(3);
        } else if (src.substr(i, 3) == "⊗") {  // circled times
            t.kind = Tok::Punct;
            t.text = "(x)";
            advance(3);
        } else {
            static const char *two[] = {"->", ":=", "==", "<=", ">=", "!="};
            t.kind = Tok::Punct;
            for (const char *op : two) {
                if (src.substr(i, 2) == op) t.text = op;
            }
            if (t.text.empty()) {
                static const std::string singles = ".?![]{}();,:=+-*/\\<>";
                if (singles.find(c) == std::string::npos) {
                    error(std::string("unexpected character '") + c + "'");
                }
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = {line, col};
    out.push_back(end);
    return out;
}

std::string describe(const Token &t) {
    switch (t.kind) {
        case Tok::End:
            return "end of input";
        case Tok::Ket:
            return "'|" + t.text + ">'";
        case Tok::Bra:
            return "'<" + t.text + "|'";
        default:
            return "'" + t.text + "'";
    }
}

// ---------------------------------------------------------------------------
// Parser

Matrix ket_of(const std::string &bits) {
    Matrix v = Matrix::Ones(1, 1);
    const double h = 1.0 / std::sqrt(2.0);
    for (char b : bits) {
        Matrix k(2, 1);
        switch (b) {
            case '0':
                k << 1, 0;
                break;
            case '1':
                k << 0, 1;
                break;
            case '+':
                k << h, h;
                break;
            default:
                k << h, -h;
                break;
        }
        v = tensor(v, k);
    }
    return v;
}

bool is_scalar(const Matrix &m) { return m.rows() == 1 && m.cols() == 1; }

class Parser {
   public:
    Parser(std::vector<Token> toks, SourceFile &file) : toks_(std::move(toks)), file_(file) {}

    void parse_file() {
        while (!at_end()) declaration();
    }

    ProcPtr parse_single_process() {
        ProcPtr p = sum();
        if (!at_end()) fail("expected end of process, found " + describe(peek()));
        return p;
    }

    Matrix parse_single_matrix() {
        Matrix m = mexpr();
        if (!at_end()) fail("expected end of expression, found " + describe(peek()));
        return m;
    }

    std::map<std::string, Complex> overrides;

   private:
    // -- token helpers
    const Token &peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::End; }
    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool is_punct(const char *p, size_t k = 0) const {
        return peek(k).kind == Tok::Punct && peek(k).text == p;
    }
    bool is_word(const char *w, size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == w;
    }
    bool accept(const char *p) {
        if (!is_punct(p)) return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string &msg, const Token *at = nullptr) const {
        throw SourceError(ErrorKind::Parse, (at ? *at : peek()).pos, msg);
    }
    void expect(const char *p, const char *what) {
        if (!accept(p)) fail(std::string("expected '") + p + "' " + what + ", found " + describe(peek()));
    }
    void expect_word(const char *w) {
        if (!is_word(w)) fail(std::string("expected '") + w + "', found " + describe(peek()));
        ++pos_;
    }
    std::string ident(const char *what) {
        if (peek().kind != Tok::Ident) fail(std::string("expected ") + what + ", found " + describe(peek()));
        return next().text;
    }

    bool reserved(const std::string &s) const {
        static const std::set<std::string> words = {"nil", "qbit", "if", "then", "true", "false",
                                                    "and", "or", "not"};
        return words.count(s) > 0;
    }

    // -- declarations
    void declaration() {
        Token head = peek();
        std::string kw = ident("a declaration");
        if (kw == "gate") {
            std::string name = new_name("gate");
            expect("=", "after the gate name");
            Matrix m = mexpr();
            expect(";", "after the gate matrix");
            file_.gates[name] = {std::make_shared<GateDef>(GateDef{name, m}), head.pos};
        } else if (kw == "measure") {
            std::string name = new_name("observable");
            expect("=", "after the observable name");
            expect("{", "to open the spectral list");
            Observable obs;
            do {
                double lambda = real_number();
                expect(":", "after an eigenvalue");
                obs.terms.push_back({lambda, mexpr()});
            } while (accept(","));
            expect("}", "to close the spectral list");
            expect(";", "after the observable");
            file_.observables[name] = {std::make_shared<ObservableDef>(ObservableDef{name, obs}), head.pos};
        } else if (kw == "channel" || kw == "qchannel") {
            std::vector<std::string> names;
            do {
                names.push_back(new_name("channel"));
            } while (accept(","));
            std::vector<double> domain;
            if (kw == "channel" && accept(":")) {
                expect("{", "to open the value domain");
                do {
                    domain.push_back(real_number());
                } while (accept(","));
                expect("}", "to close the value domain");
            }
            expect(";", "after the channel declaration");
            for (auto &n : names) file_.channels[n] = {n, kw == "qchannel", domain, head.pos};
        } else if (kw == "param") {
            std::string name = new_name("param");
            expect("=", "after the param name");
            Matrix v = mexpr();
            if (!is_scalar(v)) fail("param value must be a scalar", &head);
            expect(";", "after the param value");
            auto it = overrides.find(name);
            file_.params[name] = it == overrides.end() ? v(0, 0) : it->second;
        } else if (kw == "proc") {
            std::string name = new_name("process");
            if (!accept(":=")) expect("=", "after the process name");
            ProcPtr p = sum();
            expect(";", "after the process definition");
            file_.procs.push_back({name, p, head.pos});
        } else if (kw == "config") {
            std::string name = new_name("configuration");
            expect("=", "after the configuration name");
            expect("<", "to open the configuration");
            ConfigDef cfg{name, sum(), {}, head.pos};
            while (accept(";")) {
                if (is_punct(">")) break;
                Binding b;
                b.pos = peek().pos;
                do {
                    b.vars.push_back(ident("a qubit name"));
                } while (accept(","));
                expect("=", "after the bound qubits");
                b.state = mexpr();
                cfg.bindings.push_back(std::move(b));
            }
            expect(">", "to close the configuration");
            if (!accept(";")) {
                // trailing semicolon is optional after a configuration
            }
            file_.configs.push_back(std::move(cfg));
        } else if (kw == "check") {
            CheckDirective d;
            d.pos = head.pos;
            Token m = peek();
            std::string mode = ident("strong, weak or eq");
            if (mode == "strong") {
                d.mode = Mode::Strong;
            } else if (mode == "weak") {
                d.mode = Mode::Weak;
            } else if (mode == "eq") {
                d.mode = Mode::Equality;
            } else {
                fail("expected strong, weak or eq, found '" + mode + "'", &m);
            }
            d.left = ident("a configuration name");
            d.right = ident("a configuration name");
            expect(";", "after the check directive");
            file_.checks.push_back(std::move(d));
        } else {
            fail("unknown declaration '" + kw + "'", &head);
        }
    }

    std::string new_name(const char *what) {
        Token t = peek();
        std::string n = ident(what);
        if (reserved(n)) fail("'" + n + "' is a reserved word", &t);
        bool taken = file_.gates.count(n) || file_.observables.count(n) || file_.channels.count(n) ||
                     file_.params.count(n) || file_.find_proc(n) || file_.find_config(n);
        if (taken) fail("name '" + n + "' is already declared", &t);
        return n;
    }

    double real_number() {
        bool neg = accept("-");
        if (peek().kind != Tok::Number) fail("expected a number, found " + describe(peek()));
        double v = next().number;
        return neg ? -v : v;
    }

    // -- processes
    ProcPtr sum() {
        ProcPtr p = par();
        while (accept("+")) p = pr::sum(p, par());
        return p;
    }

    ProcPtr par() {
        ProcPtr p = post();
        while (accept("||")) p = pr::parallel(p, post());
        return p;
    }

    ProcPtr post() {
        ProcPtr p = prefix();
        for (;;) {
            if (is_punct("[") && is_punct("{", 1)) {
                pos_ += 2;
                RelabelFn f;
                if (!is_punct("}")) {
                    do {
                        Token at = peek();
                        std::string a = channel_name();
                        expect("->", "in a relabeling");
                        std::string b = channel_name();
                        if (file_.channels.at(a).quantum != file_.channels.at(b).quantum) {
                            fail("relabeling maps '" + a + "' and '" + b + "' of different kinds", &at);
                        }
                        f[a] = b;
                    } while (accept(","));
                }
                expect("}", "to close the relabeling");
                expect("]", "after the relabeling");
                p = pr::relabel(p, std::move(f));
            } else if (accept("\\")) {
                expect("{", "after '\\'");
                std::set<std::string> l;
                if (!is_punct("}")) {
                    do {
                        l.insert(channel_name());
                    } while (accept(","));
                }
                expect("}", "to close the restriction");
                p = pr::restrict(p, std::move(l));
            } else {
                return p;
            }
        }
    }

    std::string channel_name() {
        Token t = peek();
        std::string c = ident("a channel name");
        if (!file_.channels.count(c)) fail("unknown channel '" + c + "'", &t);
        return c;
    }

    ProcPtr prefix() {
        Token t = peek();
        if (accept("(")) {
            ProcPtr p = sum();
            expect(")", "to close the parenthesis");
            return p;
        }
        if (t.kind != Tok::Ident) fail("expected a process, found " + describe(t));
        if (t.text == "nil") {
            ++pos_;
            return pr::nil();
        }
        if (t.text == "qbit") {
            ++pos_;
            std::string q = ident("a qubit name");
            return pr::qbit(q, continuation());
        }
        if (t.text == "if") {
            ++pos_;
            ExprPtr b = expr();
            check_sort(*b, true, t);
            expect_word("then");
            return pr::guard(b, prefix());
        }
        if (is_punct("?", 1) || is_punct("!", 1)) {
            std::string c = channel_name();
            bool input = next().text == "?";
            bool quantum = file_.channels.at(c).quantum;
            if (input) {
                std::string x = ident(quantum ? "a qubit name" : "a variable name");
                return quantum ? pr::qinput(c, x, continuation()) : pr::cinput(c, x, continuation());
            }
            if (quantum) {
                std::string q = ident("a qubit name");
                return pr::qoutput(c, q, continuation());
            }
            Token et = peek();
            ExprPtr e = expr();
            check_sort(*e, false, et);
            return pr::coutput(c, e, continuation());
        }
        if (is_punct("[", 1)) return operation();
        ++pos_;
        if (const ProcDef *d = file_.find_proc(t.text)) return d->proc;
        fail("unknown process or prefix '" + t.text + "'", &t);
    }

    ProcPtr continuation() {
        expect(".", "after a prefix");
        return prefix();
    }

    ProcPtr operation() {
        Token t = next();
        expect("[", "after the operator name");
        std::vector<std::string> qs;
        do {
            qs.push_back(ident("a qubit name"));
        } while (accept(","));
        std::string x;
        bool is_measure = false;
        if (accept(";")) {
            is_measure = true;
            x = ident("a variable name");
        }
        expect("]", "to close the qubit list");
        if (is_measure) {
            ObservablePtr obs = find_observable(t.text);
            if (!obs) fail("unknown observable '" + t.text + "'", &t);
            return pr::measure(obs, qs, x, continuation());
        }
        if (GatePtr g = find_gate(t.text)) return pr::unitary(g, qs, continuation());
        if (t.text.rfind("sigma_", 0) == 0 && t.text.size() > 6) {
            // sigma_x[q].P: apply sigma_i for the received value i of x.
            std::string var = t.text.substr(6);
            ProcPtr body = continuation();
            ProcPtr out;
            for (int k = 0; k < 4; ++k) {
                GatePtr g = find_gate("sigma" + std::to_string(k));
                ProcPtr arm = pr::guard(ex::binary(ExprOp::Eq, ex::var(var), ex::num(k)),
                                        pr::unitary(g, qs, body));
                out = out ? pr::sum(out, arm) : arm;
            }
            return out;
        }
        if (find_observable(t.text)) fail("measurement '" + t.text + "' needs '; variable'", &t);
        fail("unknown gate '" + t.text + "'", &t);
    }

    GatePtr find_gate(const std::string &name) {
        auto it = file_.gates.find(name);
        if (it != file_.gates.end()) return it->second.gate;
        auto cached = builtin_gates_.find(name);
        if (cached != builtin_gates_.end()) return cached->second;
        const auto &b = gates::builtin();
        auto bi = b.find(name);
        if (bi == b.end()) return nullptr;
        auto g = std::make_shared<GateDef>(GateDef{name, bi->second});
        builtin_gates_[name] = g;
        return g;
    }

    ObservablePtr find_observable(const std::string &name) {
        auto it = file_.observables.find(name);
        if (it != file_.observables.end()) return it->second.observable;
        auto cached = builtin_obs_.find(name);
        if (cached != builtin_obs_.end()) return cached->second;
        const auto &b = observables::builtin();
        auto bi = b.find(name);
        if (bi == b.end()) return nullptr;
        auto o = std::make_shared<ObservableDef>(ObservableDef{name, bi->second});
        builtin_obs_[name] = o;
        return o;
    }

    // -- classical expressions
    ExprPtr expr() {
        ExprPtr e = conj();
        while (is_word("or")) {
            ++pos_;
            e = ex::binary(ExprOp::Or, e, conj());
        }
        return e;
    }

    ExprPtr conj() {
        ExprPtr e = negation();
        while (is_word("and")) {
            ++pos_;
            e = ex::binary(ExprOp::And, e, negation());
        }
        return e;
    }

    ExprPtr negation() {
        if (is_word("not")) {
            ++pos_;
            return ex::unary(ExprOp::Not, negation());
        }
        return comparison();
    }

    ExprPtr comparison() {
        ExprPtr l = arith();
        if (accept("=") || accept("==")) return ex::binary(ExprOp::Eq, l, arith());
        if (accept("!=")) return ex::unary(ExprOp::Not, ex::binary(ExprOp::Eq, l, arith()));
        if (accept("<=")) return ex::binary(ExprOp::Le, l, arith());
        if (accept(">=")) return ex::binary(ExprOp::Le, arith(), l);
        if (accept("<")) return ex::binary(ExprOp::Lt, l, arith());
        if (accept(">")) return ex::binary(ExprOp::Lt, arith(), l);
        return l;
    }

    ExprPtr arith() {
        ExprPtr e = term();
        for (;;) {
            if (accept("+")) {
                e = ex::binary(ExprOp::Add, e, term());
            } else if (accept("-")) {
                e = ex::binary(ExprOp::Sub, e, term());
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (accept("*")) e = ex::binary(ExprOp::Mul, e, unary());
        return e;
    }

    ExprPtr unary() {
        if (accept("-")) {
            if (peek().kind == Tok::Number) return ex::num(-next().number);
            return ex::unary(ExprOp::Neg, unary());
        }
        Token t = peek();
        if (t.kind == Tok::Number) {
            ++pos_;
            return ex::num(t.number);
        }
        if (accept("(")) {
            ExprPtr e = expr();
            expect(")", "to close the parenthesis");
            return e;
        }
        if (t.kind == Tok::Ident) {
            ++pos_;
            if (t.text == "true") return ex::boolean(true);
            if (t.text == "false") return ex::boolean(false);
            auto it = file_.params.find(t.text);
            if (it != file_.params.end()) {
                if (it->second.imag() != 0.0) fail("param '" + t.text + "' is not real", &t);
                return ex::num(it->second.real());
            }
            return ex::var(t.text);
        }
        fail("expected an expression, found " + describe(t));
    }

    void check_sort(const Expr &e, bool want_bool, const Token &at) const {
        bool ok = true;
        auto walk = [&](auto &&self, const Expr &n, bool boolean) -> void {
            if (n.is_boolean() != boolean && n.op != ExprOp::Var) ok = false;
            if (n.op == ExprOp::Var && boolean) ok = false;
            switch (n.op) {
                case ExprOp::And:
                case ExprOp::Or:
                    self(self, *n.lhs, true);
                    self(self, *n.rhs, true);
                    break;
                case ExprOp::Not:
                    self(self, *n.lhs, true);
                    break;
                case ExprOp::Add:
                case ExprOp::Sub:
                case ExprOp::Mul:
                case ExprOp::Eq:
                case ExprOp::Lt:
                case ExprOp::Le:
                    self(self, *n.lhs, false);
                    self(self, *n.rhs, false);
                    break;
                case ExprOp::Neg:
                    self(self, *n.lhs, false);
                    break;
                default:
                    break;
            }
        };
        walk(walk, e, want_bool);
        if (!ok) fail(want_bool ? "expected a boolean guard" : "expected an arithmetic expression", &at);
    }

    // -- matrix expressions
    Matrix mexpr() {
        Matrix m = mprod();
        for (;;) {
            Token at = peek();
            if (accept("+")) {
                m = madd(m, mprod(), 1.0, at);
            } else if (accept("-")) {
                m = madd(m, mprod(), -1.0, at);
            } else {
                return m;
            }
        }
    }

    Matrix madd(const Matrix &a, const Matrix &b, double sign, const Token &at) const {
        if (a.rows() != b.rows() || a.cols() != b.cols()) fail("dimension mismatch in sum", &at);
        return a + sign * b;
    }

    bool tensor_op() {
        if (accept("(x)")) return true;
        if (is_punct("(") && is_word("x", 1) && is_punct(")", 2)) {
            pos_ += 3;
            return true;
        }
        return false;
    }

    bool atom_start() const {
        const Token &t = peek();
        if (t.kind == Tok::Number || t.kind == Tok::Ket || t.kind == Tok::Bra) return true;
        if (t.kind == Tok::Ident) return !reserved(t.text);
        return is_punct("(") && !(is_word("x", 1) && is_punct(")", 2));
    }

    Matrix mprod() {
        Matrix m = mtensor();
        for (;;) {
            Token at = peek();
            if (accept("*")) {
                m = mmul(m, mtensor(), at);
            } else if (accept("/")) {
                Matrix d = mtensor();
                if (!is_scalar(d)) fail("can only divide by a scalar", &at);
                m = m / d(0, 0);
            } else if (atom_start()) {
                m = mmul(m, mtensor(), at);
            } else {
                return m;
            }
        }
    }

    Matrix mmul(const Matrix &a, const Matrix &b, const Token &at) const {
        if (is_scalar(a)) return a(0, 0) * b;
        if (is_scalar(b)) return b(0, 0) * a;
        if (a.cols() != b.rows()) fail("dimension mismatch in product", &at);
        return a * b;
    }

    Matrix mtensor() {
        Matrix m = munary();
        while (tensor_op()) m = tensor(m, munary());
        return m;
    }

    Matrix munary() {
        if (accept("-")) return -munary();
        return matom();
    }

    Matrix scalar(Complex c) const { return Matrix::Constant(1, 1, c); }

    Matrix matom() {
        Token t = peek();
        switch (t.kind) {
            case Tok::Number: {
                ++pos_;
                if (is_word("i") && peek().pos.line == t.pos.line &&
                    peek().pos.col == t.pos.col + static_cast<int>(t.text.size())) {
                    ++pos_;
                    return scalar(Complex(0.0, t.number));
                }
                return scalar(t.number);
            }
            case Tok::Ket:
                ++pos_;
                return ket_of(t.text);
            case Tok::Bra:
                ++pos_;
                return ket_of(t.text).adjoint();
            case Tok::Ident: {
                ++pos_;
                if (t.text == "i") return scalar(Complex(0.0, 1.0));
                if (t.text == "sqrt") {
                    expect("(", "after sqrt");
                    Matrix a = mexpr();
                    expect(")", "to close sqrt");
                    if (!is_scalar(a)) fail("sqrt takes a scalar", &t);
                    return scalar(std::sqrt(a(0, 0)));
                }
                auto p = file_.params.find(t.text);
                if (p != file_.params.end()) return scalar(p->second);
                if (GatePtr g = find_gate(t.text)) return g->matrix;
                fail("unknown name '" + t.text + "' in matrix expression", &t);
            }
            default:
                break;
        }
        if (accept("(")) {
            Matrix m = mexpr();
            expect(")", "to close the parenthesis");
            return m;
        }
        if (accept("[")) {
            std::vector<std::vector<Complex>> rows;
            do {
                expect("[", "to open a matrix row");
                std::vector<Complex> row;
                do {
                    Token at = peek();
                    Matrix v = mexpr();
                    if (!is_scalar(v)) fail("matrix entries must be scalars", &at);
                    row.push_back(v(0, 0));
                } while (accept(","));
                expect("]", "to close a matrix row");
                if (!rows.empty() && row.size() != rows[0].size()) fail("ragged matrix literal", &t);
                rows.push_back(std::move(row));
            } while (accept(","));
            expect("]", "to close the matrix literal");
            Matrix m(rows.size(), rows[0].size());
            for (size_t r = 0; r < rows.size(); ++r) {
                for (size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
            }
            return m;
        }
        fail("expected a matrix, ket or scalar, found " + describe(t));
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    SourceFile &file_;
    std::map<std::string, GatePtr> builtin_gates_;
    std::map<std::string, ObservablePtr> builtin_obs_;
};

}  // namespace

SourceFile parse(std::string_view text, const ParseOptions &options) {
    SourceFile file;
    Parser p(lex(text, &file.version), file);
    p.overrides = options.param_overrides;
    p.parse_file();
    for (const auto &[name, v] : options.param_overrides) {
        if (!file.params.count(name)) {
            throw Error(ErrorKind::Parse, "override for undeclared param '" + name + "'");
        }
    }
    return file;
}

ProcPtr parse_process(std::string_view text, const SourceFile &env) {
    SourceFile copy = env;
    Parser p(lex(text, nullptr), copy);
    return p.parse_single_process();
}

Matrix parse_matrix_expr(std::string_view text, const SourceFile &env) {
    SourceFile copy = env;
    Parser p(lex(text, nullptr), copy);
    return p.parse_single_matrix();
}

// ---------------------------------------------------------------------------
// Pretty printer

namespace {

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char *op_text(ExprOp op) {
    switch (op) {
        case ExprOp::Add:
            return "+";
        case ExprOp::Sub:
            return "-";
        case ExprOp::Mul:
            return "*";
        case ExprOp::Eq:
            return "=";
        case ExprOp::Lt:
            return "<";
        case ExprOp::Le:
            return "<=";
        case ExprOp::And:
            return "and";
        case ExprOp::Or:
            return "or";
        default:
            return "?";
    }
}

std::string join(const std::vector<std::string> &xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
    return out;
}

// Prefix bodies and operands of relabel/restrict bind at prefix level.
std::string print_tight(const Proc &p) {
    std::string s = pretty_print(p);
    if (p.kind == ProcKind::Relabel || p.kind == ProcKind::Restrict) return "(" + s + ")";
    return s;
}

}  // namespace

std::string pretty_print(const Expr &e) {
    switch (e.op) {
        case ExprOp::Number:
            return number(e.value);
        case ExprOp::Bool:
            return e.value != 0.0 ? "true" : "false";
        case ExprOp::Var:
            return e.name;
        case ExprOp::Neg:
            return "-(" + pretty_print(*e.lhs) + ")";
        case ExprOp::Not:
            return "not (" + pretty_print(*e.lhs) + ")";
        default:
            return "(" + pretty_print(*e.lhs) + " " + op_text(e.op) + " " + pretty_print(*e.rhs) + ")";
    }
}

std::string pretty_print(const Proc &p) {
    switch (p.kind) {
        case ProcKind::Nil:
            return "nil";
        case ProcKind::CInput:
        case ProcKind::QInput:
            return p.channel + "?" + p.var + "." + print_tight(*p.body);
        case ProcKind::COutput:
            return p.channel + "!" + pretty_print(*p.expr) + "." + print_tight(*p.body);
        case ProcKind::QOutput:
            return p.channel + "!" + p.var + "." + print_tight(*p.body);
        case ProcKind::QbitNew:
            return "qbit " + p.var + "." + print_tight(*p.body);
        case ProcKind::Unitary:
            return p.gate->name + "[" + join(p.qubits) + "]." + print_tight(*p.body);
        case ProcKind::Measure:
            return p.observable->name + "[" + join(p.qubits) + ";" + p.var + "]." + print_tight(*p.body);
        case ProcKind::Sum:
            return "(" + pretty_print(*p.body) + " + " + pretty_print(*p.other) + ")";
        case ProcKind::Parallel:
            return "(" + pretty_print(*p.body) + " || " + pretty_print(*p.other) + ")";
        case ProcKind::Relabel: {
            std::string s = print_tight(*p.body) + "[{";
            bool first = true;
            for (const auto &[a, b] : p.relabel) {
                s += (first ? "" : ", ") + a + "->" + b;
                first = false;
            }
            return s + "}]";
        }
        case ProcKind::Restrict: {
            std::string s = print_tight(*p.body) + " \\ {";
            bool first = true;
            for (const auto &c : p.restricted) {
                s += (first ? "" : ", ") + c;
                first = false;
            }
            return s + "}";
        }
        case ProcKind::If:
            return "if " + pretty_print(*p.expr) + " then " + print_tight(*p.body);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Elaboration

const Configuration &Elaborated::config(const std::string &name) const {
    for (const auto &c : configs) {
        if (c.name == name) return c.config;
    }
    throw Error(ErrorKind::UnknownVar, "no configuration named '" + name + "'");
}

Elaborated elaborate(const SourceFile &file) {
    Elaborated out;
    for (const auto &[name, g] : file.gates) {
        int n = -1;
        try {
            n = qubit_count(g.gate->matrix);
        } catch (const Error &) {
        }
        if (n < 1) throw SourceError(ErrorKind::Elaboration, g.pos, "gate '" + name + "' is not a 2^n x 2^n matrix");
        if (!is_unitary(g.gate->matrix)) {
            throw SourceError(ErrorKind::Elaboration, g.pos, "gate '" + name + "' is not unitary");
        }
    }
    for (const auto &[name, o] : file.observables) {
        const auto &terms = o.observable->spectrum.terms;
        Eigen::Index dim = terms.empty() ? 0 : terms[0].projector.rows();
        if (auto bad = validate_observable(o.observable->spectrum, dim)) {
            throw SourceError(ErrorKind::Elaboration, o.pos,
                              "observable '" + name + "' is invalid: " + bad->message);
        }
    }
    for (const auto &[name, ch] : file.channels) {
        if (!ch.quantum && !ch.domain.empty()) out.policy.classical_domains[name] = ch.domain;
    }
    for (const auto &cfg : file.configs) {
        std::vector<std::string> vars;
        Matrix rho = Matrix::Ones(1, 1);
        for (const auto &b : cfg.bindings) {
            Matrix s = b.state;
            Eigen::Index dim = Eigen::Index{1} << b.vars.size();
            if (s.cols() == 1) {
                if (s.rows() != dim) {
                    throw SourceError(ErrorKind::Elaboration, b.pos,
                                      "state has dimension " + std::to_string(s.rows()) + ", expected " +
                                          std::to_string(dim));
                }
                double norm = s.norm();
                if (std::abs(norm - 1.0) > kMatrixTol) {
                    throw SourceError(ErrorKind::Elaboration, b.pos,
                                      "ket is not normalized (norm " + number(norm) + ")");
                }
                s = s * s.adjoint();
            } else if (s.rows() != dim || s.cols() != dim) {
                throw SourceError(ErrorKind::Elaboration, b.pos, "state matrix has the wrong dimension");
            } else if (!is_density(s)) {
                throw SourceError(ErrorKind::Elaboration, b.pos, "state matrix is not a density matrix");
            }
            rho = tensor(rho, s);
            vars.insert(vars.end(), b.vars.begin(), b.vars.end());
        }
        try {
            QContext ctx(vars, rho);
            out.configs.push_back({cfg.name, make_configuration(cfg.proc, std::move(ctx))});
        } catch (const SourceError &) {
            throw;
        } catch (const Error &e) {
            throw SourceError(ErrorKind::Elaboration, cfg.pos,
                              "configuration '" + cfg.name + "': " + e.what());
        }
    }
    for (const auto &chk : file.checks) {
        for (const auto *n : {&chk.left, &chk.right}) {
            if (!file.find_config(*n)) {
                throw SourceError(ErrorKind::Elaboration, chk.pos, "unknown configuration '" + *n + "'");
            }
        }
    }
    out.checks = file.checks;
    return out;
}

}  // namespace qccs
