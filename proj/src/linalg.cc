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

#include "qccs/linalg.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qccs/error.h"

namespace qccs {

namespace {

[[noreturn]] void dimension_error(const std::string &what) {
    throw Error(ErrorKind::DimensionMismatch, what);
}

// Bit of qubit `pos` inside an n-qubit basis index.
inline size_t bit_of(size_t index, int pos, int n) {
    return (index >> (n - 1 - pos)) & 1u;
}

}  // namespace

Matrix tensor(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix mul(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        dimension_error("mul: inner dimensions differ");
    }
    return a * b;
}

Matrix add(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        dimension_error("add: shapes differ");
    }
    return a + b;
}

Matrix scale(Complex c, const Matrix &a) { return c * a; }

Matrix dagger(const Matrix &a) { return a.adjoint(); }

Complex trace(const Matrix &a) {
    if (a.rows() != a.cols()) {
        dimension_error("trace: matrix is not square");
    }
    return a.trace();
}

int qubit_count(const Matrix &m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        dimension_error("expected a square matrix");
    }
    int n = 0;
    Eigen::Index d = m.rows();
    while (d > 1) {
        if (d % 2 != 0) {
            dimension_error("matrix dimension is not a power of two");
        }
        d /= 2;
        ++n;
    }
    return n;
}

bool approx_equal(const Matrix &a, const Matrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (std::abs(a(i, j) - b(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool is_hermitian(const Matrix &m, double tol) {
    return m.rows() == m.cols() && approx_equal(m, m.adjoint(), tol);
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return approx_equal(m * m.adjoint(), Matrix::Identity(m.rows(), m.cols()), tol);
}

double min_eigenvalue(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool is_density(const Matrix &m, double tol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    if (std::abs(m.trace() - Complex(1.0)) > tol) {
        return false;
    }
    return min_eigenvalue(m) >= -tol;
}

Matrix partial_trace(const Matrix &rho, std::span<const int> keep) {
    int n = qubit_count(rho);
    std::vector<bool> kept(n, false);
    for (int k : keep) {
        if (k < 0 || k >= n) {
            throw Error(ErrorKind::BadIndex, "partial_trace: qubit index out of range");
        }
        if (kept[k]) {
            throw Error(ErrorKind::BadIndex, "partial_trace: qubit listed twice");
        }
        kept[k] = true;
    }
    std::vector<int> traced;
    for (int i = 0; i < n; ++i) {
        if (!kept[i]) {
            traced.push_back(i);
        }
    }
    int k = static_cast<int>(keep.size());
    size_t out_dim = size_t{1} << k;
    size_t env_dim = size_t{1} << traced.size();

    // Full index from (kept bits, traced bits).
    auto compose = [&](size_t kept_bits, size_t env_bits) {
        size_t idx = 0;
        for (int j = 0; j < k; ++j) {
            if ((kept_bits >> (k - 1 - j)) & 1u) {
                idx |= size_t{1} << (n - 1 - keep[j]);
            }
        }
        int t = static_cast<int>(traced.size());
        for (int j = 0; j < t; ++j) {
            if ((env_bits >> (t - 1 - j)) & 1u) {
                idx |= size_t{1} << (n - 1 - traced[j]);
            }
        }
        return idx;
    };

    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (size_t a = 0; a < out_dim; ++a) {
        for (size_t b = 0; b < out_dim; ++b) {
            Complex sum = 0;
            for (size_t e = 0; e < env_dim; ++e) {
                sum += rho(compose(a, e), compose(b, e));
            }
            out(a, b) = sum;
        }
    }
    return out;
}

Matrix permutation_op(std::span<const int> perm) {
    int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) {
            throw Error(ErrorKind::BadIndex, "permutation_op: not a bijection");
        }
        seen[p] = true;
    }
    size_t dim = size_t{1} << n;
    Matrix out = Matrix::Zero(dim, dim);
    for (size_t in = 0; in < dim; ++in) {
        size_t dst = 0;
        for (int i = 0; i < n; ++i) {
            if (bit_of(in, i, n)) {
                dst |= size_t{1} << (n - 1 - perm[i]);
            }
        }
        out(dst, in) = 1.0;
    }
    return out;
}

std::vector<int> head_permutation(std::span<const int> positions, int n) {
    std::vector<int> perm(n, -1);
    int next = 0;
    for (int p : positions) {
        perm[p] = next++;
    }
    for (int i = 0; i < n; ++i) {
        if (perm[i] < 0) {
            perm[i] = next++;
        }
    }
    return perm;
}

Matrix lift_operator(const Matrix &op, std::span<const int> positions, int n) {
    int k = qubit_count(op);
    if (k != static_cast<int>(positions.size())) {
        dimension_error("lift_operator: operator arity differs from position count");
    }
    if (k > n) {
        dimension_error("lift_operator: more positions than qubits");
    }
    std::vector<bool> used(n, false);
    for (int p : positions) {
        if (p < 0 || p >= n) {
            throw Error(ErrorKind::BadIndex, "lift_operator: position out of range");
        }
        if (used[p]) {
            throw Error(ErrorKind::DuplicatePosition, "lift_operator: position listed twice");
        }
        used[p] = true;
    }
    size_t mask = 0;
    for (int p : positions) {
        mask |= size_t{1} << (n - 1 - p);
    }
    auto local = [&](size_t index) {
        size_t v = 0;
        for (int j = 0; j < k; ++j) {
            v = (v << 1) | bit_of(index, positions[j], n);
        }
        return v;
    };
    size_t dim = size_t{1} << n;
    Matrix out = Matrix::Zero(dim, dim);
    for (size_t x = 0; x < dim; ++x) {
        size_t lx = local(x);
        for (size_t y = 0; y < dim; ++y) {
            if ((x & ~mask) != (y & ~mask)) {
                continue;
            }
            out(x, y) = op(lx, local(y));
        }
    }
    return out;
}

Matrix identity(int qubits) {
    size_t d = size_t{1} << qubits;
    return Matrix::Identity(d, d);
}

Matrix basis_ket(std::string_view bits) {
    size_t dim = size_t{1} << bits.size();
    Matrix out = Matrix::Zero(dim, 1);
    size_t idx = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::Precondition, "basis_ket: expected bits");
        }
        idx = (idx << 1) | (c == '1' ? 1u : 0u);
    }
    out(idx, 0) = 1.0;
    return out;
}

Matrix outer(const Vector &ket) { return ket * ket.adjoint(); }

int Observable::arity() const {
    if (terms.empty()) {
        return 0;
    }
    return qubit_count(terms.front().projector);
}

std::string_view defect_name(ObservableDefect d) {
    switch (d) {
        case ObservableDefect::Empty:
            return "empty";
        case ObservableDefect::DimensionMismatch:
            return "dimension";
        case ObservableDefect::NotHermitian:
            return "hermiticity";
        case ObservableDefect::NotIdempotent:
            return "idempotence";
        case ObservableDefect::NotOrthogonal:
            return "orthogonality";
        case ObservableDefect::Incomplete:
            return "completeness";
        case ObservableDefect::DuplicateEigenvalue:
            return "distinct eigenvalues";
    }
    return "unknown";
}

std::optional<ObservableViolation> validate_observable(const Observable &obs, Eigen::Index dim,
                                                       double tol) {
    auto fail = [](ObservableDefect d, size_t i, std::string msg) {
        return std::optional<ObservableViolation>(ObservableViolation{d, i, std::move(msg)});
    };
    if (obs.terms.empty()) {
        return fail(ObservableDefect::Empty, 0, "observable has no spectral terms");
    }
    for (size_t i = 0; i < obs.terms.size(); ++i) {
        const Matrix &p = obs.terms[i].projector;
        if (p.rows() != dim || p.cols() != dim) {
            return fail(ObservableDefect::DimensionMismatch, i, "projector has the wrong dimension");
        }
        if (!is_hermitian(p, tol)) {
            return fail(ObservableDefect::NotHermitian, i, "projector is not Hermitian");
        }
        if (!approx_equal(p * p, p, tol)) {
            return fail(ObservableDefect::NotIdempotent, i, "projector is not idempotent");
        }
        for (size_t j = 0; j < i; ++j) {
            if (obs.terms[j].eigenvalue == obs.terms[i].eigenvalue) {
                return fail(ObservableDefect::DuplicateEigenvalue, i, "eigenvalue repeated");
            }
        }
    }
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto &t : obs.terms) {
        sum += t.projector;
    }
    // Orthogonality first would also flag {P, P}; report it as completeness
    // when the projectors fail to resolve the identity.
    if (!approx_equal(sum, Matrix::Identity(dim, dim), tol)) {
        return fail(ObservableDefect::Incomplete, 0, "projectors do not sum to the identity");
    }
    for (size_t i = 0; i < obs.terms.size(); ++i) {
        for (size_t j = i + 1; j < obs.terms.size(); ++j) {
            if (!approx_equal(obs.terms[i].projector * obs.terms[j].projector,
                              Matrix::Zero(dim, dim), tol)) {
                return fail(ObservableDefect::NotOrthogonal, j, "projectors overlap");
            }
        }
    }
    return std::nullopt;
}

namespace gates {

Matrix hadamard() {
    Matrix h(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

Matrix sigma0() { return Matrix::Identity(2, 2); }

Matrix sigma1() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix sigma2() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix sigma3() {
    Matrix m(2, 2);
    const Complex i(0, 1);
    m << 0, i, -i, 0;
    return m;
}

Matrix cnot() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

const std::map<std::string, Matrix> &builtin() {
    static const std::map<std::string, Matrix> table = {
        {"H", hadamard()},       {"I", sigma0()},         {"X", sigma1()},
        {"Z", sigma2()},         {"Y", sigma3()},         {"CNOT", cnot()},
        {"sigma0", sigma0()},    {"sigma1", sigma1()},    {"sigma2", sigma2()},
        {"sigma3", sigma3()},
    };
    return table;
}

}  // namespace gates

namespace observables {

Observable computational() {
    return Observable{{{0.0, outer(basis_ket("0"))}, {1.0, outer(basis_ket("1"))}}};
}

Observable plus_minus() {
    Vector plus(2), minus(2);
    double s = 1.0 / std::sqrt(2.0);
    plus << s, s;
    minus << s, -s;
    return Observable{{{0.0, outer(plus)}, {1.0, outer(minus)}}};
}

const std::map<std::string, Observable> &builtin() {
    static const std::map<std::string, Observable> table = {
        {"M01", computational()},
        {"Mpm", plus_minus()},
    };
    return table;
}

}  // namespace observables

}  // namespace qccs
