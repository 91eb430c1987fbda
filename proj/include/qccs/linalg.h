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

#ifndef QCCS_LINALG_H
#define QCCS_LINALG_H

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qccs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default absolute entrywise tolerance for matrix comparisons.
inline constexpr double kMatrixTol = 1e-9;

// Qubit ordering convention: position 0 is the leftmost tensor factor, i.e.
// the most significant bit of a basis index. A context "r, q = |0><0| (x) rho"
// therefore stores r at position 0.

Matrix tensor(const Matrix &a, const Matrix &b);
Matrix mul(const Matrix &a, const Matrix &b);
Matrix add(const Matrix &a, const Matrix &b);
Matrix scale(Complex c, const Matrix &a);
Matrix dagger(const Matrix &a);
Complex trace(const Matrix &a);

/// Number of qubits n of a square 2^n x 2^n matrix. Throws DimensionMismatch
/// for anything else.
int qubit_count(const Matrix &m);

bool approx_equal(const Matrix &a, const Matrix &b, double tol = kMatrixTol);
bool is_hermitian(const Matrix &m, double tol = kMatrixTol);
bool is_unitary(const Matrix &m, double tol = kMatrixTol);
/// Hermitian, trace one, and smallest eigenvalue >= -tol.
bool is_density(const Matrix &m, double tol = kMatrixTol);
double min_eigenvalue(const Matrix &hermitian);

/// Density matrix of the kept qubits, listed in the order given by `keep`.
Matrix partial_trace(const Matrix &rho, std::span<const int> keep);

/// Unitary that moves the tensor factor at position i to position perm[i].
Matrix permutation_op(std::span<const int> perm);

/// The 2^n x 2^n operator that acts as `op` on the qubits at `positions`
/// (first listed position = most significant qubit of `op`) and as the
/// identity elsewhere.
Matrix lift_operator(const Matrix &op, std::span<const int> positions, int n);

/// Permutation placing `positions` at the head (in listed order) followed by
/// the remaining positions in ascending order. Suitable for permutation_op.
std::vector<int> head_permutation(std::span<const int> positions, int n);

Matrix identity(int qubits);
Matrix basis_ket(std::string_view bits);
Matrix outer(const Vector &ket);

struct SpectralTerm {
    double eigenvalue;
    Matrix projector;
};

/// A projective measurement supplied in spectral form M = sum_i l_i P_i.
struct Observable {
    std::vector<SpectralTerm> terms;

    int arity() const;
};

enum class ObservableDefect {
    Empty,
    DimensionMismatch,
    NotHermitian,
    NotIdempotent,
    NotOrthogonal,
    Incomplete,
    DuplicateEigenvalue,
};

struct ObservableViolation {
    ObservableDefect defect;
    size_t index;
    std::string message;
};

std::optional<ObservableViolation> validate_observable(
    const Observable &obs, Eigen::Index dim, double tol = kMatrixTol);

std::string_view defect_name(ObservableDefect d);

namespace gates {

Matrix hadamard();
Matrix sigma0();
Matrix sigma1();
Matrix sigma2();
Matrix sigma3();
Matrix cnot();

/// Gates available without declaration: H, I, X, Z, Y, CNOT, sigma0..sigma3.
/// X, Z, Y are sigma1, sigma2, sigma3 in the teleportation numbering, so
/// Y = [[0, i], [-i, 0]].
const std::map<std::string, Matrix> &builtin();

}  // namespace gates

namespace observables {

/// 0|0><0| + 1|1><1|
Observable computational();
/// 0|+><+| + 1|-><-|
Observable plus_minus();

/// M01 and Mpm.
const std::map<std::string, Observable> &builtin();

}  // namespace observables

}  // namespace qccs

#endif
