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

#include "qccs/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qccs/error.h"

namespace qccs {

int LinearProgram::add_variable(std::string name) {
    if (name.empty()) name = "x" + std::to_string(names_.size());
    names_.push_back(std::move(name));
    return static_cast<int>(names_.size()) - 1;
}

void LinearProgram::add_constraint(std::vector<std::pair<int, double>> row, double rhs) {
    for (const auto &[v, c] : row) {
        if (v < 0 || v >= num_variables() || !std::isfinite(c)) {
            throw Error(ErrorKind::Precondition, "bad constraint coefficient");
        }
    }
    if (!std::isfinite(rhs)) throw Error(ErrorKind::Precondition, "non-finite right-hand side");
    rows_.push_back({std::move(row), rhs});
}

void LinearProgram::set_objective(std::vector<std::pair<int, double>> coeffs) {
    objective_ = std::move(coeffs);
}

double LinearProgram::violation(const std::vector<double> &x) const {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, -v);
    for (const auto &r : rows_) {
        double s = 0.0;
        for (const auto &[v, c] : r.coeffs) s += c * x[v];
        worst = std::max(worst, std::abs(s - r.rhs));
    }
    return worst;
}

namespace {

constexpr double kPivotEps = 1e-11;

// Dense tableau: m constraint rows plus the objective row at index m. The
// last column is the right-hand side.
struct Tableau {
    int m, cols;
    std::vector<double> a;
    std::vector<int> basis;

    double &at(int r, int c) { return a[static_cast<size_t>(r) * (cols + 1) + c]; }
    double &rhs(int r) { return at(r, cols); }

    void pivot(int pr, int pc) {
        double inv = 1.0 / at(pr, pc);
        for (int c = 0; c <= cols; ++c) at(pr, c) *= inv;
        at(pr, pc) = 1.0;
        for (int r = 0; r <= m; ++r) {
            if (r == pr) continue;
            double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        basis[pr] = pc;
    }

    // Minimizes the objective row; columns >= allowed are never entered.
    // Returns false if unbounded.
    bool run(int allowed, int &pivots, int max_pivots) {
        for (;;) {
            int enter = -1;
            for (int c = 0; c < allowed; ++c) {
                if (at(m, c) < -kPivotEps) {
                    enter = c;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                double v = at(r, enter);
                if (v <= kPivotEps) continue;
                double ratio = rhs(r) / v;
                if (ratio < best - 1e-14 ||
                    (ratio <= best + 1e-14 && leave >= 0 && basis[r] < basis[leave])) {
                    best = std::min(best, ratio);
                    leave = r;
                }
            }
            if (leave < 0) return false;
            if (++pivots > max_pivots) {
                throw Error(ErrorKind::NumericalFailure,
                            "simplex pivot limit reached (" + std::to_string(max_pivots) + ")");
            }
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpResult solve(const LinearProgram &lp, double tol, int max_pivots) {
    const int n = lp.num_variables();
    const int m = lp.num_constraints();
    Tableau t{m, n + m, {}, {}};
    t.a.assign(static_cast<size_t>(m + 1) * (n + m + 1), 0.0);
    t.basis.resize(m);
    for (int r = 0; r < m; ++r) {
        const auto &row = lp.rows()[r];
        double sign = row.rhs < 0 ? -1.0 : 1.0;
        for (const auto &[v, c] : row.coeffs) t.at(r, v) += sign * c;
        t.rhs(r) = sign * row.rhs;
        t.at(r, n + r) = 1.0;
        t.basis[r] = n + r;
    }
    // Phase-1 objective: sum of artificials, expressed in nonbasic terms.
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c) t.at(m, c) -= t.at(r, c);
        t.rhs(m) -= t.rhs(r);
    }

    LpResult res;
    t.run(n, res.pivots, max_pivots);
    res.infeasibility = std::max(0.0, -t.rhs(m));
    for (int r = 0; r < m; ++r) {
        double dual = 1.0 - t.at(m, n + r);
        if (std::abs(dual) > 1e-9) ++res.certificate_size;
    }
    res.near_tie = res.infeasibility > tol && res.infeasibility <= 10 * tol;
    if (res.infeasibility > tol) {
        return res;
    }

    // Drive remaining artificials out where a structural column can replace them.
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < n) continue;
        for (int c = 0; c < n; ++c) {
            if (std::abs(t.at(r, c)) > 1e-9) {
                t.pivot(r, c);
                break;
            }
        }
    }

    if (!lp.objective().empty()) {
        for (int c = 0; c <= t.cols; ++c) t.at(m, c) = 0.0;
        for (const auto &[v, c] : lp.objective()) t.at(m, v) += c;
        for (int r = 0; r < m; ++r) {
            int b = t.basis[r];
            double f = t.at(m, b);
            if (f == 0.0) continue;
            for (int c = 0; c <= t.cols; ++c) t.at(m, c) -= f * t.at(r, c);
        }
        t.run(n, res.pivots, max_pivots);  // unbounded: keep the current vertex
    }

    res.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] < n) res.x[t.basis[r]] = std::max(0.0, t.rhs(r));
    }
    double viol = lp.violation(res.x);
    if (viol > tol) {
        throw Error(ErrorKind::NumericalFailure,
                    "simplex witness fails re-verification (residual " + std::to_string(viol) + ")");
    }
    res.feasible = true;
    return res;
}

HullResult convex_hull_member(const std::vector<std::vector<double>> &points,
                              const std::vector<double> &target, double tol) {
    HullResult out;
    if (points.empty()) return out;
    const size_t dim = target.size();
    for (const auto &p : points) {
        if (p.size() != dim) {
            throw Error(ErrorKind::DimensionMismatch, "hull point dimension differs from target");
        }
    }
    LinearProgram lp;
    for (size_t i = 0; i < points.size(); ++i) lp.add_variable("w" + std::to_string(i));
    std::vector<std::pair<int, double>> sum;
    for (size_t i = 0; i < points.size(); ++i) sum.push_back({static_cast<int>(i), 1.0});
    lp.add_constraint(std::move(sum), 1.0);
    for (size_t d = 0; d < dim; ++d) {
        std::vector<std::pair<int, double>> row;
        for (size_t i = 0; i < points.size(); ++i) {
            if (points[i][d] != 0.0) row.push_back({static_cast<int>(i), points[i][d]});
        }
        lp.add_constraint(std::move(row), target[d]);
    }
    LpResult r = solve(lp, tol);
    out.member = r.feasible;
    out.weights = std::move(r.x);
    out.near_tie = r.near_tie;
    out.certificate_size = r.certificate_size;
    return out;
}

}  // namespace qccs
