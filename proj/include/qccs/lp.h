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

#ifndef QCCS_LP_H
#define QCCS_LP_H

#include <optional>
#include <string>
#include <vector>

namespace qccs {

inline constexpr double kLpTol = 1e-7;

/// min c.x subject to A x = b, x >= 0. Rows are sparse (index, coefficient)
/// lists; variables are created with add_variable.
class LinearProgram {
   public:
    int add_variable(std::string name = {});
    void add_constraint(std::vector<std::pair<int, double>> row, double rhs);
    void set_objective(std::vector<std::pair<int, double>> coeffs);

    int num_variables() const { return static_cast<int>(names_.size()); }
    int num_constraints() const { return static_cast<int>(rows_.size()); }
    const std::string &name(int var) const { return names_[var]; }

    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        double rhs;
    };
    const std::vector<Row> &rows() const { return rows_; }
    const std::vector<std::pair<int, double>> &objective() const { return objective_; }

    /// Largest constraint violation of x (including negativity).
    double violation(const std::vector<double> &x) const;

   private:
    std::vector<std::string> names_;
    std::vector<Row> rows_;
    std::vector<std::pair<int, double>> objective_;
};

struct LpResult {
    bool feasible = false;
    std::vector<double> x;  // witness when feasible
    double infeasibility = 0.0;  // phase-1 optimum (sum of artificials)
    int pivots = 0;
    bool near_tie = false;  // infeasibility within (tol, 10 tol]
    /// Rows in the final phase-1 basis; a rough size of the certificate.
    int certificate_size = 0;
};

/// Phase-1 simplex (Bland's rule), then phase 2 if an objective is set.
/// Throws NumericalFailure when the pivot cap is hit or a witness does not
/// re-verify within tol.
LpResult solve(const LinearProgram &lp, double tol = kLpTol, int max_pivots = 200000);

struct HullResult {
    bool member = false;
    std::vector<double> weights;
    bool near_tie = false;
    int certificate_size = 0;
};

/// Decides whether target is a convex combination of points.
HullResult convex_hull_member(const std::vector<std::vector<double>> &points,
                              const std::vector<double> &target, double tol = kLpTol);

}  // namespace qccs

#endif
