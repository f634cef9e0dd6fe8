#pragma once

#include <utility>
#include <vector>

namespace acmpc::lp {

// Dense linear program in the form
//   min c'x  s.t.  A_eq x = b_eq,  A_le x <= b_le,  lower <= x <= upper
// Bounds may be +-inf. Problem sizes here stay small (a few hundred
// variables), so everything is dense.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<double> lower, upper;

    struct Row {
        std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
        double rhs = 0;
    };
    std::vector<Row> eq_rows;
    std::vector<Row> le_rows;

    int add_variable(double cost, double lo, double hi);
    void add_eq(std::vector<std::pair<int, double>> terms, double rhs);
    void add_le(std::vector<std::pair<int, double>> terms, double rhs);

    int num_vars() const { return static_cast<int>(objective.size()); }
    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct Solution {
    SolveStatus status = SolveStatus::IterationLimit;
    std::vector<double> x;   // structural variable values
    double objective = 0;

    // Certification, filled for Optimal solutions: worst primal violation
    // across rows and bounds, and the relative duality gap.
    double max_primal_residual = 0;
    double duality_gap = 0;
    std::vector<double> dual_eq;  // row duals, equality rows
    std::vector<double> dual_le;  // row duals, inequality rows

    // For Infeasible verdicts: the original row that phase 1 could not
    // satisfy (index into eq_rows or le_rows).
    int infeasible_row = -1;
    bool infeasible_row_is_eq = false;

    int iterations = 0;
};

// Two-phase primal simplex with bounded variables, explicit dense basis
// inverse, periodic refactorization, and Bland's rule as an anti-cycling
// fallback. Optimal solutions are certified: primal feasibility residuals
// and the duality gap are checked against `tol` (relative).
Solution solve(const LinearProgram& lp, double tol = 1e-7, int max_iterations = 50000);

}  // namespace acmpc::lp
