#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"
#include "linalg.hpp"

namespace acmpc::lp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
}

int LinearProgram::add_variable(double cost, double lo, double hi) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return static_cast<int>(objective.size()) - 1;
}

void LinearProgram::add_eq(std::vector<std::pair<int, double>> terms, double rhs) {
    eq_rows.push_back({std::move(terms), rhs});
}

void LinearProgram::add_le(std::vector<std::pair<int, double>> terms, double rhs) {
    le_rows.push_back({std::move(terms), rhs});
}

void LinearProgram::validate() const {
    const int n = num_vars();
    auto check_row = [&](const Row& r) {
        if (!std::isfinite(r.rhs)) throw_invalid("LinearProgram: non-finite right-hand side");
        for (auto [j, a] : r.terms) {
            if (j < 0 || j >= n) throw_invalid("LinearProgram: row references unknown variable");
            if (!std::isfinite(a)) throw_invalid("LinearProgram: non-finite row coefficient");
        }
    };
    for (const auto& r : eq_rows) check_row(r);
    for (const auto& r : le_rows) check_row(r);
    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(objective[j])) throw_invalid("LinearProgram: non-finite objective");
        if (lower[j] > upper[j]) throw_invalid("LinearProgram: empty variable bound interval");
    }
}

namespace {

// Simplex working problem: all rows as equalities over structural columns,
// slacks, and artificials, with bounded columns.
struct Tableau {
    int m = 0;                  // rows
    int ncol = 0;               // total columns
    int n_struct = 0;
    int n_slack = 0;
    std::vector<std::vector<double>> col;  // dense columns, length m
    std::vector<double> rhs;
    std::vector<double> lo, hi;
    std::vector<double> cost;       // phase-2 cost
    std::vector<bool> artificial;
    std::vector<int> artificial_row;  // row an artificial belongs to, else -1
};

class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) { build(lp); }

    Solution run(const LinearProgram& lp, double tol, int max_iterations);

private:
    Tableau t_;
    std::vector<int> basis_;          // basic column per row
    std::vector<double> xb_;          // basic values
    std::vector<bool> is_basic_;
    std::vector<bool> at_upper_;      // nonbasic at upper bound
    linalg::Matrix binv_;
    int iterations_ = 0;
    int pivots_since_refactor_ = 0;
    int stall_count_ = 0;

    void build(const LinearProgram& lp);
    double nonbasic_value(int j) const {
        if (std::isfinite(t_.lo[j])) return at_upper_[j] && std::isfinite(t_.hi[j]) ? t_.hi[j] : t_.lo[j];
        if (std::isfinite(t_.hi[j])) return t_.hi[j];
        return 0.0;
    }
    void refactorize();
    void compute_xb();
    std::vector<double> duals(const std::vector<double>& cost) const;
    double phase_objective(const std::vector<double>& cost) const;
    // Returns false when optimal for the given cost vector.
    bool iterate(const std::vector<double>& cost, double tol, bool* unbounded);
};

void Simplex::build(const LinearProgram& lp) {
    const int n = lp.num_vars();
    const int me = static_cast<int>(lp.eq_rows.size());
    const int ml = static_cast<int>(lp.le_rows.size());
    t_.m = me + ml;
    t_.n_struct = n;
    t_.n_slack = ml;
    t_.ncol = n + ml;  // artificials appended later
    t_.col.assign(t_.ncol, std::vector<double>(t_.m, 0.0));
    t_.rhs.assign(t_.m, 0.0);
    t_.lo = lp.lower;
    t_.hi = lp.upper;
    t_.cost = lp.objective;
    t_.artificial.assign(t_.ncol, false);
    t_.artificial_row.assign(t_.ncol, -1);

    for (int i = 0; i < me; ++i) {
        for (auto [j, a] : lp.eq_rows[i].terms) t_.col[j][i] += a;
        t_.rhs[i] = lp.eq_rows[i].rhs;
    }
    for (int i = 0; i < ml; ++i) {
        const int row = me + i;
        for (auto [j, a] : lp.le_rows[i].terms) t_.col[j][row] += a;
        t_.rhs[row] = lp.le_rows[i].rhs;
        t_.col[n + i][row] = 1.0;  // slack
        t_.lo.push_back(0.0);
        t_.hi.push_back(kInf);
        t_.cost.push_back(0.0);
    }
}

void Simplex::refactorize() {
    const int m = t_.m;
    linalg::Matrix b(m, m);
    for (int i = 0; i < m; ++i)
        for (int r = 0; r < m; ++r) b.at(r, i) = t_.col[basis_[i]][r];
    // Invert by Gauss-Jordan with partial pivoting.
    linalg::Matrix inv(m, m);
    for (int i = 0; i < m; ++i) inv.at(i, i) = 1.0;
    for (int k = 0; k < m; ++k) {
        int p = k;
        for (int i = k + 1; i < m; ++i)
            if (std::fabs(b.at(i, k)) > std::fabs(b.at(p, k))) p = i;
        if (std::fabs(b.at(p, k)) < 1e-13) throw_numeric("lp: basis matrix is singular");
        if (p != k)
            for (int j = 0; j < m; ++j) {
                std::swap(b.at(p, j), b.at(k, j));
                std::swap(inv.at(p, j), inv.at(k, j));
            }
        const double d = b.at(k, k);
        for (int j = 0; j < m; ++j) {
            b.at(k, j) /= d;
            inv.at(k, j) /= d;
        }
        for (int i = 0; i < m; ++i) {
            if (i == k) continue;
            const double f = b.at(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < m; ++j) {
                b.at(i, j) -= f * b.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    binv_ = std::move(inv);
    pivots_since_refactor_ = 0;
    compute_xb();
}

void Simplex::compute_xb() {
    const int m = t_.m;
    std::vector<double> r = t_.rhs;
    for (int j = 0; j < t_.ncol; ++j) {
        if (is_basic_[j]) continue;
        const double v = nonbasic_value(j);
        if (v == 0.0) continue;
        for (int i = 0; i < m; ++i) r[i] -= t_.col[j][i] * v;
    }
    xb_.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += binv_.at(i, k) * r[k];
        xb_[i] = s;
    }
}

std::vector<double> Simplex::duals(const std::vector<double>& cost) const {
    const int m = t_.m;
    std::vector<double> y(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (int j = 0; j < m; ++j) y[j] += cb * binv_.at(i, j);
    }
    return y;
}

double Simplex::phase_objective(const std::vector<double>& cost) const {
    double obj = 0.0;
    for (int i = 0; i < t_.m; ++i) obj += cost[basis_[i]] * xb_[i];
    for (int j = 0; j < t_.ncol; ++j)
        if (!is_basic_[j] && cost[j] != 0.0) obj += cost[j] * nonbasic_value(j);
    return obj;
}

bool Simplex::iterate(const std::vector<double>& cost, double tol, bool* unbounded) {
    *unbounded = false;
    const int m = t_.m;
    const auto y = duals(cost);

    const bool bland = stall_count_ > 200;
    int enter = -1;
    double enter_sigma = 1.0;
    double best_score = tol;
    for (int j = 0; j < t_.ncol; ++j) {
        if (is_basic_[j]) continue;
        if (t_.lo[j] == t_.hi[j]) continue;  // fixed column (retired artificial)
        double d = cost[j];
        for (int i = 0; i < m; ++i) d -= y[i] * t_.col[j][i];
        const bool upper = at_upper_[j] && std::isfinite(t_.hi[j]);
        const bool free_var = !std::isfinite(t_.lo[j]) && !std::isfinite(t_.hi[j]);
        double score = 0.0;
        double sigma = 1.0;
        if (free_var) {
            score = std::fabs(d);
            sigma = d > 0 ? -1.0 : 1.0;
        } else if (!upper && d < 0) {
            score = -d;
            sigma = 1.0;
        } else if (upper && d > 0) {
            score = d;
            sigma = -1.0;
        }
        if (score > best_score) {
            enter = j;
            enter_sigma = sigma;
            best_score = score;
            if (bland) break;  // first eligible index
        }
    }
    if (enter < 0) return false;  // optimal

    // Direction of basic values as the entering variable moves by +t*sigma.
    std::vector<double> w(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += binv_.at(i, k) * t_.col[enter][k];
        w[i] = s;
    }

    double t_limit = kInf;  // bound-flip distance for the entering column
    if (std::isfinite(t_.lo[enter]) && std::isfinite(t_.hi[enter]))
        t_limit = t_.hi[enter] - t_.lo[enter];
    int leave = -1;          // row index of leaving basic
    bool leave_at_upper = false;
    double best_t = t_limit;

    for (int i = 0; i < m; ++i) {
        const double delta = enter_sigma * w[i];  // xB_i moves by -delta * t
        const int bj = basis_[i];
        if (delta > kPivotTol) {
            if (!std::isfinite(t_.lo[bj])) continue;
            const double ti = (xb_[i] - t_.lo[bj]) / delta;
            if (ti < best_t - 1e-12 ||
                (ti < best_t + 1e-12 && (leave < 0 || std::fabs(w[i]) > std::fabs(w[leave])))) {
                best_t = std::max(0.0, ti);
                leave = i;
                leave_at_upper = false;
            }
        } else if (delta < -kPivotTol) {
            if (!std::isfinite(t_.hi[bj])) continue;
            const double ti = (t_.hi[bj] - xb_[i]) / (-delta);
            if (ti < best_t - 1e-12 ||
                (ti < best_t + 1e-12 && (leave < 0 || std::fabs(w[i]) > std::fabs(w[leave])))) {
                best_t = std::max(0.0, ti);
                leave = i;
                leave_at_upper = true;
            }
        }
    }

    if (!std::isfinite(best_t)) {
        *unbounded = true;
        return true;
    }

    stall_count_ = best_t * best_score < 1e-13 ? stall_count_ + 1 : 0;

    if (leave < 0) {
        // Bound flip: the entering variable runs to its opposite bound.
        for (int i = 0; i < m; ++i) xb_[i] -= enter_sigma * w[i] * best_t;
        at_upper_[enter] = !at_upper_[enter];
        return true;
    }

    // Pivot enter into the basis at row `leave`.
    const double x_enter = nonbasic_value(enter) + enter_sigma * best_t;
    const int leaving_col = basis_[leave];
    for (int i = 0; i < m; ++i)
        if (i != leave) xb_[i] -= enter_sigma * w[i] * best_t;

    const double piv = w[leave];
    if (std::fabs(piv) < kPivotTol) throw_numeric("lp: pivot element vanished");
    for (int j = 0; j < m; ++j) binv_.at(leave, j) /= piv;
    for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        const double f = w[i];
        if (f == 0.0) continue;
        for (int j = 0; j < m; ++j) binv_.at(i, j) -= f * binv_.at(leave, j);
    }

    basis_[leave] = enter;
    is_basic_[enter] = true;
    at_upper_[enter] = false;
    xb_[leave] = x_enter;
    is_basic_[leaving_col] = false;
    at_upper_[leaving_col] = leave_at_upper;

    if (++pivots_since_refactor_ >= 64) refactorize();
    return true;
}

Solution Simplex::run(const LinearProgram& lp, double tol, int max_iterations) {
    const int m = t_.m;
    Solution sol;

    // Initial point: nonbasics at their nearest finite bound.
    is_basic_.assign(t_.ncol, false);
    at_upper_.assign(t_.ncol, false);
    for (int j = 0; j < t_.ncol; ++j)
        if (!std::isfinite(t_.lo[j]) && std::isfinite(t_.hi[j])) at_upper_[j] = true;

    // Residuals decide which rows need an artificial and which can start
    // with their slack basic.
    std::vector<double> resid = t_.rhs;
    for (int j = 0; j < t_.ncol; ++j) {
        const double v = nonbasic_value(j);
        if (v == 0.0) continue;
        for (int i = 0; i < m; ++i) resid[i] -= t_.col[j][i] * v;
    }

    const int me = static_cast<int>(lp.eq_rows.size());
    basis_.assign(m, -1);
    std::vector<double> phase1_cost(t_.ncol, 0.0);
    for (int i = 0; i < m; ++i) {
        const bool is_le = i >= me;
        const int slack = is_le ? t_.n_struct + (i - me) : -1;
        if (is_le && resid[i] >= 0.0) {
            basis_[i] = slack;
            is_basic_[slack] = true;
            continue;
        }
        // Artificial column with a sign matching the residual.
        t_.col.emplace_back(m, 0.0);
        t_.col.back()[i] = resid[i] >= 0.0 ? 1.0 : -1.0;
        t_.lo.push_back(0.0);
        t_.hi.push_back(kInf);
        t_.cost.push_back(0.0);
        t_.artificial.push_back(true);
        t_.artificial_row.push_back(i);
        phase1_cost.push_back(1.0);
        is_basic_.push_back(true);
        at_upper_.push_back(false);
        basis_[i] = t_.ncol;
        ++t_.ncol;
    }
    refactorize();

    const double rhs_scale = [&] {
        double s = 1.0;
        for (double b : t_.rhs) s = std::max(s, std::fabs(b));
        return s;
    }();

    // Phase 1: drive the artificials to zero.
    bool have_artificials = false;
    for (int j = 0; j < t_.ncol; ++j) have_artificials = have_artificials || t_.artificial[j];
    if (have_artificials) {
        bool unbounded = false;
        stall_count_ = 0;
        while (iterate(phase1_cost, tol * 1e-2, &unbounded)) {
            if (unbounded) throw_numeric("lp: phase 1 reported unbounded");
            if (++iterations_ > max_iterations) {
                sol.status = SolveStatus::IterationLimit;
                sol.iterations = iterations_;
                return sol;
            }
        }
        const double infeas = phase_objective(phase1_cost);
        if (infeas > tol * rhs_scale) {
            sol.status = SolveStatus::Infeasible;
            sol.iterations = iterations_;
            // Report the worst-satisfied row.
            double worst = 0.0;
            for (int i = 0; i < m; ++i) {
                const int bj = basis_[i];
                if (bj < static_cast<int>(t_.artificial.size()) && t_.artificial[bj] &&
                    xb_[i] > worst) {
                    worst = xb_[i];
                    const int row = t_.artificial_row[bj];
                    sol.infeasible_row_is_eq = row < me;
                    sol.infeasible_row = row < me ? row : row - me;
                }
            }
            return sol;
        }
        // Retire artificials: freeze them at zero.
        for (int j = 0; j < t_.ncol; ++j)
            if (t_.artificial[j]) {
                t_.lo[j] = 0.0;
                t_.hi[j] = 0.0;
            }
    }

    // Phase 2.
    stall_count_ = 0;
    bool unbounded = false;
    while (iterate(t_.cost, tol * 1e-2, &unbounded)) {
        if (unbounded) {
            sol.status = SolveStatus::Unbounded;
            sol.iterations = iterations_;
            return sol;
        }
        if (++iterations_ > max_iterations) {
            sol.status = SolveStatus::IterationLimit;
            sol.iterations = iterations_;
            return sol;
        }
    }
    refactorize();  // clean basis inverse before extraction

    // Extract the structural solution.
    std::vector<double> xfull(t_.ncol, 0.0);
    for (int j = 0; j < t_.ncol; ++j)
        if (!is_basic_[j]) xfull[j] = nonbasic_value(j);
    for (int i = 0; i < m; ++i) xfull[basis_[i]] = xb_[i];

    sol.x.assign(xfull.begin(), xfull.begin() + t_.n_struct);
    sol.objective = 0.0;
    for (int j = 0; j < t_.n_struct; ++j) sol.objective += lp.objective[j] * sol.x[j];

    // Primal residuals over the original rows and bounds.
    double worst = 0.0;
    auto row_value = [&](const LinearProgram::Row& r) {
        double s = 0.0;
        for (auto [j, a] : r.terms) s += a * sol.x[j];
        return s;
    };
    for (const auto& r : lp.eq_rows) worst = std::max(worst, std::fabs(row_value(r) - r.rhs));
    for (const auto& r : lp.le_rows) worst = std::max(worst, row_value(r) - r.rhs);
    for (int j = 0; j < lp.num_vars(); ++j) {
        if (std::isfinite(lp.lower[j])) worst = std::max(worst, lp.lower[j] - sol.x[j]);
        if (std::isfinite(lp.upper[j])) worst = std::max(worst, sol.x[j] - lp.upper[j]);
    }
    sol.max_primal_residual = worst;

    // Duals and the duality gap. The dual objective for a bounded-variable
    // program is y'b plus the reduced costs paid at whichever finite bound
    // each nonbasic variable sits on.
    const auto y = duals(t_.cost);
    sol.dual_eq.assign(y.begin(), y.begin() + me);
    sol.dual_le.assign(y.begin() + me, y.end());
    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) dual_obj += y[i] * t_.rhs[i];
    for (int j = 0; j < t_.ncol; ++j) {
        if (is_basic_[j] || t_.artificial[j]) continue;
        double d = t_.cost[j];
        for (int i = 0; i < m; ++i) d -= y[i] * t_.col[j][i];
        const double v = xfull[j];
        if (v != 0.0) dual_obj += d * v;
    }
    sol.duality_gap = std::fabs(sol.objective - dual_obj) / (1.0 + std::fabs(sol.objective));

    sol.iterations = iterations_;
    if (sol.max_primal_residual > tol * std::max(1.0, rhs_scale) || sol.duality_gap > tol) {
        throw_numeric("lp: optimality certificate failed (residual=" +
                      std::to_string(sol.max_primal_residual) +
                      ", gap=" + std::to_string(sol.duality_gap) + ")");
    }
    sol.status = SolveStatus::Optimal;
    return sol;
}

}  // namespace

Solution solve(const LinearProgram& lp, double tol, int max_iterations) {
    lp.validate();
    if (lp.num_vars() == 0) throw_invalid("lp: no variables");
    Simplex s(lp);
    return s.run(lp, tol, max_iterations);
}

}  // namespace acmpc::lp
