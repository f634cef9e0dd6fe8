#pragma once

#include <cstddef>
#include <vector>

namespace acmpc::linalg {

// Minimal dense row-major matrix. Sizes in this project stay small
// (regressors with a handful of columns, kernel matrices up to ~1000).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct LeastSquaresResult {
    std::vector<double> coeffs;
    std::vector<double> residuals;      // y - X beta, per row
    std::size_t rank = 0;
    std::vector<std::size_t> dependent_columns;  // columns found collinear (empty if full rank)
};

// Ordinary least squares via Householder QR with column pivoting.
// Columns whose pivot falls below rank_tol * |largest pivot| are reported
// as dependent and the fit is computed on the independent subset.
LeastSquaresResult least_squares(const Matrix& x, const std::vector<double>& y,
                                 double rank_tol = 1e-10);

// In-place Cholesky factorization of a symmetric positive definite matrix
// (lower triangle). Returns false if a non-positive pivot is met.
bool cholesky(Matrix& m);

// Solve L L^T x = b given the factor produced by cholesky().
std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b);

// Solve a general square system by Gaussian elimination with partial
// pivoting. Returns false if the matrix is singular to working precision.
bool solve_square(Matrix a, std::vector<double> b, std::vector<double>& x);

}  // namespace acmpc::linalg
