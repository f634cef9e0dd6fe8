#include "linalg.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace acmpc::linalg {

LeastSquaresResult least_squares(const Matrix& x, const std::vector<double>& y,
                                 double rank_tol) {
    const std::size_t m = x.rows;
    const std::size_t n = x.cols;
    if (y.size() != m) throw_invalid("least_squares: row count mismatch between X and y");
    if (m < n) throw_data("least_squares: fewer rows than columns");

    // Working copies; QR with column pivoting on R.
    Matrix r = x;
    std::vector<double> qty = y;
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 0; j < n; ++j) perm[j] = j;

    std::vector<double> col_norm(n);
    auto update_norms = [&](std::size_t from_row) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = from_row; i < m; ++i) s += r.at(i, j) * r.at(i, j);
            col_norm[j] = s;
        }
    };
    update_norms(0);

    std::size_t rank = 0;
    double max_pivot = 0.0;
    std::vector<std::size_t> dependent;

    const std::size_t kmax = std::min(m, n);
    for (std::size_t k = 0; k < kmax; ++k) {
        // Pivot: bring the column with the largest remaining norm to position k.
        std::size_t best = k;
        for (std::size_t j = k + 1; j < n; ++j)
            if (col_norm[perm[j]] > col_norm[perm[best]]) best = j;
        std::swap(perm[k], perm[best]);

        const std::size_t pc = perm[k];
        double norm = std::sqrt(std::max(0.0, col_norm[pc]));
        if (k == 0) max_pivot = norm;
        if (norm <= rank_tol * std::max(max_pivot, 1e-300)) break;  // remaining columns dependent
        ++rank;

        // Householder vector for column pc, rows k..m-1.
        double alpha = 0.0;
        for (std::size_t i = k; i < m; ++i) alpha += r.at(i, pc) * r.at(i, pc);
        alpha = std::sqrt(alpha);
        if (r.at(k, pc) > 0) alpha = -alpha;
        std::vector<double> v(m - k);
        v[0] = r.at(k, pc) - alpha;
        for (std::size_t i = k + 1; i < m; ++i) v[i - k] = r.at(i, pc);
        double vnorm2 = 0.0;
        for (double vi : v) vnorm2 += vi * vi;
        if (vnorm2 <= 0.0) { r.at(k, pc) = alpha; continue; }

        auto apply = [&](std::vector<double>& colvals) {
            double dot = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * colvals[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = 0; i < v.size(); ++i) colvals[i] -= f * v[i];
        };

        std::vector<double> tmp(m - k);
        for (std::size_t jj = k; jj < n; ++jj) {
            const std::size_t j = perm[jj];
            for (std::size_t i = k; i < m; ++i) tmp[i - k] = r.at(i, j);
            apply(tmp);
            for (std::size_t i = k; i < m; ++i) r.at(i, j) = tmp[i - k];
        }
        for (std::size_t i = k; i < m; ++i) tmp[i - k] = qty[i];
        apply(tmp);
        for (std::size_t i = k; i < m; ++i) qty[i] = tmp[i - k];

        // Downdate remaining column norms.
        for (std::size_t jj = k + 1; jj < n; ++jj) {
            const std::size_t j = perm[jj];
            double s = 0.0;
            for (std::size_t i = k + 1; i < m; ++i) s += r.at(i, j) * r.at(i, j);
            col_norm[j] = s;
        }
    }

    for (std::size_t jj = rank; jj < n; ++jj) dependent.push_back(perm[jj]);
    std::sort(dependent.begin(), dependent.end());

    // Back-substitute on the rank x rank triangular system.
    std::vector<double> beta_perm(n, 0.0);
    for (std::size_t k = rank; k-- > 0;) {
        double s = qty[k];
        for (std::size_t j = k + 1; j < rank; ++j) s -= r.at(k, perm[j]) * beta_perm[j];
        const double d = r.at(k, perm[k]);
        beta_perm[k] = s / d;
    }

    LeastSquaresResult out;
    out.coeffs.assign(n, 0.0);
    for (std::size_t k = 0; k < rank; ++k) out.coeffs[perm[k]] = beta_perm[k];
    out.rank = rank;
    out.dependent_columns = std::move(dependent);

    out.residuals.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double pred = 0.0;
        for (std::size_t j = 0; j < n; ++j) pred += x.at(i, j) * out.coeffs[j];
        out.residuals[i] = y[i] - pred;
    }
    return out;
}

bool cholesky(Matrix& m) {
    const std::size_t n = m.rows;
    if (m.cols != n) throw_invalid("cholesky: matrix not square");
    for (std::size_t j = 0; j < n; ++j) {
        double d = m.at(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= m.at(j, k) * m.at(j, k);
        if (d <= 0.0 || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        m.at(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m.at(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= m.at(i, k) * m.at(j, k);
            m.at(i, j) = s / ljj;
        }
        for (std::size_t k = j + 1; k < n; ++k) m.at(j, k) = 0.0;  // keep lower triangle only
    }
    return true;
}

std::vector<double> cholesky_solve(const Matrix& l, const std::vector<double>& b) {
    const std::size_t n = l.rows;
    if (b.size() != n) throw_invalid("cholesky_solve: dimension mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l.at(i, k) * y[k];
        y[i] = s / l.at(i, i);
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= l.at(k, i) * x[k];
        x[i] = s / l.at(i, i);
    }
    return x;
}

bool solve_square(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw_invalid("solve_square: dimension mismatch");
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a.at(i, k)) > std::fabs(a.at(p, k))) p = i;
        if (std::fabs(a.at(p, k)) < 1e-12) return false;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(k, j));
            std::swap(b[p], b[k]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a.at(i, k) / a.at(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            b[i] -= f * b[k];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
        x[i] = s / a.at(i, i);
    }
    return true;
}

}  // namespace acmpc::linalg
