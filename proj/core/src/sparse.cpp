#include "tfde/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <string>

#include "tfde/errors.hpp"

namespace tfde {

double CsrMatrix::at(std::size_t i, std::size_t j) const {
    const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
    const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return 0.0;
    return val[static_cast<std::size_t>(it - col.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
    return d;
}

double CsrMatrix::symmetry_defect() const {
    double scale = 0.0;
    for (double v : val) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double defect = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            defect = std::max(defect, std::abs(val[k] - at(col[k], i)));
        }
    }
    return defect / scale;
}

bool CsrMatrix::same_pattern(const CsrMatrix& other) const noexcept {
    return n == other.n && row_ptr == other.row_ptr && col == other.col;
}

CsrMatrix csr_from_triplets(std::size_t n, std::span<const Triplet> triplets) {
    std::vector<std::size_t> order(triplets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (const auto& t : triplets) {
        if (t.row >= n || t.col >= n) {
            throw InvalidArgument("csr_from_triplets: index out of range");
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ta = triplets[a];
        const auto& tb = triplets[b];
        return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
    });

    CsrMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& t = triplets[order[k]];
        if (k > 0) {
            const auto& prev = triplets[order[k - 1]];
            if (prev.row == t.row && prev.col == t.col) {
                m.val.back() += t.value;
                continue;
            }
        }
        m.col.push_back(t.col);
        m.val.push_back(t.value);
        ++m.row_ptr[t.row + 1];
    }
    for (std::size_t i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    return m;
}

CsrMatrix identity_matrix(std::size_t n) {
    CsrMatrix m;
    m.n = n;
    m.row_ptr.resize(n + 1);
    m.col.resize(n);
    m.val.assign(n, 1.0);
    for (std::size_t i = 0; i <= n; ++i) m.row_ptr[i] = i;
    for (std::size_t i = 0; i < n; ++i) m.col[i] = i;
    return m;
}

void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
    if (x.size() != a.n || y.size() != a.n) {
        throw InvalidArgument("matvec: dimension mismatch (matrix " + std::to_string(a.n) +
                              ", x " + std::to_string(x.size()) + ", y " +
                              std::to_string(y.size()) + ")");
    }
    for (std::size_t i = 0; i < a.n; ++i) {
        double s = 0.0;
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.val[k] * x[a.col[k]];
        y[i] = s;
    }
}

std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x) {
    std::vector<double> y(a.n);
    matvec(a, x, y);
    return y;
}

CsrMatrix linear_combination(double alpha, const CsrMatrix& a, double beta, const CsrMatrix& b) {
    if (!a.same_pattern(b)) {
        throw InvalidArgument("linear_combination: sparsity patterns differ");
    }
    CsrMatrix c = a;
    for (std::size_t k = 0; k < c.val.size(); ++k) c.val[k] = alpha * a.val[k] + beta * b.val[k];
    return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n << ' ' << a.n << ' ' << a.nnz() << '\n';
    out << std::setprecision(17);
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            out << i + 1 << ' ' << a.col[k] + 1 << ' ' << a.val[k] << '\n';
        }
    }
}

namespace {

void check_rhs(const CsrMatrix& a, std::span<const double> rhs) {
    if (rhs.size() != a.n) {
        throw InvalidArgument("solve: rhs has length " + std::to_string(rhs.size()) +
                              ", matrix dimension is " + std::to_string(a.n));
    }
    for (double v : rhs) {
        if (!std::isfinite(v)) throw InvalidArgument("solve: rhs contains non-finite entries");
    }
}

double relative_residual(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
    const double bn = norm2(b);
    std::vector<double> r(a.n);
    matvec(a, x, r);
    for (std::size_t i = 0; i < a.n; ++i) r[i] -= b[i];
    return bn > 0.0 ? norm2(r) / bn : norm2(r);
}

}  // namespace

LinearSolver::LinearSolver(const CsrMatrix& matrix, SolverOptions options)
    : a_(&matrix), options_(options) {
    if (matrix.row_ptr.size() != matrix.n + 1) {
        throw InvalidArgument("LinearSolver: malformed CSR matrix");
    }
    if (const double d = matrix.symmetry_defect(); d > 1e-12) {
        throw InvalidArgument("LinearSolver: matrix is not symmetric (defect " + std::to_string(d) +
                              ")");
    }
    if (options_.rel_tol <= 0.0 || options_.max_iterations < 1) {
        throw InvalidArgument("LinearSolver: tolerance and iteration limit must be positive");
    }
    inv_diag_ = matrix.diagonal();
    for (double& d : inv_diag_) {
        if (!(d > 0.0)) throw InvalidArgument("LinearSolver: non-positive diagonal entry");
        d = 1.0 / d;
    }
    if (options_.method == SolverMethod::cholesky) factor_band();
}

void LinearSolver::factor_band() {
    const CsrMatrix& a = *a_;
    band_ = 0;
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (a.col[k] < i) band_ = std::max(band_, i - a.col[k]);
        }
    }
    const std::size_t w = band_ + 1;
    factor_.assign(a.n * w, 0.0);
    auto l = [&](std::size_t i, std::size_t j) -> double& { return factor_[i * w + (j + band_ - i)]; };
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (a.col[k] <= i) l(i, a.col[k]) = a.val[k];
        }
    }
    for (std::size_t i = 0; i < a.n; ++i) {
        const std::size_t j0 = i > band_ ? i - band_ : 0;
        for (std::size_t j = j0; j <= i; ++j) {
            double s = l(i, j);
            const std::size_t k0 = std::max(j0, j > band_ ? j - band_ : 0);
            for (std::size_t k = k0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (j == i) {
                if (!(s > 0.0)) {
                    throw SolverFailure("LinearSolver: matrix is not positive definite", s, 0);
                }
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
}

std::vector<double> LinearSolver::solve(std::span<const double> rhs) const {
    std::vector<double> zero(a_->n, 0.0);
    return solve(rhs, zero).x;
}

SolveResult LinearSolver::solve(std::span<const double> rhs,
                                std::span<const double> initial_guess) const {
    check_rhs(*a_, rhs);
    if (options_.method == SolverMethod::cholesky) return solve_cholesky(rhs);
    return solve_cg(rhs, initial_guess, nullptr);
}

SolveResult LinearSolver::solve_traced(std::span<const double> rhs,
                                       std::span<const double> initial_guess,
                                       std::vector<std::vector<double>>& iterates) const {
    check_rhs(*a_, rhs);
    iterates.clear();
    return solve_cg(rhs, initial_guess, &iterates);
}

SolveResult LinearSolver::solve_cholesky(std::span<const double> rhs) const {
    const std::size_t n = a_->n;
    const std::size_t w = band_ + 1;
    auto l = [&](std::size_t i, std::size_t j) { return factor_[i * w + (j + band_ - i)]; };
    SolveResult res;
    res.x.assign(rhs.begin(), rhs.end());
    auto& x = res.x;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i > band_ ? i - band_ : 0;
        double s = x[i];
        for (std::size_t j = j0; j < i; ++j) s -= l(i, j) * x[j];
        x[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        const std::size_t j1 = std::min(n - 1, ii + band_);
        for (std::size_t j = ii + 1; j <= j1; ++j) s -= l(j, ii) * x[j];
        x[ii] = s / l(ii, ii);
    }
    res.relative_residual = relative_residual(*a_, x, rhs);
    return res;
}

SolveResult LinearSolver::solve_cg(std::span<const double> rhs, std::span<const double> guess,
                                   std::vector<std::vector<double>>* trace) const {
    const CsrMatrix& a = *a_;
    const std::size_t n = a.n;
    SolveResult res;
    if (guess.size() == n) {
        res.x.assign(guess.begin(), guess.end());
    } else if (guess.empty()) {
        res.x.assign(n, 0.0);
    } else {
        throw InvalidArgument("solve: initial guess has wrong length");
    }
    auto& x = res.x;

    const double bnorm = norm2(rhs);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return res;
    }
    const double target = options_.rel_tol * bnorm;

    std::vector<double> r(n), z(n), p(n), ap(n);
    // The recursively updated residual can drift from b - Ax; restart from the
    // true residual until the true residual meets the target.
    constexpr int max_restarts = 5;
    for (int restart = 0; restart <= max_restarts; ++restart) {
        matvec(a, x, r);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
        double rnorm = norm2(r);
        if (rnorm <= target) {
            res.relative_residual = rnorm / bnorm;
            return res;
        }
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
        p = z;
        double rz = dot(r, z);
        while (res.iterations < options_.max_iterations) {
            matvec(a, p, ap);
            const double pap = dot(p, ap);
            if (!(pap > 0.0)) {
                throw SolverFailure("conjugate gradient breakdown (matrix not SPD?)", rnorm / bnorm,
                                    res.iterations);
            }
            const double step = rz / pap;
            for (std::size_t i = 0; i < n; ++i) {
                x[i] += step * p[i];
                r[i] -= step * ap[i];
            }
            ++res.iterations;
            if (trace != nullptr) trace->push_back(x);
            rnorm = norm2(r);
            if (rnorm <= 0.5 * target) break;
            for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag_[i] * r[i];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        }
        if (res.iterations >= options_.max_iterations) break;
    }
    res.relative_residual = relative_residual(a, x, rhs);
    if (res.relative_residual <= options_.rel_tol) return res;
    throw SolverFailure("conjugate gradient did not converge in " +
                            std::to_string(res.iterations) + " iterations (relative residual " +
                            std::to_string(res.relative_residual) + ")",
                        res.relative_residual, res.iterations);
}

}  // namespace tfde
