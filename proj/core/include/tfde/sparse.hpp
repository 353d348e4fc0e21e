#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace tfde {

/// Square matrix in compressed sparse row layout. Column indices are sorted
/// within each row.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr;  // size n+1
    std::vector<std::size_t> col;
    std::vector<double> val;

    [[nodiscard]] std::size_t nnz() const noexcept { return val.size(); }
    /// Entry (i, j), zero when not stored.
    [[nodiscard]] double at(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::vector<double> diagonal() const;
    /// max |a_ij - a_ji| over stored entries, relative to max |a_ij|.
    [[nodiscard]] double symmetry_defect() const;
    [[nodiscard]] bool same_pattern(const CsrMatrix& other) const noexcept;
};

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Builds a CSR matrix from triplets; duplicates are summed in input order so
/// the result is bit-reproducible for a fixed triplet sequence.
[[nodiscard]] CsrMatrix csr_from_triplets(std::size_t n, std::span<const Triplet> triplets);

[[nodiscard]] CsrMatrix identity_matrix(std::size_t n);

/// y = A x.
void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
[[nodiscard]] std::vector<double> matvec(const CsrMatrix& a, std::span<const double> x);

/// alpha*A + beta*B for matrices with identical sparsity patterns.
[[nodiscard]] CsrMatrix linear_combination(double alpha, const CsrMatrix& a, double beta,
                                           const CsrMatrix& b);

[[nodiscard]] double dot(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double norm2(std::span<const double> a);

/// MatrixMarket "coordinate real general" dump, 1-based indices.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);

enum class SolverMethod { conjugate_gradient, cholesky };

struct SolverOptions {
    SolverMethod method = SolverMethod::conjugate_gradient;
    double rel_tol = 1e-12;
    int max_iterations = 10000;
};

struct SolveResult {
    std::vector<double> x;
    int iterations = 0;
    /// ||A x - b|| / ||b|| for the returned x.
    double relative_residual = 0.0;
};

/**
 * Solver for symmetric positive definite CSR systems.
 *
 * conjugate_gradient uses a Jacobi preconditioner and accepts a warm start;
 * cholesky factors the band of the matrix once at construction. The matrix
 * must outlive the solver.
 */
class LinearSolver {
public:
    explicit LinearSolver(const CsrMatrix& matrix, SolverOptions options = {});

    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;
    [[nodiscard]] SolveResult solve(std::span<const double> rhs,
                                    std::span<const double> initial_guess) const;

    /// Like the warm-started solve, additionally recording the iterate after
    /// each CG iteration (for convergence diagnostics; CG only).
    [[nodiscard]] SolveResult solve_traced(std::span<const double> rhs,
                                           std::span<const double> initial_guess,
                                           std::vector<std::vector<double>>& iterates) const;

    [[nodiscard]] const SolverOptions& options() const noexcept { return options_; }
    [[nodiscard]] const CsrMatrix& matrix() const noexcept { return *a_; }

private:
    SolveResult solve_cg(std::span<const double> rhs, std::span<const double> guess,
                         std::vector<std::vector<double>>* trace) const;
    SolveResult solve_cholesky(std::span<const double> rhs) const;
    void factor_band();

    const CsrMatrix* a_;
    SolverOptions options_;
    std::vector<double> inv_diag_;
    // Lower band storage of the Cholesky factor, row-major with width band_+1.
    std::size_t band_ = 0;
    std::vector<double> factor_;
};

}  // namespace tfde
