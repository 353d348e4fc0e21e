#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tfde/assembly.hpp"
#include "tfde/sparse.hpp"

namespace tfde {

/// Nodes t_n = (n/N)^grading * T, n = 0..N.
class GradedTimeMesh {
public:
    /// Throws InvalidArgument for N < 1, grading < 1 or T <= 0.
    GradedTimeMesh(std::size_t intervals, double grading, double final_time);

    [[nodiscard]] std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    [[nodiscard]] double grading() const noexcept { return grading_; }
    [[nodiscard]] double final_time() const noexcept { return nodes_.back(); }
    [[nodiscard]] double t(std::size_t n) const { return nodes_[n]; }
    /// tau_n = t_n - t_{n-1}, n >= 1.
    [[nodiscard]] double step(std::size_t n) const { return nodes_[n] - nodes_[n - 1]; }
    [[nodiscard]] const std::vector<double>& nodes() const noexcept { return nodes_; }

private:
    double grading_;
    std::vector<double> nodes_;
};

/// a^p - b^p for a > b >= 0 given d = a - b, without cancellation when b ~ a.
[[nodiscard]] double power_difference(double a, double d, double p);

/**
 * Exact fractional-integral weights for histories that are constant on each
 * subinterval:
 *   (I^alpha v)(t_n) = sum_{j=1}^n b(n, j) v_j,
 *   b(n, j) = [(t_n - t_{j-1})^alpha - (t_n - t_j)^alpha] / Gamma(alpha + 1).
 * c(n, j) = b(n, j) - b(n-1, j) for j < n and c(n, n) = b(n, n) are the
 * increments I^alpha v(t_n) - I^alpha v(t_{n-1}) used by the time stepper.
 */
class FracWeights {
public:
    /// Throws InvalidArgument unless 0 < alpha < 1.
    FracWeights(const GradedTimeMesh& mesh, double alpha);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] std::size_t intervals() const noexcept { return n_; }
    [[nodiscard]] double b(std::size_t n, std::size_t j) const { return b_[offset(n) + j - 1]; }
    [[nodiscard]] double c(std::size_t n, std::size_t j) const;
    /// Row n, entries j = 1..n.
    [[nodiscard]] std::span<const double> row(std::size_t n) const {
        return {b_.data() + offset(n), n};
    }

    /// sum_j b(n, j) v[j-1] for a piecewise-constant history v.
    [[nodiscard]] double apply(std::size_t n, std::span<const double> v) const;

private:
    static std::size_t offset(std::size_t n) noexcept { return (n - 1) * n / 2; }

    double alpha_;
    std::size_t n_;
    std::vector<double> b_;
};

/// u^0..u^n and the cached history vectors z_j = S * ubar_j, where ubar_1 = u^1
/// and ubar_j = (u^j + u^{j-1}) / 2 for j >= 2. z[0] is empty.
struct SchemeState {
    std::size_t n = 0;
    std::vector<std::vector<double>> u;
    std::vector<std::vector<double>> z;
    /// Total CG iterations spent so far.
    long solver_iterations = 0;
};

[[nodiscard]] SchemeState initial_state(std::vector<double> u0);

struct SchemeOperators {
    const CsrMatrix& mass;
    const CsrMatrix& stiffness;
    const GradedTimeMesh& time_mesh;
    const FracWeights& weights;
    SolverOptions solver{};
};

/**
 * Advances the generalized Crank-Nicolson scheme from t_{n-1} to t_n:
 *
 *   (Mass + theta c_nn S) u^n = Mass u^{n-1} - sum_{j<n} c_nj z_j
 *                               - (1 - theta) c_nn S u^{n-1} + tau_n * load,
 *
 * theta = 1 on the first step and 1/2 afterwards. `load` is the load vector of
 * f at the subinterval midpoint (empty for f = 0). The solve is warm-started
 * from u^{n-1}. Throws NumericalBlowup on non-finite coefficients.
 */
const std::vector<double>& step(SchemeState& state, const SchemeOperators& ops,
                                std::span<const double> load = {});

/// max_j ||z_j - S ubar_j||_inf over the stored history.
[[nodiscard]] double audit_history(const SchemeState& state, const CsrMatrix& stiffness);

using SpaceTimeField = std::function<double(double x, double y, double t)>;
using StepObserver = std::function<void(std::size_t n, double t, std::span<const double> u)>;

struct RunOptions {
    SolverOptions solver{};
};

/**
 * Runs steps 1..N from the initial coefficients u0, calling observer(n, t_n, u^n)
 * exactly once per step in increasing n. `source` may be empty (f = 0).
 */
SchemeState run(const StructuredMesh& mesh, const GradedTimeMesh& time_mesh, double alpha,
                const ScalarField& diffusivity, const FieldP1& u0, const SpaceTimeField& source,
                const StepObserver& observer, const RunOptions& options = {});

}  // namespace tfde
