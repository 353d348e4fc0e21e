#include "tfde/time_stepping.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfde/errors.hpp"
#include "tfde/special_functions.hpp"

namespace tfde {

GradedTimeMesh::GradedTimeMesh(std::size_t intervals, double grading, double final_time)
    : grading_(grading) {
    if (intervals < 1) throw InvalidArgument("time mesh: N must be >= 1");
    if (!(grading >= 1.0) || !std::isfinite(grading)) {
        throw InvalidArgument("time mesh: grading exponent must be >= 1, got " + std::to_string(grading));
    }
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        throw InvalidArgument("time mesh: T must be positive, got " + std::to_string(final_time));
    }
    nodes_.resize(intervals + 1);
    const double dn = static_cast<double>(intervals);
    for (std::size_t n = 0; n <= intervals; ++n) {
        nodes_[n] = grading == 1.0 ? final_time * (double(n) / dn)
                                   : std::pow(double(n) / dn, grading) * final_time;
    }
    nodes_.front() = 0.0;
    nodes_.back() = final_time;
}

double power_difference(double a, double d, double p) {
    const double b = a - d;
    if (b <= 0.0) return std::pow(a, p);
    if (d < 0.5 * a) return -std::pow(a, p) * std::expm1(p * std::log1p(-d / a));
    return std::pow(a, p) - std::pow(b, p);
}

FracWeights::FracWeights(const GradedTimeMesh& mesh, double alpha)
    : alpha_(alpha), n_(mesh.intervals()) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("frac_weights: alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    const double inv_g = reciprocal_gamma(alpha + 1.0);
    b_.resize(n_ * (n_ + 1) / 2);
    for (std::size_t n = 1; n <= n_; ++n) {
        const double tn = mesh.t(n);
        double* r = b_.data() + offset(n);
        for (std::size_t j = 1; j <= n; ++j) {
            r[j - 1] = power_difference(tn - mesh.t(j - 1), mesh.step(j), alpha) * inv_g;
        }
    }
}

double FracWeights::c(std::size_t n, std::size_t j) const {
    if (j == n) return b(n, n);
    return b(n, j) - b(n - 1, j);
}

double FracWeights::apply(std::size_t n, std::span<const double> v) const {
    const auto r = row(n);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += r[j] * v[j];
    return s;
}

SchemeState initial_state(std::vector<double> u0) {
    SchemeState s;
    s.u.push_back(std::move(u0));
    s.z.emplace_back();
    return s;
}

const std::vector<double>& step(SchemeState& state, const SchemeOperators& ops,
                                std::span<const double> load) {
    const std::size_t n = state.n + 1;
    const std::size_t dof = ops.mass.n;
    if (n > ops.weights.intervals()) {
        throw InvalidArgument("step: time mesh has only " + std::to_string(ops.weights.intervals()) +
                              " intervals");
    }
    if (!load.empty() && load.size() != dof) throw InvalidArgument("step: load has wrong length");
    const std::vector<double>& prev = state.u.back();

    const double tau = ops.time_mesh.step(n);
    const double theta = n == 1 ? 1.0 : 0.5;
    const double cnn = ops.weights.b(n, n);

    std::vector<double> rhs = matvec(ops.mass, prev);
    if (theta < 1.0) {
        const std::vector<double> sp = matvec(ops.stiffness, prev);
        const double w = (1.0 - theta) * cnn;
        for (std::size_t i = 0; i < dof; ++i) rhs[i] -= w * sp[i];
    }
    if (n >= 2) {
        const auto row_n = ops.weights.row(n);
        const auto row_prev = ops.weights.row(n - 1);
        for (std::size_t j = 1; j < n; ++j) {
            const double c = row_n[j - 1] - row_prev[j - 1];
            const double* zj = state.z[j].data();
            double* r = rhs.data();
            for (std::size_t i = 0; i < dof; ++i) r[i] -= c * zj[i];
        }
    }
    if (!load.empty()) {
        for (std::size_t i = 0; i < dof; ++i) rhs[i] += tau * load[i];
    }

    for (double v : rhs) {
        if (!std::isfinite(v)) {
            throw NumericalBlowup("time step " + std::to_string(n) + " has a non-finite right-hand side", n);
        }
    }

    const CsrMatrix system = linear_combination(1.0, ops.mass, theta * cnn, ops.stiffness);
    const LinearSolver solver(system, ops.solver);
    SolveResult sol = solver.solve(rhs, prev);
    state.solver_iterations += sol.iterations;
    for (double v : sol.x) {
        if (!std::isfinite(v)) {
            throw NumericalBlowup("time step " + std::to_string(n) + " produced a non-finite value", n);
        }
    }

    std::vector<double> ubar = sol.x;
    if (n >= 2) {
        for (std::size_t i = 0; i < dof; ++i) ubar[i] = 0.5 * (sol.x[i] + prev[i]);
    }
    state.z.push_back(matvec(ops.stiffness, ubar));
    state.u.push_back(std::move(sol.x));
    state.n = n;
    return state.u.back();
}

double audit_history(const SchemeState& state, const CsrMatrix& stiffness) {
    double worst = 0.0;
    for (std::size_t j = 1; j <= state.n; ++j) {
        std::vector<double> ubar = state.u[j];
        if (j >= 2) {
            for (std::size_t i = 0; i < ubar.size(); ++i) ubar[i] = 0.5 * (state.u[j][i] + state.u[j - 1][i]);
        }
        const std::vector<double> z = matvec(stiffness, ubar);
        for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i] - state.z[j][i]));
    }
    return worst;
}

SchemeState run(const StructuredMesh& mesh, const GradedTimeMesh& time_mesh, double alpha,
                const ScalarField& diffusivity, const FieldP1& u0, const SpaceTimeField& source,
                const StepObserver& observer, const RunOptions& options) {
    if (u0.values.size() != mesh.num_interior()) {
        throw InvalidArgument("run: initial field does not match the mesh");
    }
    const CsrMatrix mass = assemble_mass(mesh);
    const CsrMatrix stiffness = assemble_stiffness(mesh, diffusivity);
    const FracWeights weights(time_mesh, alpha);
    const SchemeOperators ops{mass, stiffness, time_mesh, weights, options.solver};

    SchemeState state = initial_state(u0.values);
    std::vector<double> load;
    for (std::size_t n = 1; n <= time_mesh.intervals(); ++n) {
        if (source) {
            const double tm = 0.5 * (time_mesh.t(n - 1) + time_mesh.t(n));
            load = assemble_load(mesh, [&](double x, double y) { return source(x, y, tm); });
        }
        const auto& un = step(state, ops, load);
        if (observer) observer(n, time_mesh.t(n), un);
    }
    return state;
}

}  // namespace tfde
