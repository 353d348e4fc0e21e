#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tfde/assembly.hpp"
#include "tfde/mesh.hpp"
#include "tfde/reference_solution.hpp"

namespace tfde {

/// Interior nodes (k/Ms, l/Ms), k, l = 1..Ms-1, of the fine evaluation lattice.
struct FineLattice {
    int subdivisions = 0;
    std::vector<double> axis;  // k / Ms, k = 1..Ms-1

    [[nodiscard]] std::size_t size() const noexcept { return axis.size() * axis.size(); }
    /// Node p = j * axis.size() + i is (axis[i], axis[j]).
    [[nodiscard]] Point node(std::size_t p) const {
        return {axis[p % axis.size()], axis[p / axis.size()]};
    }
};

/// Throws InvalidArgument for Ms < 2.
[[nodiscard]] FineLattice fine_lattice(int subdivisions);

/// Precomputed P1 interpolation of coarse-mesh fields at fine-lattice nodes.
class LatticeInterpolator {
public:
    LatticeInterpolator(const StructuredMesh& mesh, const FineLattice& lattice);

    /// Values of the P1 field with interior coefficients `u` at each lattice node.
    [[nodiscard]] std::vector<double> apply(std::span<const double> u) const;
    [[nodiscard]] std::size_t size() const noexcept { return dofs_.size(); }
    [[nodiscard]] std::size_t coarse_dofs() const noexcept { return coarse_dofs_; }

private:
    std::size_t coarse_dofs_;
    // Per lattice node: three coarse dofs (-1 on the boundary) and weights.
    std::vector<std::array<long, 3>> dofs_;
    std::vector<std::array<double, 3>> weights_;
};

/// |||u_h - u||| = max over lattice nodes. `exact` is laid out like the lattice.
[[nodiscard]] double step_error(const LatticeInterpolator& interp, std::span<const double> u_h,
                                const GridValues& exact);

struct ErrorRow {
    std::size_t n = 0;
    double t = 0.0;
    double error = 0.0;
};

/// E_mu = max_n t_n^mu err_n, one value per requested mu.
[[nodiscard]] std::vector<double> weighted_errors(std::span<const ErrorRow> rows,
                                                  std::span<const double> mus);

/// The same maxima maintained incrementally as rows arrive.
class StreamingWeightedMax {
public:
    explicit StreamingWeightedMax(std::vector<double> mus);
    void update(double t, double error);
    [[nodiscard]] const std::vector<double>& values() const noexcept { return max_; }

private:
    std::vector<double> mus_;
    std::vector<double> max_;
};

/// CR(M -> 2M) = log2(E(M) / E(2M)). Throws InvalidArgument for fewer than two
/// entries or a non-positive error.
[[nodiscard]] std::vector<double> convergence_rates(std::span<const double> errors);

struct ErrorReport {
    int M = 0;
    std::size_t N = 0;
    double grading = 1.0;
    double alpha = 0.0;
    std::string example;
    int fine_M = 0;
    std::vector<ErrorRow> rows;
    std::vector<double> mus;
    std::vector<double> weighted;  // E_mu per mus
};

/// Header "n,t,err", one row per step, full precision.
void write_step_csv(std::ostream& out, const ErrorReport& report);

/// Header "M,E_<mu>...,CR_<mu>..." with one row per report (reports ordered by M).
void write_summary_csv(std::ostream& out, std::span<const ErrorReport> reports);

}  // namespace tfde
