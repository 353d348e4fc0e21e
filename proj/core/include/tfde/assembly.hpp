#pragma once

#include <array>
#include <functional>
#include <vector>

#include "tfde/mesh.hpp"
#include "tfde/sparse.hpp"

namespace tfde {

using ScalarField = std::function<double(double x, double y)>;
using GradientField = std::function<std::array<double, 2>(double x, double y)>;

/// Piecewise-linear function vanishing on the boundary, stored by interior
/// degree of freedom. The mesh is not owned and must outlive the field.
struct FieldP1 {
    const StructuredMesh* mesh = nullptr;
    std::vector<double> values;

    FieldP1() = default;
    explicit FieldP1(const StructuredMesh& m) : mesh(&m), values(m.num_interior(), 0.0) {}
    FieldP1(const StructuredMesh& m, std::vector<double> v);

    /// Value at a point of the closed unit square (zero on the boundary).
    [[nodiscard]] double evaluate(Point p) const;
};

/// Nodal interpolant (interior nodes only).
[[nodiscard]] FieldP1 interpolate(const StructuredMesh& mesh, const ScalarField& g);

enum class DofSet { interior, all_nodes };

/// Exact P1 mass matrix: element entries area/6 on the diagonal, area/12 off it.
[[nodiscard]] CsrMatrix assemble_mass(const StructuredMesh& mesh,
                                      DofSet dofs = DofSet::interior);

/// P1 stiffness matrix for -div(a grad u) with a sampled at element centroids.
/// Throws DomainError if a is non-finite or non-positive at any centroid.
[[nodiscard]] CsrMatrix assemble_stiffness(const StructuredMesh& mesh, const ScalarField& a);

/// Unit-diffusivity stiffness matrix.
[[nodiscard]] CsrMatrix assemble_laplacian(const StructuredMesh& mesh);

/// b_i = integral of g * phi_i using the edge-midpoint rule on each triangle.
/// Throws EvaluationError on non-finite contributions.
[[nodiscard]] std::vector<double> assemble_load(const StructuredMesh& mesh, const ScalarField& g);

/// b_i = integral of a grad(g) . grad(phi_i): a at the centroid, grad g averaged
/// over the edge midpoints. Exact when a is piecewise constant and grad g is
/// affine on each triangle.
[[nodiscard]] std::vector<double> assemble_energy_load(const StructuredMesh& mesh,
                                                       const ScalarField& a,
                                                       const GradientField& grad_g);

/// L2 projection P_h g.
[[nodiscard]] FieldP1 l2_project(const StructuredMesh& mesh, const ScalarField& g,
                                 double rel_tol = 1e-13);

/// Ritz projection R_h g with respect to A(v, w) = (a grad v, grad w).
[[nodiscard]] FieldP1 ritz_project(const StructuredMesh& mesh, const ScalarField& a,
                                   const GradientField& grad_g, double rel_tol = 1e-13);

}  // namespace tfde
