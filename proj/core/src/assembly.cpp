#include "tfde/assembly.hpp"

#include <cmath>
#include <string>

#include "tfde/errors.hpp"

namespace tfde {

namespace {

struct ElementGeometry {
    std::array<Point, 3> v;
    double area;
    std::array<std::array<double, 2>, 3> grad;  // gradients of the barycentric hats
};

ElementGeometry element_geometry(const StructuredMesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangles()[t];
    ElementGeometry g{};
    for (int k = 0; k < 3; ++k) g.v[k] = mesh.node(tri[k]);
    const double area2 = (g.v[1].x - g.v[0].x) * (g.v[2].y - g.v[0].y) -
                         (g.v[2].x - g.v[0].x) * (g.v[1].y - g.v[0].y);
    g.area = 0.5 * area2;
    for (int k = 0; k < 3; ++k) {
        const Point& b = g.v[(k + 1) % 3];
        const Point& c = g.v[(k + 2) % 3];
        g.grad[k] = {(b.y - c.y) / area2, (c.x - b.x) / area2};
    }
    return g;
}

Point midpoint(const Point& a, const Point& b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

long dof_of(const StructuredMesh& mesh, std::size_t node, DofSet dofs) {
    return dofs == DofSet::all_nodes ? static_cast<long>(node) : mesh.interior_index(node);
}

std::size_t dof_count(const StructuredMesh& mesh, DofSet dofs) {
    return dofs == DofSet::all_nodes ? mesh.num_nodes() : mesh.num_interior();
}

template <class ElementMatrix>
CsrMatrix assemble(const StructuredMesh& mesh, DofSet dofs, ElementMatrix&& element) {
    std::vector<Triplet> triplets;
    triplets.reserve(9 * mesh.num_triangles());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        const std::array<std::array<double, 3>, 3> ke = element(t);
        for (int a = 0; a < 3; ++a) {
            const long ia = dof_of(mesh, tri[a], dofs);
            if (ia < 0) continue;
            for (int b = 0; b < 3; ++b) {
                const long ib = dof_of(mesh, tri[b], dofs);
                if (ib < 0) continue;
                triplets.push_back({static_cast<std::size_t>(ia), static_cast<std::size_t>(ib), ke[a][b]});
            }
        }
    }
    return csr_from_triplets(dof_count(mesh, dofs), triplets);
}

}  // namespace

FieldP1::FieldP1(const StructuredMesh& m, std::vector<double> v) : mesh(&m), values(std::move(v)) {
    if (values.size() != m.num_interior()) {
        throw InvalidArgument("FieldP1: expected " + std::to_string(m.num_interior()) +
                              " coefficients, got " + std::to_string(values.size()));
    }
}

double FieldP1::evaluate(Point p) const {
    const PointLocation loc = mesh->locate(p);
    const auto& tri = mesh->triangles()[loc.triangle];
    double s = 0.0;
    for (int k = 0; k < 3; ++k) {
        const long dof = mesh->interior_index(tri[k]);
        if (dof >= 0) s += loc.barycentric[k] * values[static_cast<std::size_t>(dof)];
    }
    return s;
}

FieldP1 interpolate(const StructuredMesh& mesh, const ScalarField& g) {
    FieldP1 f(mesh);
    for (std::size_t d = 0; d < mesh.num_interior(); ++d) {
        const Point& p = mesh.node(mesh.interior_node(d));
        f.values[d] = g(p.x, p.y);
    }
    return f;
}

CsrMatrix assemble_mass(const StructuredMesh& mesh, DofSet dofs) {
    return assemble(mesh, dofs, [&](std::size_t t) {
        const double area = mesh.signed_area(t);
        std::array<std::array<double, 3>, 3> ke{};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) ke[a][b] = a == b ? area / 6.0 : area / 12.0;
        }
        return ke;
    });
}

CsrMatrix assemble_stiffness(const StructuredMesh& mesh, const ScalarField& a) {
    return assemble(mesh, DofSet::interior, [&](std::size_t t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const double cx = (g.v[0].x + g.v[1].x + g.v[2].x) / 3.0;
        const double cy = (g.v[0].y + g.v[1].y + g.v[2].y) / 3.0;
        const double coeff = a(cx, cy);
        if (!std::isfinite(coeff) || coeff <= 0.0) {
            throw DomainError("assemble_stiffness: diffusivity a(" + std::to_string(cx) + ", " +
                              std::to_string(cy) + ") = " + std::to_string(coeff) +
                              " is not a finite positive value");
        }
        std::array<std::array<double, 3>, 3> ke{};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                ke[i][j] = coeff * g.area *
                           (g.grad[i][0] * g.grad[j][0] + g.grad[i][1] * g.grad[j][1]);
            }
        }
        return ke;
    });
}

CsrMatrix assemble_laplacian(const StructuredMesh& mesh) {
    return assemble_stiffness(mesh, [](double, double) { return 1.0; });
}

std::vector<double> assemble_load(const StructuredMesh& mesh, const ScalarField& g) {
    std::vector<double> b(mesh.num_interior(), 0.0);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        const ElementGeometry geo = element_geometry(mesh, t);
        // gm[k] is g at the midpoint of the edge opposite vertex k.
        std::array<double, 3> gm{};
        for (int k = 0; k < 3; ++k) {
            const Point m = midpoint(geo.v[(k + 1) % 3], geo.v[(k + 2) % 3]);
            gm[k] = g(m.x, m.y);
        }
        for (int k = 0; k < 3; ++k) {
            const long dof = mesh.interior_index(tri[k]);
            if (dof < 0) continue;
            // phi_k is 1/2 on its two adjacent edge midpoints and 0 on the opposite one.
            const double contrib = geo.area / 6.0 * (gm[(k + 1) % 3] + gm[(k + 2) % 3]);
            if (!std::isfinite(contrib)) {
                throw EvaluationError("assemble_load: non-finite integrand on triangle " +
                                      std::to_string(t));
            }
            b[static_cast<std::size_t>(dof)] += contrib;
        }
    }
    return b;
}

std::vector<double> assemble_energy_load(const StructuredMesh& mesh, const ScalarField& a,
                                         const GradientField& grad_g) {
    std::vector<double> b(mesh.num_interior(), 0.0);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        const ElementGeometry geo = element_geometry(mesh, t);
        const double cx = (geo.v[0].x + geo.v[1].x + geo.v[2].x) / 3.0;
        const double cy = (geo.v[0].y + geo.v[1].y + geo.v[2].y) / 3.0;
        const double coeff = a(cx, cy);
        std::array<double, 2> avg{0.0, 0.0};
        for (int k = 0; k < 3; ++k) {
            const Point m = midpoint(geo.v[(k + 1) % 3], geo.v[(k + 2) % 3]);
            const auto gr = grad_g(m.x, m.y);
            avg[0] += gr[0] / 3.0;
            avg[1] += gr[1] / 3.0;
        }
        for (int k = 0; k < 3; ++k) {
            const long dof = mesh.interior_index(tri[k]);
            if (dof < 0) continue;
            const double contrib =
                coeff * geo.area * (avg[0] * geo.grad[k][0] + avg[1] * geo.grad[k][1]);
            if (!std::isfinite(contrib)) {
                throw EvaluationError("assemble_energy_load: non-finite integrand on triangle " +
                                      std::to_string(t));
            }
            b[static_cast<std::size_t>(dof)] += contrib;
        }
    }
    return b;
}

FieldP1 l2_project(const StructuredMesh& mesh, const ScalarField& g, double rel_tol) {
    const CsrMatrix mass = assemble_mass(mesh);
    const LinearSolver solver(mass, {SolverMethod::conjugate_gradient, rel_tol, 10000});
    return FieldP1(mesh, solver.solve(assemble_load(mesh, g)));
}

FieldP1 ritz_project(const StructuredMesh& mesh, const ScalarField& a, const GradientField& grad_g,
                     double rel_tol) {
    const CsrMatrix stiffness = assemble_stiffness(mesh, a);
    const LinearSolver solver(stiffness, {SolverMethod::conjugate_gradient, rel_tol, 100000});
    return FieldP1(mesh, solver.solve(assemble_energy_load(mesh, a, grad_g)));
}

}  // namespace tfde
