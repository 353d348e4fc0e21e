#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <vector>

namespace tfde {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// A triangle containing a query point and the point's barycentric coordinates
/// with respect to the triangle's vertices (in the triangle's vertex order).
struct PointLocation {
    std::size_t triangle = 0;
    std::array<double, 3> barycentric{};
};

/**
 * Right-angle triangulation of the unit square.
 *
 * The (M+1)x(M+1) lattice is numbered row-major, node(i, j) = j*(M+1) + i at
 * (i/M, j/M). Each lattice square (i, j) is cut along its lower-left to
 * upper-right diagonal; triangle 2k (k = j*M + i) lies below the diagonal and
 * triangle 2k+1 above it. Both are counter-clockwise.
 *
 * Only interior nodes carry degrees of freedom; interior_index() is -1 on the
 * boundary.
 */
class StructuredMesh {
public:
    explicit StructuredMesh(int subdivisions);

    [[nodiscard]] int subdivisions() const noexcept { return m_; }
    [[nodiscard]] double spacing() const noexcept { return 1.0 / m_; }
    /// Element diameter sqrt(2)/M.
    [[nodiscard]] double diameter() const noexcept;
    [[nodiscard]] double triangle_area() const noexcept { return 0.5 / (double(m_) * m_); }

    [[nodiscard]] std::size_t num_nodes() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t num_triangles() const noexcept { return triangles_.size(); }
    [[nodiscard]] std::size_t num_interior() const noexcept { return interior_nodes_.size(); }

    [[nodiscard]] const std::vector<Point>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::vector<std::array<std::size_t, 3>>& triangles() const noexcept {
        return triangles_;
    }
    [[nodiscard]] const Point& node(std::size_t id) const { return nodes_[id]; }
    [[nodiscard]] std::size_t node_id(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * (m_ + 1) + static_cast<std::size_t>(i);
    }

    [[nodiscard]] bool is_boundary(std::size_t node) const { return boundary_[node] != 0; }
    /// Degree-of-freedom index of an interior node, -1 for boundary nodes.
    [[nodiscard]] long interior_index(std::size_t node) const { return interior_index_[node]; }
    /// Node id of interior degree of freedom `dof` (inverse of interior_index).
    [[nodiscard]] std::size_t interior_node(std::size_t dof) const { return interior_nodes_[dof]; }

    [[nodiscard]] double signed_area(std::size_t triangle) const;

    /// O(1) point location on the lattice. Points on shared edges or vertices
    /// resolve to the lowest-indexed containing triangle.
    /// Throws DomainError when p lies outside [0,1]^2.
    [[nodiscard]] PointLocation locate(Point p) const;

    /// Debug dump: "id,x,y" rows, a blank line, then "id,n0,n1,n2" rows.
    void write_csv(std::ostream& out) const;

private:
    int m_;
    std::vector<Point> nodes_;
    std::vector<std::array<std::size_t, 3>> triangles_;
    std::vector<unsigned char> boundary_;
    std::vector<long> interior_index_;
    std::vector<std::size_t> interior_nodes_;
};

/// Throws InvalidArgument for M < 2 (no interior nodes).
[[nodiscard]] StructuredMesh build_mesh(int subdivisions);

}  // namespace tfde
