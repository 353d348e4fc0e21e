#include "tfde/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tfde/errors.hpp"

namespace tfde {

StructuredMesh::StructuredMesh(int subdivisions) : m_(subdivisions) {
    if (m_ < 2) {
        throw InvalidArgument("build_mesh: M must be >= 2, got " + std::to_string(m_));
    }
    const int n1 = m_ + 1;
    nodes_.reserve(static_cast<std::size_t>(n1) * n1);
    boundary_.reserve(nodes_.capacity());
    interior_index_.reserve(nodes_.capacity());
    for (int j = 0; j < n1; ++j) {
        for (int i = 0; i < n1; ++i) {
            nodes_.push_back({double(i) / m_, double(j) / m_});
            const bool on_boundary = i == 0 || j == 0 || i == m_ || j == m_;
            boundary_.push_back(on_boundary ? 1 : 0);
            if (on_boundary) {
                interior_index_.push_back(-1);
            } else {
                interior_index_.push_back(static_cast<long>(interior_nodes_.size()));
                interior_nodes_.push_back(nodes_.size() - 1);
            }
        }
    }

    triangles_.reserve(2 * static_cast<std::size_t>(m_) * m_);
    for (int j = 0; j < m_; ++j) {
        for (int i = 0; i < m_; ++i) {
            const auto n00 = node_id(i, j);
            const auto n10 = node_id(i + 1, j);
            const auto n01 = node_id(i, j + 1);
            const auto n11 = node_id(i + 1, j + 1);
            triangles_.push_back({n00, n10, n11});
            triangles_.push_back({n00, n11, n01});
        }
    }
}

double StructuredMesh::diameter() const noexcept { return std::sqrt(2.0) / m_; }

double StructuredMesh::signed_area(std::size_t triangle) const {
    const auto& t = triangles_[triangle];
    const Point& a = nodes_[t[0]];
    const Point& b = nodes_[t[1]];
    const Point& c = nodes_[t[2]];
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

PointLocation StructuredMesh::locate(Point p) const {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
        throw DomainError("locate_point: point (" + std::to_string(p.x) + ", " +
                          std::to_string(p.y) + ") is outside the unit square");
    }
    const double sx = p.x * m_;
    const double sy = p.y * m_;
    const int i0 = std::min(static_cast<int>(std::floor(sx)), m_ - 1);
    const int j0 = std::min(static_cast<int>(std::floor(sy)), m_ - 1);

    // Candidate squares: the floor square plus its left/lower neighbours when the
    // point sits exactly on their shared lattice line.
    PointLocation best;
    best.triangle = std::numeric_limits<std::size_t>::max();
    constexpr double tol = 1e-14;
    for (int j = std::max(j0 - 1, 0); j <= j0; ++j) {
        for (int i = std::max(i0 - 1, 0); i <= i0; ++i) {
            const double xi = sx - i;
            const double eta = sy - j;
            const std::size_t square = static_cast<std::size_t>(j) * m_ + static_cast<std::size_t>(i);
            // Lower triangle (n00, n10, n11) and upper triangle (n00, n11, n01).
            const std::array<std::array<double, 3>, 2> bary{{{1.0 - xi, xi - eta, eta},
                                                            {1.0 - eta, xi, eta - xi}}};
            for (int k = 0; k < 2; ++k) {
                const auto& l = bary[k];
                if (l[0] < -tol || l[1] < -tol || l[2] < -tol) continue;
                const std::size_t tri = 2 * square + static_cast<std::size_t>(k);
                if (tri < best.triangle) {
                    best.triangle = tri;
                    best.barycentric = l;
                }
            }
        }
    }
    return best;
}

void StructuredMesh::write_csv(std::ostream& out) const {
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
        out << n << ',' << nodes_[n].x << ',' << nodes_[n].y << '\n';
    }
    out << '\n';
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        out << t << ',' << triangles_[t][0] << ',' << triangles_[t][1] << ',' << triangles_[t][2]
            << '\n';
    }
}

StructuredMesh build_mesh(int subdivisions) { return StructuredMesh(subdivisions); }

}  // namespace tfde
