#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "tfde/errors.hpp"
#include "tfde/mesh.hpp"

namespace {

using tfde::Point;
using tfde::StructuredMesh;

TEST(StructuredMesh, CountsForSmallMeshes) {
    const StructuredMesh m2(2);
    EXPECT_EQ(m2.num_triangles(), 8u);
    EXPECT_EQ(m2.num_nodes(), 9u);
    ASSERT_EQ(m2.num_interior(), 1u);
    EXPECT_DOUBLE_EQ(m2.node(m2.interior_node(0)).x, 0.5);
    EXPECT_DOUBLE_EQ(m2.node(m2.interior_node(0)).y, 0.5);

    const StructuredMesh m8(8);
    EXPECT_EQ(m8.num_triangles(), 128u);
    EXPECT_EQ(m8.num_nodes(), 81u);
    EXPECT_EQ(m8.num_interior(), 49u);
}

TEST(StructuredMesh, DiameterAndArea) {
    const StructuredMesh m(64);
    EXPECT_DOUBLE_EQ(m.diameter(), std::sqrt(2.0) / 64.0);
    EXPECT_EQ(m.triangle_area(), 1.0 / 8192.0);
}

TEST(StructuredMesh, RejectsTooFewSubdivisions) {
    EXPECT_THROW(StructuredMesh(1), tfde::InvalidArgument);
    EXPECT_THROW(StructuredMesh(0), tfde::InvalidArgument);
    EXPECT_THROW(tfde::build_mesh(-3), tfde::InvalidArgument);
}

class MeshSizes : public ::testing::TestWithParam<int> {};

TEST_P(MeshSizes, TrianglesArePositiveAndTile) {
    const StructuredMesh m(GetParam());
    double total = 0.0;
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        const double a = m.signed_area(t);
        EXPECT_DOUBLE_EQ(a, m.triangle_area());
        total += a;
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST_P(MeshSizes, BoundaryFlagsMatchCoordinates) {
    const StructuredMesh m(GetParam());
    for (std::size_t k = 0; k < m.num_nodes(); ++k) {
        const Point p = m.node(k);
        const bool on_edge = p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
        EXPECT_EQ(m.is_boundary(k), on_edge) << k;
    }
}

TEST_P(MeshSizes, InteriorIndexIsBijection) {
    const StructuredMesh m(GetParam());
    const std::size_t want = static_cast<std::size_t>((GetParam() - 1) * (GetParam() - 1));
    ASSERT_EQ(m.num_interior(), want);
    std::set<long> seen;
    for (std::size_t k = 0; k < m.num_nodes(); ++k) {
        const long idx = m.interior_index(k);
        if (m.is_boundary(k)) {
            EXPECT_EQ(idx, -1);
        } else {
            ASSERT_GE(idx, 0);
            ASSERT_LT(static_cast<std::size_t>(idx), want);
            EXPECT_EQ(m.interior_node(static_cast<std::size_t>(idx)), k);
            seen.insert(idx);
        }
    }
    EXPECT_EQ(seen.size(), want);
}

TEST_P(MeshSizes, DiagonalRunsLowerLeftToUpperRight) {
    const StructuredMesh m(GetParam());
    const auto& tris = m.triangles();
    for (std::size_t k = 0; k + 1 < tris.size(); k += 2) {
        // Both triangles of a square share the edge between its lower-left and upper-right corners.
        std::set<std::size_t> a(tris[k].begin(), tris[k].end());
        std::set<std::size_t> b(tris[k + 1].begin(), tris[k + 1].end());
        std::vector<std::size_t> shared;
        for (auto v : a) {
            if (b.count(v)) shared.push_back(v);
        }
        ASSERT_EQ(shared.size(), 2u);
        const Point p = m.node(shared[0]);
        const Point q = m.node(shared[1]);
        EXPECT_GT((q.x - p.x) * (q.y - p.y), 0.0);
    }
}

TEST_P(MeshSizes, LocateRandomPoints) {
    const StructuredMesh m(GetParam());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 0; s < 2000; ++s) {
        const Point p{u(rng), u(rng)};
        const auto loc = m.locate(p);
        const auto& tri = m.triangles()[loc.triangle];
        double sum = 0.0, x = 0.0, y = 0.0;
        for (int i = 0; i < 3; ++i) {
            EXPECT_GE(loc.barycentric[i], -1e-14);
            sum += loc.barycentric[i];
            x += loc.barycentric[i] * m.node(tri[i]).x;
            y += loc.barycentric[i] * m.node(tri[i]).y;
        }
        EXPECT_NEAR(sum, 1.0, 1e-14);
        EXPECT_NEAR(x, p.x, 1e-13);
        EXPECT_NEAR(y, p.y, 1e-13);
    }
}

TEST_P(MeshSizes, LocateCentroids) {
    const StructuredMesh m(GetParam());
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        const auto& tri = m.triangles()[t];
        Point c{0.0, 0.0};
        for (auto v : tri) {
            c.x += m.node(v).x / 3.0;
            c.y += m.node(v).y / 3.0;
        }
        const auto loc = m.locate(c);
        EXPECT_EQ(loc.triangle, t);
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(loc.barycentric[i], 1.0 / 3.0, 1e-13);
    }
}

INSTANTIATE_TEST_SUITE_P(Sizes, MeshSizes, ::testing::Values(2, 3, 5, 8, 16));

TEST(StructuredMesh, LocateCornerIsVertex) {
    const StructuredMesh m(4);
    const auto loc = m.locate({0.0, 0.0});
    const auto& tri = m.triangles()[loc.triangle];
    int hits = 0;
    for (int i = 0; i < 3; ++i) {
        if (tri[i] == m.node_id(0, 0)) {
            EXPECT_DOUBLE_EQ(loc.barycentric[i], 1.0);
            ++hits;
        } else {
            EXPECT_DOUBLE_EQ(loc.barycentric[i], 0.0);
        }
    }
    EXPECT_EQ(hits, 1);
}

TEST(StructuredMesh, LocateUpperRightCorner) {
    const StructuredMesh m(4);
    const auto loc = m.locate({1.0, 1.0});
    const auto& tri = m.triangles()[loc.triangle];
    for (int i = 0; i < 3; ++i) {
        if (tri[i] == m.node_id(4, 4)) EXPECT_DOUBLE_EQ(loc.barycentric[i], 1.0);
    }
}

TEST(StructuredMesh, LocateOutsideThrows) {
    const StructuredMesh m(4);
    EXPECT_THROW((void)m.locate({-0.1, 0.5}), tfde::DomainError);
    EXPECT_THROW((void)m.locate({0.5, 1.0 + 1e-9}), tfde::DomainError);
    EXPECT_THROW((void)m.locate({std::nan(""), 0.5}), tfde::DomainError);
}

TEST(StructuredMesh, SharedEdgeResolvesToLowestTriangle) {
    const StructuredMesh m(4);
    // A point on the diagonal of the first square belongs to both of its triangles.
    const auto loc = m.locate({0.1, 0.1});
    EXPECT_EQ(loc.triangle, 0u);
}

TEST(StructuredMesh, CsvDumpHasAllRows) {
    const StructuredMesh m(3);
    std::ostringstream s;
    m.write_csv(s);
    std::size_t lines = 0;
    std::istringstream in(s.str());
    for (std::string line; std::getline(in, line);) ++lines;
    EXPECT_EQ(lines, m.num_nodes() + 1 + m.num_triangles());
}

}  // namespace
