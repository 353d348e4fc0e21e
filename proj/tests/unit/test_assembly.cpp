#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "tfde/assembly.hpp"
#include "tfde/errors.hpp"

namespace {

using tfde::StructuredMesh;
constexpr double kPi = std::numbers::pi;

double one(double, double) { return 1.0; }

Eigen::MatrixXd dense(const tfde::CsrMatrix& a) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(Eigen::Index(a.n), Eigen::Index(a.n));
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) d(Eigen::Index(i), Eigen::Index(a.col[k])) = a.val[k];
    return d;
}

// Element matrices computed from the reference-element formulas, independently
// of the library's assembly loop.
struct Oracle {
    Eigen::MatrixXd mass;
    Eigen::MatrixXd stiff;
};

Oracle element_oracle(const StructuredMesh& m, const tfde::ScalarField& a) {
    const auto n = Eigen::Index(m.num_nodes());
    Oracle o{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    for (const auto& t : m.triangles()) {
        Eigen::Matrix3d p;
        for (int i = 0; i < 3; ++i) p.row(i) << 1.0, m.node(t[i]).x, m.node(t[i]).y;
        const double area = 0.5 * std::abs(p.determinant());
        const Eigen::Matrix3d c = p.inverse();  // columns: coefficients of each hat
        const double cx = (m.node(t[0]).x + m.node(t[1]).x + m.node(t[2]).x) / 3.0;
        const double cy = (m.node(t[0]).y + m.node(t[1]).y + m.node(t[2]).y) / 3.0;
        const double ac = a(cx, cy);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double grad = c(1, i) * c(1, j) + c(2, i) * c(2, j);
                o.stiff(Eigen::Index(t[i]), Eigen::Index(t[j])) += ac * area * grad;
                o.mass(Eigen::Index(t[i]), Eigen::Index(t[j])) += area * (i == j ? 1.0 / 6.0 : 1.0 / 12.0);
            }
        }
    }
    return o;
}

Eigen::MatrixXd restrict_interior(const StructuredMesh& m, const Eigen::MatrixXd& full) {
    const auto n = Eigen::Index(m.num_interior());
    Eigen::MatrixXd r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            r(i, j) = full(Eigen::Index(m.interior_node(std::size_t(i))), Eigen::Index(m.interior_node(std::size_t(j))));
    return r;
}

TEST(Assembly, SingleInteriorNode) {
    const StructuredMesh m(2);
    EXPECT_NEAR(tfde::assemble_mass(m).at(0, 0), 1.0 / 8.0, 1e-16);
    EXPECT_NEAR(tfde::assemble_laplacian(m).at(0, 0), 4.0, 1e-15);
}

class AssemblySizes : public ::testing::TestWithParam<int> {};

TEST_P(AssemblySizes, MatchesElementOracle) {
    const StructuredMesh m(GetParam());
    auto a = [](double x, double y) { return 1.0 + 0.5 * std::sin(kPi * x) * std::sin(kPi * y); };
    const auto o = element_oracle(m, a);
    const auto full_mass = dense(tfde::assemble_mass(m, tfde::DofSet::all_nodes));
    EXPECT_LE((full_mass - o.mass).cwiseAbs().maxCoeff(), 1e-15);
    const auto mass = dense(tfde::assemble_mass(m));
    EXPECT_LE((mass - restrict_interior(m, o.mass)).cwiseAbs().maxCoeff(), 1e-15);
    const auto stiff = dense(tfde::assemble_stiffness(m, a));
    EXPECT_LE((stiff - restrict_interior(m, o.stiff)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST_P(AssemblySizes, LaplacianIsFivePointStencil) {
    const int M = GetParam();
    const StructuredMesh m(M);
    const auto s = tfde::assemble_laplacian(m);
    for (std::size_t i = 0; i < m.num_interior(); ++i) {
        const auto pi = m.node(m.interior_node(i));
        for (std::size_t j = 0; j < m.num_interior(); ++j) {
            const auto pj = m.node(m.interior_node(j));
            const long di = std::lround((pj.x - pi.x) * M), dj = std::lround((pj.y - pi.y) * M);
            double want = 0.0;
            if (di == 0 && dj == 0) want = 4.0;
            else if (std::abs(di) + std::abs(dj) == 1) want = -1.0;
            EXPECT_NEAR(s.at(i, j), want, 1e-14) << i << ',' << j;
        }
    }
}

TEST_P(AssemblySizes, SymmetricAndPositiveDefinite) {
    const StructuredMesh m(GetParam());
    const auto mass = tfde::assemble_mass(m);
    const auto stiff = tfde::assemble_stiffness(m, [](double x, double y) { return 1.0 + x * y; });
    EXPECT_LE(mass.symmetry_defect(), 1e-14);
    EXPECT_LE(stiff.symmetry_defect(), 1e-14);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(mass.n);
        for (auto& v : x) v = g(rng);
        EXPECT_GT(tfde::dot(x, tfde::matvec(mass, x)), 0.0);
        EXPECT_GT(tfde::dot(x, tfde::matvec(stiff, x)), 0.0);
    }
}

TEST_P(AssemblySizes, FullMassSumsToArea) {
    const StructuredMesh m(GetParam());
    const auto full = tfde::assemble_mass(m, tfde::DofSet::all_nodes);
    double total = 0.0;
    for (double v : full.val) total += v;
    EXPECT_NEAR(total, 1.0, 1e-13);
    // Row sums are a third of the area of each node's patch.
    for (std::size_t i = 0; i < full.n; ++i) {
        double row = 0.0;
        for (std::size_t k = full.row_ptr[i]; k < full.row_ptr[i + 1]; ++k) row += full.val[k];
        int incident = 0;
        for (const auto& t : m.triangles()) incident += (t[0] == i) + (t[1] == i) + (t[2] == i);
        EXPECT_NEAR(row, incident * m.triangle_area() / 3.0, 1e-15);
    }
}

TEST_P(AssemblySizes, StiffnessLinearInCoefficient) {
    const StructuredMesh m(GetParam());
    auto a1 = [](double x, double y) { return 1.0 + x; };
    auto a2 = [](double x, double y) { return 2.0 + std::cos(y); };
    const auto s1 = tfde::assemble_stiffness(m, a1);
    const auto s2 = tfde::assemble_stiffness(m, a2);
    const auto s12 = tfde::assemble_stiffness(m, [&](double x, double y) { return a1(x, y) + a2(x, y); });
    const auto sum = tfde::linear_combination(1.0, s1, 1.0, s2);
    for (std::size_t k = 0; k < sum.nnz(); ++k) EXPECT_NEAR(s12.val[k], sum.val[k], 1e-13);
    const auto s3 = tfde::assemble_stiffness(m, [](double, double) { return 3.0; });
    const auto s = tfde::assemble_laplacian(m);
    for (std::size_t k = 0; k < s.nnz(); ++k) EXPECT_NEAR(s3.val[k], 3.0 * s.val[k], 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Sizes, AssemblySizes, ::testing::Values(2, 3, 4, 8));

TEST(Assembly, RejectsBadDiffusivity) {
    const StructuredMesh m(4);
    EXPECT_THROW((void)tfde::assemble_stiffness(m, [](double, double) { return 0.0; }), tfde::DomainError);
    EXPECT_THROW((void)tfde::assemble_stiffness(m, [](double x, double) { return x - 0.5; }), tfde::DomainError);
    EXPECT_THROW((void)tfde::assemble_stiffness(m, [](double, double) { return NAN; }), tfde::DomainError);
}

TEST(Assembly, LoadRejectsNonFinite) {
    const StructuredMesh m(4);
    EXPECT_THROW((void)tfde::assemble_load(m, [](double x, double) { return 1.0 / (x - 0.125); }),
                 tfde::EvaluationError);
}

TEST(Assembly, LoadIsExactForLinearData) {
    const StructuredMesh m(6);
    auto g = [](double x, double y) { return 2.0 - x + 3.0 * y; };
    const auto b = tfde::assemble_load(m, g);
    const auto full = dense(tfde::assemble_mass(m, tfde::DofSet::all_nodes));
    Eigen::VectorXd nodal(Eigen::Index(m.num_nodes()));
    for (std::size_t k = 0; k < m.num_nodes(); ++k) nodal(Eigen::Index(k)) = g(m.node(k).x, m.node(k).y);
    const Eigen::VectorXd want = full * nodal;
    for (std::size_t i = 0; i < m.num_interior(); ++i) EXPECT_NEAR(b[i], want(Eigen::Index(m.interior_node(i))), 1e-15);
}

TEST(Projection, L2ReproducesFieldsInVh) {
    const StructuredMesh m(6);
    std::vector<double> v(m.num_interior(), 0.0);
    v[7] = 1.0;
    const tfde::FieldP1 f(m, v);
    auto hat = [&](double x, double y) { return f.evaluate({x, y}); };
    const auto p = tfde::l2_project(m, hat);
    for (std::size_t i = 0; i < p.values.size(); ++i) EXPECT_NEAR(p.values[i], i == 7 ? 1.0 : 0.0, 1e-12);
}

TEST(Projection, L2CloseToInterpolant) {
    auto g = [](double x, double y) { return x * y * (1 - x) * (1 - y); };
    double prev = 0.0;
    for (int M : {16, 32, 64}) {
        const StructuredMesh m(M);
        const auto p = tfde::l2_project(m, g);
        const auto q = tfde::interpolate(m, g);
        double d = 0.0;
        for (std::size_t i = 0; i < p.values.size(); ++i) d = std::max(d, std::abs(p.values[i] - q.values[i]));
        EXPECT_LE(d, 0.5 / (double(M) * M));
        if (prev > 0.0) EXPECT_GT(std::log2(prev / d), 1.8);
        prev = d;
    }
}

TEST(Projection, L2OfOneNearCentreApproachesOne) {
    // Dense oracle solve of M x = b for g = 1.
    const StructuredMesh m(8);
    const auto mass = dense(tfde::assemble_mass(m));
    const auto b = tfde::assemble_load(m, one);
    const Eigen::VectorXd x = mass.llt().solve(Eigen::Map<const Eigen::VectorXd>(b.data(), Eigen::Index(b.size())));
    const auto p = tfde::l2_project(m, one);
    for (std::size_t i = 0; i < p.values.size(); ++i) EXPECT_NEAR(p.values[i], x(Eigen::Index(i)), 1e-11);
    double prev = 1.0;
    for (int M : {8, 16, 32}) {
        const StructuredMesh mm(M);
        const auto q = tfde::l2_project(mm, one);
        const double dev = std::abs(q.values[std::size_t(mm.interior_index(mm.node_id(M / 2, M / 2)))] - 1.0);
        EXPECT_LT(dev, 0.05);
        EXPECT_LT(dev, prev);
        prev = dev;
    }
}

TEST(Projection, RitzIsLinearAndScaleInvariant) {
    const StructuredMesh m(8);
    auto grad = [](double x, double y) {
        return std::array<double, 2>{(1 - 2 * x) * y * (1 - y), x * (1 - x) * (1 - 2 * y)};
    };
    auto grad2 = [&](double x, double y) {
        auto g = grad(x, y);
        return std::array<double, 2>{2.0 * g[0], 2.0 * g[1]};
    };
    const auto r1 = tfde::ritz_project(m, one, grad);
    const auto r2 = tfde::ritz_project(m, one, grad2);
    const auto r3 = tfde::ritz_project(m, [](double, double) { return 3.0; }, grad);
    for (std::size_t i = 0; i < r1.values.size(); ++i) {
        EXPECT_NEAR(r2.values[i], 2.0 * r1.values[i], 1e-14);
        EXPECT_NEAR(r3.values[i], r1.values[i], 1e-14);
    }
}

TEST(Projection, EnergyLoadExactForAffineGradients) {
    // g = x^2: grad g = (2x, 0) is affine, so (grad g, grad phi_i) is integrated
    // exactly; by parts it equals -(2, phi_i) for interior hats.
    const StructuredMesh m(6);
    const auto b = tfde::assemble_energy_load(m, one, [](double x, double) { return std::array<double, 2>{2.0 * x, 0.0}; });
    const auto two = tfde::assemble_load(m, [](double, double) { return 2.0; });
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(b[i], -two[i], 1e-15);
}

TEST(Projection, RitzOfZeroGradientIsZero) {
    const StructuredMesh m(6);
    const auto r = tfde::ritz_project(m, one, [](double, double) { return std::array<double, 2>{0.0, 0.0}; });
    for (double v : r.values) EXPECT_EQ(v, 0.0);
}

TEST(Projection, RitzConvergesAtSecondOrder) {
    auto g = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    auto grad = [](double x, double y) {
        return std::array<double, 2>{kPi * std::cos(kPi * x) * std::sin(kPi * y),
                                     kPi * std::sin(kPi * x) * std::cos(kPi * y)};
    };
    std::vector<double> errs;
    for (int M : {8, 16, 32}) {
        const StructuredMesh m(M);
        const auto r = tfde::ritz_project(m, one, grad);
        double e = 0.0;
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            const auto p = m.node(m.interior_node(i));
            e = std::max(e, std::abs(r.values[i] - g(p.x, p.y)));
        }
        errs.push_back(e);
    }
    EXPECT_GT(std::log2(errs[0] / errs[1]), 1.8);
    EXPECT_GT(std::log2(errs[1] / errs[2]), 1.8);
}

TEST(FieldP1, EvaluateInterpolatesAndVanishesOnBoundary) {
    const StructuredMesh m(4);
    auto g = [](double x, double y) { return x * (1 - x) * y * (1 - y); };
    const auto f = tfde::interpolate(m, g);
    EXPECT_EQ(f.evaluate({0.0, 0.3}), 0.0);
    EXPECT_EQ(f.evaluate({0.7, 1.0}), 0.0);
    for (std::size_t i = 0; i < m.num_interior(); ++i) {
        const auto p = m.node(m.interior_node(i));
        EXPECT_DOUBLE_EQ(f.evaluate(p), g(p.x, p.y));
    }
    // Linear along an edge between two nodes.
    const auto a = m.node(m.node_id(1, 1)), b = m.node(m.node_id(2, 1));
    EXPECT_NEAR(f.evaluate({0.5 * (a.x + b.x), a.y}), 0.5 * (g(a.x, a.y) + g(b.x, b.y)), 1e-15);
}

}  // namespace
