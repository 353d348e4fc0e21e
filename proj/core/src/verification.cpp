#include "tfde/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfde/assembly.hpp"
#include "tfde/quadrature.hpp"
#include "tfde/reference_tables.hpp"
#include "tfde/special_functions.hpp"
#include "tfde/time_stepping.hpp"

namespace tfde {

namespace {

class Checker {
public:
    explicit Checker(std::string name) { report_.name = std::move(name); }

    void close(const std::string& what, double got, double want, double tol, bool relative) {
        ++report_.checks;
        const double scale = relative ? std::max(std::abs(want), 1e-300) : 1.0;
        const double dev = std::abs(got - want) / scale;
        if (!(dev <= tol)) {
            std::ostringstream s;
            s.precision(10);
            s << what << ": got " << got << ", want " << want << " (deviation " << dev
              << " > " << tol << ')';
            report_.failures.push_back(s.str());
        }
    }
    void expect(const std::string& what, bool ok) {
        ++report_.checks;
        if (!ok) report_.failures.push_back(what);
    }
    void guard(const std::exception& e) { report_.failures.push_back(std::string("exception: ") + e.what()); }
    SuiteReport take() { return std::move(report_); }

private:
    SuiteReport report_;
};

SuiteReport special_functions_suite(const VerifyOptions& opt) {
    Checker c("special-functions");
    try {
        double fact = 1.0;
        for (int k = 1; k <= 20; ++k) {
            c.close("gamma(" + std::to_string(k) + ")", gamma(k), fact, 1e-14, true);
            fact *= k;
        }
        const double sqrt_pi = std::sqrt(std::numbers::pi);
        c.close("gamma(1/2)", gamma(0.5), sqrt_pi, 1e-14, true);
        c.close("gamma(-1/2)", gamma(-0.5), -2.0 * sqrt_pi, 1e-14, true);
        c.close("1/gamma(-3)", reciprocal_gamma(-3.0), 0.0, 0.0, false);
        for (double x : {0.1, 0.3, 0.77, 2.5, 7.25}) {
            c.close("reflection at " + std::to_string(x), gamma(x) * gamma(1.0 - x) * sinpi(x),
                    std::numbers::pi, 1e-13, true);
        }

        const MittagLeffler e1(1.0, opt.ml_thresholds);
        for (double x = 0.0; x <= 50.0; x += 0.25) {
            c.close("E_1(-" + std::to_string(x) + ")", e1(x), std::exp(-x), 1e-12, true);
        }
        const MittagLeffler eh(0.5, opt.ml_thresholds);
        c.close("E_1/2(-1)", eh(1.0), std::numbers::e * std::erfc(1.0), 1e-10, true);
        for (double x = 0.0; x <= 20.0; x += 0.125) {
            c.close("E_1/2(-" + std::to_string(x) + ")", eh(x),
                    std::exp(x * x) * std::erfc(x), 1e-10, true);
        }
        for (double a : {0.25, 0.5, 0.75, 0.95}) {
            const MittagLeffler ml(a, opt.ml_thresholds);
            double prev = ml(0.0);
            c.close("E_a(0)", prev, 1.0, 0.0, false);
            bool monotone = true;
            for (double x = 1e-3; x <= 1e5; x *= 1.05) {
                const double v = ml(x);
                monotone = monotone && v <= prev && v > 0.0;
                prev = v;
            }
            c.expect("E_" + std::to_string(a) + "(-x) positive and non-increasing", monotone);
        }
    } catch (const std::exception& e) {
        c.guard(e);
    }
    return c.take();
}

SuiteReport ml_continuity_suite(const VerifyOptions& opt) {
    Checker c("ml-continuity");
    try {
        for (double a : {0.25, 0.5, 0.75, 0.95}) {
            const MittagLeffler ml(a, opt.ml_thresholds);
            const auto& th = ml.thresholds();
            const std::string tag = "alpha=" + std::to_string(a);
            // Each pair of adjacent regimes must agree at their common point.
            c.close(tag + " series/integral at " + std::to_string(th.series_max),
                    ml.series(th.series_max), ml.integral(th.series_max), 1e-9, true);
            c.close(tag + " integral/asymptotic at " + std::to_string(th.asymptotic_min),
                    ml.integral(th.asymptotic_min), ml.asymptotic(th.asymptotic_min), 1e-9, true);
            for (double x : {th.series_max, th.asymptotic_min}) {
                const double below = ml(std::nextafter(x, 0.0));
                const double above = ml(std::nextafter(x, 1e300));
                c.close(tag + " jump at " + std::to_string(x), above, below, 1e-9, true);
            }
        }
    } catch (const std::exception& e) {
        c.guard(e);
    }
    return c.take();
}

SuiteReport quadrature_suite() {
    Checker c("quadrature");
    try {
        const auto rule = gauss_legendre(6, 0.0, 2.0);
        for (int p = 0; p <= 11; ++p) {
            double s = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
            c.close("Gauss-Legendre x^" + std::to_string(p), s, std::pow(2.0, p + 1) / (p + 1), 1e-13, true);
        }
        const double breaks[] = {0.0, 1.0};
        const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, breaks, 1e-13);
        c.close("adaptive int sqrt", r.value, 2.0 / 3.0, 1e-12, true);

        for (double a : {0.3, 0.5, 0.75}) {
            const GradedTimeMesh tm(40, 1.6, 0.5);
            const FracWeights w(tm, a);
            const double g = gamma(a + 1.0);
            for (std::size_t n = 1; n <= tm.intervals(); ++n) {
                double s = 0.0;
                for (double b : w.row(n)) s += b;
                c.close("row sum n=" + std::to_string(n) + " alpha=" + std::to_string(a), s,
                        std::pow(tm.t(n), a) / g, 1e-12, true);
            }
            // Midpoint samples of v(t) = t against (I^a t)(1) = 1/Gamma(a+2).
            double prev_err = 0.0;
            for (std::size_t N : {20u, 40u, 80u}) {
                const GradedTimeMesh m(N, 1.0, 1.0);
                const FracWeights ww(m, a);
                std::vector<double> v(N);
                for (std::size_t j = 1; j <= N; ++j) v[j - 1] = 0.5 * (m.t(j - 1) + m.t(j));
                const double err = std::abs(ww.apply(N, v) - 1.0 / gamma(a + 2.0));
                if (prev_err > 0.0) c.expect("I^a t order >= 1 at N=" + std::to_string(N), std::log2(prev_err / err) >= 0.9);
                prev_err = err;
            }
        }
    } catch (const std::exception& e) {
        c.guard(e);
    }
    return c.take();
}

SuiteReport assembly_suite() {
    Checker c("assembly");
    try {
        // M = 2: a single interior node at (1/2, 1/2) with six incident triangles of area 1/8.
        const StructuredMesh m2(2);
        const auto mass = assemble_mass(m2);
        const auto stiff = assemble_laplacian(m2);
        c.close("M=2 mass", mass.at(0, 0), 1.0 / 8.0, 1e-15, false);
        c.close("M=2 stiffness", stiff.at(0, 0), 4.0, 1e-14, false);

        for (int M : {3, 4, 8}) {
            const StructuredMesh mesh(M);
            const auto full = assemble_mass(mesh, DofSet::all_nodes);
            double total = 0.0;
            for (double v : full.val) total += v;
            c.close("sum of mass entries M=" + std::to_string(M), total, 1.0, 1e-13, false);

            const auto s = assemble_laplacian(mesh);
            // On this mesh the P1 Laplacian is the five-point stencil.
            bool stencil = true;
            for (std::size_t i = 0; i < s.n; ++i) {
                for (std::size_t k = s.row_ptr[i]; k < s.row_ptr[i + 1]; ++k) {
                    const Point a = mesh.node(mesh.interior_node(i));
                    const Point b = mesh.node(mesh.interior_node(s.col[k]));
                    const bool axis_neighbour = std::abs(std::abs(a.x - b.x) + std::abs(a.y - b.y) - 1.0 / M) < 1e-12;
                    const double want = s.col[k] == i ? 4.0 : (axis_neighbour ? -1.0 : 0.0);
                    stencil = stencil && std::abs(s.val[k] - want) < 1e-13;
                }
            }
            c.expect("five-point stiffness M=" + std::to_string(M), stencil);

            // g linear makes g * phi_i quadratic, so the load equals the full mass matrix on nodal g.
            auto lin = [](double x, double y) { return 1.0 + 2.0 * x + 3.0 * y; };
            const auto b = assemble_load(mesh, lin);
            std::vector<double> nodal(mesh.num_nodes());
            for (std::size_t k = 0; k < nodal.size(); ++k) nodal[k] = lin(mesh.node(k).x, mesh.node(k).y);
            const auto mf = matvec(full, nodal);
            double dev = 0.0;
            for (std::size_t k = 0; k < mesh.num_interior(); ++k) {
                dev = std::max(dev, std::abs(b[k] - mf[mesh.interior_node(k)]));
            }
            c.close("load of a linear field M=" + std::to_string(M), dev, 0.0, 1e-15, false);
        }
    } catch (const std::exception& e) {
        c.guard(e);
    }
    return c.take();
}

// Dense Gaussian elimination with partial pivoting; a is row-major n x n.
std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] / a[k * n + k];
            for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            b[i] -= f * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * b[j];
        b[k] = s / a[k * n + k];
    }
    return b;
}

std::vector<double> to_dense(const CsrMatrix& m) {
    std::vector<double> d(m.n * m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) d[i * m.n + m.col[k]] = m.val[k];
    }
    return d;
}

SuiteReport alpha_one_suite() {
    Checker c("alpha-one-limit");
    try {
        const int M = 8;
        const std::size_t N = 50;
        const double alpha = 1.0 - 1e-12;
        const StructuredMesh mesh(M);
        const auto mass = assemble_mass(mesh);
        const auto stiff = assemble_laplacian(mesh);
        const GradedTimeMesh tm(N, 1.0, 0.5);
        const FracWeights w(tm, alpha);
        const auto u0 = l2_project(mesh, [](double x, double y) { return x * y * (1 - x) * (1 - y); });

        const SchemeOperators ops{mass, stiff, tm, w, {SolverMethod::cholesky, 1e-14, 10000}};
        SchemeState state = initial_state(u0.values);

        const std::size_t n = mass.n;
        const auto md = to_dense(mass);
        const auto sd = to_dense(stiff);
        std::vector<double> v = u0.values;
        double worst = 0.0;
        for (std::size_t k = 1; k <= N; ++k) {
            const double tau = tm.step(k);
            const double theta = k == 1 ? 1.0 : 0.5;
            std::vector<double> lhs(n * n);
            for (std::size_t i = 0; i < n * n; ++i) lhs[i] = md[i] + theta * tau * sd[i];
            std::vector<double> rhs(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    rhs[i] += (md[i * n + j] - (1.0 - theta) * tau * sd[i * n + j]) * v[j];
                }
            }
            v = dense_solve(lhs, rhs);
            const auto& u = step(state, ops);
            for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(u[i] - v[i]));
        }
        c.close("max deviation from Crank-Nicolson", worst, 0.0, 1e-10, false);
    } catch (const std::exception& e) {
        c.guard(e);
    }
    return c.take();
}

SuiteReport rate_convention_suite() {
    Checker c("rate-convention");
    for (const auto& table : reference::kTables) {
        for (std::size_t col = 0; col < table.columns.size(); ++col) {
            const auto& column = table.columns[col];
            for (std::size_t i = 0; i < column.rates.size(); ++i) {
                double printed = column.rates[i];
                for (const auto& mp : reference::kMisprints) {
                    if (mp.table == table.name && mp.column == col && mp.index == i) printed = mp.corrected;
                }
                std::ostringstream what;
                what << table.name << " mu=" << column.mu << " M=" << table.M[i + 1];
                c.close(what.str(), std::log2(column.errors[i] / column.errors[i + 1]), printed, 2e-3, false);
            }
        }
    }
    return c.take();
}

}  // namespace

std::vector<SuiteReport> run_verification(const VerifyOptions& options) {
    std::vector<SuiteReport> out;
    out.push_back(special_functions_suite(options));
    out.push_back(ml_continuity_suite(options));
    out.push_back(quadrature_suite());
    out.push_back(assembly_suite());
    out.push_back(alpha_one_suite());
    out.push_back(rate_convention_suite());
    return out;
}

bool print_verification(std::ostream& out, const std::vector<SuiteReport>& reports) {
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.passed();
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks";
        if (!r.passed()) out << ", " << r.failures.size() << " failed";
        out << ")\n";
        for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) out << "    " << r.failures[i] << '\n';
        if (r.failures.size() > 5) out << "    ... " << r.failures.size() - 5 << " more\n";
    }
    return ok;
}

}  // namespace tfde
