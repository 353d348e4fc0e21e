#include "tfde/reference_solution.hpp"

#include <cmath>
#include <numbers>

#include "tfde/errors.hpp"
#include "tfde/quadrature.hpp"

namespace tfde {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pi2 = pi * pi;

double odd_factor(int m) { return (m % 2 == 1) ? 2.0 : 0.0; }  // 1 - (-1)^m

double tent(double s) { return s <= 0.5 ? s : 1.0 - s; }
double tent_slope(double s) { return s <= 0.5 ? 1.0 : -1.0; }

}  // namespace

InitialDatum InitialDatum::example1() {
    InitialDatum d;
    d.kind = DatumKind::example1;
    d.value = [](double x, double y) { return x * y * (1.0 - x) * (1.0 - y); };
    d.gradient = [](double x, double y) -> std::array<double, 2> {
        return {(1.0 - 2.0 * x) * y * (1.0 - y), x * (1.0 - x) * (1.0 - 2.0 * y)};
    };
    d.coefficient = [](int m, int n) {
        const double mn = m * n * pi2;
        return 8.0 * odd_factor(m) * odd_factor(n) / (mn * mn * mn);
    };
    return d;
}

InitialDatum InitialDatum::example2() {
    InitialDatum d;
    d.kind = DatumKind::example2;
    d.value = [](double x, double y) { return tent(x) * tent(y); };
    d.gradient = [](double x, double y) -> std::array<double, 2> {
        return {tent_slope(x) * tent(y), tent(x) * tent_slope(y)};
    };
    d.coefficient = [](int m, int n) {
        if (m % 2 == 0 || n % 2 == 0) return 0.0;
        const double mn = m * n * pi2;
        // sin(m pi/2) sin(n pi/2) for odd m, n
        const double sign = (((m - 1) / 2 + (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        return 2.0 * odd_factor(m) * odd_factor(n) * sign / (mn * mn);
    };
    return d;
}

InitialDatum InitialDatum::example3() {
    InitialDatum d;
    d.kind = DatumKind::example3;
    d.value = [](double, double) { return 1.0; };
    d.coefficient = [](int m, int n) { return 2.0 * odd_factor(m) * odd_factor(n) / (m * n * pi2); };
    return d;
}

InitialDatum InitialDatum::custom(ScalarField value, std::optional<GradientField> gradient) {
    InitialDatum d;
    d.kind = DatumKind::custom;
    d.value = std::move(value);
    d.gradient = std::move(gradient);
    return d;
}

InitialDatum InitialDatum::from_name(const std::string& name) {
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "example3") return example3();
    if (name == "zero") {
        return custom([](double, double) { return 0.0; },
                      [](double, double) -> std::array<double, 2> { return {0.0, 0.0}; });
    }
    throw InvalidArgument("unknown initial datum '" + name +
                          "' (expected example1, example2, example3 or zero)");
}

std::string to_string(DatumKind kind) {
    switch (kind) {
        case DatumKind::example1:
            return "example1";
        case DatumKind::example2:
            return "example2";
        case DatumKind::example3:
            return "example3";
        case DatumKind::custom:
            return "custom";
    }
    return "custom";
}

SeriesSolution make_series(const InitialDatum& datum, double alpha, int modes) {
    if (modes < 1) throw InvalidArgument("make_series: mode cutoff must be >= 1");
    SeriesSolution s;
    s.alpha = alpha;
    s.modes = modes;
    const auto k = static_cast<std::size_t>(modes);
    s.coefficients.assign(k * k, 0.0);
    s.eigenvalues.assign(k * k, 0.0);
    for (int m = 1; m <= modes; ++m) {
        for (int n = 1; n <= modes; ++n) {
            s.eigenvalues[static_cast<std::size_t>((m - 1) * modes + (n - 1))] = (m * m + n * n) * pi2;
        }
    }

    if (datum.coefficient) {
        for (int m = 1; m <= modes; ++m) {
            for (int n = 1; n <= modes; ++n) {
                s.coefficients[static_cast<std::size_t>((m - 1) * modes + (n - 1))] = datum.coefficient(m, n);
            }
        }
        return s;
    }

    // C_mn = 2 sum_a sum_b w_a w_b u0(x_a, y_b) sin(m pi x_a) sin(n pi y_b)
    const QuadratureRule rule = gauss_legendre(4 * modes, 0.0, 1.0);
    const std::size_t q = rule.nodes.size();
    std::vector<double> sines(q * k);  // sines[a*K + m-1] = w_a sin(m pi x_a)
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t m = 0; m < k; ++m) {
            sines[a * k + m] = rule.weights[a] * std::sin(double(m + 1) * pi * rule.nodes[a]);
        }
    }
    std::vector<double> values(q * q);  // values[a*q + b] = u0(x_a, y_b)
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) values[a * q + b] = datum.value(rule.nodes[a], rule.nodes[b]);
    }
    std::vector<double> partial(q * k, 0.0);  // partial[a*K + n] = sum_b values(a, b) sines(b, n)
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            const double v = values[a * q + b];
            for (std::size_t n = 0; n < k; ++n) partial[a * k + n] += v * sines[b * k + n];
        }
    }
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t n = 0; n < k; ++n) {
            double acc = 0.0;
            for (std::size_t a = 0; a < q; ++a) acc += sines[a * k + m] * partial[a * k + n];
            s.coefficients[m * k + n] = 2.0 * acc;
        }
    }
    return s;
}

GridEvaluator::GridEvaluator(SeriesSolution solution, std::vector<double> xs, std::vector<double> ys,
                             MittagLeffler::Thresholds thresholds)
    : sol_(std::move(solution)), xs_(std::move(xs)), ys_(std::move(ys)),
      ml_(sol_.alpha, thresholds) {
    const auto k = static_cast<std::size_t>(sol_.modes);
    auto table = [k](const std::vector<double>& pts) {
        std::vector<double> t(pts.size() * k);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t m = 0; m < k; ++m) t[i * k + m] = std::sin(double(m + 1) * pi * pts[i]);
        }
        return t;
    };
    sx_ = table(xs_);
    sy_ = table(ys_);
}

std::vector<double> GridEvaluator::modal_factors(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidArgument("eval_grid: time must be finite and >= 0");
    }
    const double ta = t == 0.0 ? 0.0 : std::pow(t, sol_.alpha);
    std::vector<double> d(sol_.coefficients.size(), 0.0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double c = sol_.coefficients[i];
        if (c == 0.0) continue;
        const double e = ml_(sol_.eigenvalues[i] * ta);
        if (!std::isfinite(e)) throw EvaluationError("eval_grid: non-finite Mittag-Leffler value");
        d[i] = 2.0 * c * e;
    }
    return d;
}

GridValues GridEvaluator::evaluate(double t) const {
    const auto k = static_cast<std::size_t>(sol_.modes);
    const std::vector<double> d = modal_factors(t);
    const std::size_t nx = xs_.size();
    const std::size_t ny = ys_.size();

    // w(m, j) = sum_n D(m, n) Sy(j, n)
    std::vector<double> w(k * ny, 0.0);
    for (std::size_t m = 0; m < k; ++m) {
        const double* dm = d.data() + m * k;
        bool any = false;
        for (std::size_t n = 0; n < k; ++n) any = any || dm[n] != 0.0;
        if (!any) continue;
        for (std::size_t j = 0; j < ny; ++j) {
            const double* syj = sy_.data() + j * k;
            double acc = 0.0;
            for (std::size_t n = 0; n < k; ++n) acc += dm[n] * syj[n];
            w[m * ny + j] = acc;
        }
    }
    GridValues g;
    g.nx = nx;
    g.ny = ny;
    g.values.assign(nx * ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        const double* sxi = sx_.data() + i * k;
        for (std::size_t m = 0; m < k; ++m) {
            const double s = sxi[m];
            if (s == 0.0) continue;
            const double* wm = w.data() + m * ny;
            for (std::size_t j = 0; j < ny; ++j) g.values[j * nx + i] += s * wm[j];
        }
    }
    return g;
}

GridValues eval_grid(const SeriesSolution& solution, double t, std::span<const double> xs,
                     std::span<const double> ys) {
    const GridEvaluator ev(solution, {xs.begin(), xs.end()}, {ys.begin(), ys.end()});
    return ev.evaluate(t);
}

double eval_point(const SeriesSolution& solution, double t, double x, double y) {
    const MittagLeffler ml(solution.alpha);
    const double ta = t == 0.0 ? 0.0 : std::pow(t, solution.alpha);
    double u = 0.0;
    for (int m = 1; m <= solution.modes; ++m) {
        for (int n = 1; n <= solution.modes; ++n) {
            const double c = solution.coefficient(m, n);
            if (c == 0.0) continue;
            u += c * ml(solution.eigenvalue(m, n) * ta) * 2.0 * std::sin(m * pi * x) * std::sin(n * pi * y);
        }
    }
    return u;
}

}  // namespace tfde
