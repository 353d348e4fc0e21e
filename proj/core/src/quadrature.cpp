#include "tfde/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "tfde/errors.hpp"

namespace tfde {

QuadratureRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw InvalidArgument("gauss_legendre: need at least one node");
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration on P_n from the Chebyshev-like initial guess.
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = mid - half * z;
        rule.nodes[hi] = mid + half * z;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    return rule;
}

namespace {

constexpr std::array<double, 8> kronrod_x{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kronrod_w{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kronrod_x[1], [3], [5], [7].
constexpr std::array<double, 4> gauss_w{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = kronrod_w[7] * fc;
    double g = gauss_w[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_x[static_cast<std::size_t>(i)];
        const double s = f(c - dx) + f(c + dx);
        k += kronrod_w[static_cast<std::size_t>(i)] * s;
        if (i % 2 == 1) g += gauss_w[static_cast<std::size_t>(i / 2)] * s;
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace

IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                     std::span<const double> breaks, double rel_tol,
                                     double abs_tol, int max_intervals) {
    if (breaks.size() < 2) throw InvalidArgument("integrate_adaptive: need at least two break points");
    std::priority_queue<Segment> heap;
    IntegrationResult res;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        Segment s = kronrod15(f, breaks[i], breaks[i + 1]);
        res.evaluations += 15;
        value += s.value;
        error += s.error;
        heap.push(s);
    }
    while (!heap.empty() && static_cast<int>(heap.size()) < max_intervals &&
           error > std::max(abs_tol, rel_tol * std::abs(value))) {
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = kronrod15(f, worst.a, mid);
        const Segment right = kronrod15(f, mid, worst.b);
        res.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum from the final partition to shed the running-update rounding.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(value)) throw EvaluationError("integrate_adaptive: non-finite integral");
    res.value = value;
    res.error_estimate = error;
    return res;
}

}  // namespace tfde
