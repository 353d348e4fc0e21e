#include "tfde/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tfde/errors.hpp"
#include "tfde/quadrature.hpp"
#include "tfde/special_functions.hpp"

namespace tfde {

MittagLeffler::MittagLeffler(double alpha) : MittagLeffler(alpha, Thresholds{}) {}

MittagLeffler::MittagLeffler(double alpha, Thresholds thresholds, double rel_tol)
    : alpha_(alpha), thresholds_(thresholds), rel_tol_(rel_tol) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InvalidArgument("MittagLeffler: alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    if (!(thresholds.series_max >= 0.0 && thresholds.asymptotic_min >= thresholds.series_max)) {
        throw InvalidArgument("MittagLeffler: thresholds must satisfy 0 <= series_max <= asymptotic_min");
    }
}

MittagLeffler::Regime MittagLeffler::regime(double x) const noexcept {
    if (x <= thresholds_.series_max) return Regime::series;
    if (x < thresholds_.asymptotic_min) return Regime::integral;
    return Regime::asymptotic;
}

double MittagLeffler::operator()(double x) const {
    if (!std::isfinite(x) || x < 0.0) {
        throw InvalidArgument("MittagLeffler: argument must be finite and >= 0, got " + std::to_string(x));
    }
    if (alpha_ == 1.0) return std::exp(-x);
    switch (regime(x)) {
        case Regime::series:
            return series(x);
        case Regime::integral:
            return integral(x);
        case Regime::asymptotic:
            return asymptotic(x);
    }
    return 0.0;
}

double MittagLeffler::series(double x) const {
    if (x == 0.0) return 1.0;
    // Kahan-compensated sum of (-x)^p / Gamma(alpha p + 1).
    long double sum = 1.0L;
    long double comp = 0.0L;
    const long double lx = std::log(static_cast<long double>(x));
    int small_run = 0;
    for (int p = 1; p < 5000; ++p) {
        const double arg = alpha_ * p + 1.0;
        long double mag;
        if (arg < 170.0 && p * lx < 11000.0L) {
            mag = std::pow(static_cast<long double>(x), p) * reciprocal_gamma(arg);
        } else {
            mag = std::exp(p * lx - static_cast<long double>(log_gamma(arg)));
        }
        const long double term = (p % 2 == 0) ? mag : -mag;
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        // Terms decay monotonically once alpha p exceeds x^(1/alpha); require a
        // few consecutive negligible terms before stopping.
        if (mag < 1e-21L * std::abs(sum)) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
    }
    return static_cast<double>(sum);
}

double MittagLeffler::integral(double x) const {
    if (alpha_ == 1.0) return std::exp(-x);
    if (x == 0.0) return 1.0;
    const double a = alpha_;
    const double c = std::cos(a * std::numbers::pi);
    const double s = std::sin(a * std::numbers::pi);
    const double inv_a = 1.0 / a;
    const double xc = x * c;
    const double xs = x * s;
    auto integrand = [=](double v) {
        const double shifted = v + xc;
        return std::exp(-std::pow(v, inv_a)) * x / (shifted * shifted + xs * xs);
    };
    // exp(-v^(1/a)) < 3e-20 beyond the cut.
    const double cut = std::pow(45.0, a);
    std::vector<double> breaks{0.0, cut};
    for (double b : {0.25, 0.5, 1.0, 2.0, 4.0}) breaks.push_back(std::pow(b, a));
    if (c < 0.0) {
        const double peak = -xc;
        for (double k : {-4.0, -1.0, 0.0, 1.0, 4.0}) breaks.push_back(peak + k * xs);
    }
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double b) { return !(b >= 0.0 && b <= cut); }),
                 breaks.end());
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const IntegrationResult r = integrate_adaptive(integrand, breaks, rel_tol_, 0.0, 4000);
    return s / (a * std::numbers::pi) * r.value;
}

double MittagLeffler::asymptotic(double x) const {
    if (alpha_ == 1.0) return std::exp(-x);
    if (!(x > 0.0)) {
        throw InvalidArgument("MittagLeffler::asymptotic: requires x > 0");
    }
    const double inv_x = 1.0 / x;
    double power = 1.0;
    double sum = 0.0;
    // Truncate at the smallest term of the envelope Gamma(a k) x^-k, which is
    // unimodal in k; the oscillating sin factor is left out of the test.
    double prev_envelope = INFINITY;
    for (int k = 1; k <= 400; ++k) {
        power *= inv_x;
        const double ak = alpha_ * k;
        if (ak > 170.0) break;
        const double envelope = gamma(ak) * power;
        if (envelope > prev_envelope) break;
        prev_envelope = envelope;
        // 1/Gamma(1 - a k) = Gamma(a k) sin(pi a k) / pi
        const double term = ((k % 2 == 1) ? 1.0 : -1.0) * envelope * sinpi(ak) / std::numbers::pi;
        sum += term;
        if (envelope < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace tfde
