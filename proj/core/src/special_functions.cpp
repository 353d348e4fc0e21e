#include "tfde/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tfde/errors.hpp"

namespace tfde {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coef{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum for Gamma(z + 1), z >= -0.5.
double lanczos_sum(double z) {
    double a = lanczos_coef[0];
    for (std::size_t i = 1; i < lanczos_coef.size(); ++i) a += lanczos_coef[i] / (z + double(i));
    return a;
}

bool is_pole(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double sinpi(double x) {
    double r = std::remainder(x, 2.0);  // in [-1, 1]
    if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(std::numbers::pi * r);
}

double gamma(double x) {
    if (std::isnan(x)) return x;
    if (is_pole(x)) {
        throw DomainError("gamma: pole at " + std::to_string(x));
    }
    if (x < 0.5) {
        return std::numbers::pi / (sinpi(x) * gamma(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + lanczos_g + 0.5;
    // t^(z+1/2) is split in two halves so the product does not overflow before
    // the exponential damps it.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double reciprocal_gamma(double x) {
    if (is_pole(x)) return 0.0;
    if (x < 0.5) {
        // 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
        return gamma(1.0 - x) * sinpi(x) / std::numbers::pi;
    }
    return 1.0 / gamma(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    }
    if (x < 0.5) {
        return std::log(std::numbers::pi / sinpi(x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(lanczos_sum(z));
}

}  // namespace tfde
