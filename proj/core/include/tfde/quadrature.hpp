#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tfde {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
[[nodiscard]] QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

/**
 * Globally adaptive Gauss-Kronrod (7/15) integration over [breaks.front(),
 * breaks.back()]. The interior break points seed the initial partition; the
 * interval with the largest error estimate is bisected until the total estimate
 * drops below max(abs_tol, rel_tol * |value|).
 */
[[nodiscard]] IntegrationResult integrate_adaptive(const std::function<double(double)>& f,
                                                   std::span<const double> breaks,
                                                   double rel_tol, double abs_tol = 0.0,
                                                   int max_intervals = 2000);

}  // namespace tfde
