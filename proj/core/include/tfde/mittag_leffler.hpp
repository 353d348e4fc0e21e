#pragma once

namespace tfde {

/**
 * One-parameter Mittag-Leffler function on the negative real axis,
 * x -> E_alpha(-x) for x >= 0 and 0 < alpha <= 1.
 *
 * Three regimes, switched at fixed thresholds:
 *   x <= series_max            Taylor series, compensated long double sum;
 *   series_max < x < asymptotic_min
 *                              Laplace-type integral
 *                              sin(a pi)/(a pi) * int_0^inf exp(-v^(1/a)) x /
 *                              ((v + x cos a pi)^2 + (x sin a pi)^2) dv,
 *                              adaptive Gauss-Kronrod;
 *   x >= asymptotic_min        sum_{k>=1} (-1)^(k+1) x^-k / Gamma(1 - a k),
 *                              truncated at the smallest term.
 * alpha == 1 is evaluated as exp(-x) in every regime.
 */
class MittagLeffler {
public:
    struct Thresholds {
        double series_max = 1.0;
        double asymptotic_min = 50.0;
    };

    enum class Regime { series, integral, asymptotic };

    explicit MittagLeffler(double alpha);
    MittagLeffler(double alpha, Thresholds thresholds, double rel_tol = 1e-14);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const Thresholds& thresholds() const noexcept { return thresholds_; }

    /// E_alpha(-x). Throws InvalidArgument for negative or non-finite x.
    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] Regime regime(double x) const noexcept;

    // Individual regimes, exposed for cross-checks at the switch points.
    [[nodiscard]] double series(double x) const;
    [[nodiscard]] double integral(double x) const;
    [[nodiscard]] double asymptotic(double x) const;

private:
    double alpha_;
    Thresholds thresholds_;
    double rel_tol_;
};

}  // namespace tfde
