#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfde/assembly.hpp"
#include "tfde/mittag_leffler.hpp"

namespace tfde {

enum class DatumKind { example1, example2, example3, custom };

/**
 * Initial datum u0 on the unit square. The three benchmark data carry their
 * closed-form sine coefficients (u0, phi_mn) with phi_mn = 2 sin(m pi x) sin(n pi y):
 *   example1  u0 = x y (1-x)(1-y)      8 (1-(-1)^m)(1-(-1)^n) / (m n pi^2)^3
 *   example2  u0 = T(x) T(y), T(s) = min(s, 1-s)
 *                                      2 (1-(-1)^m)(1-(-1)^n) s_m s_n / (m n pi^2)^2,
 *                                      s_m = sin(m pi / 2)
 *   example3  u0 = 1                   2 (1-(-1)^m)(1-(-1)^n) / (m n pi^2)
 */
struct InitialDatum {
    DatumKind kind = DatumKind::custom;
    ScalarField value;
    /// Present when u0 vanishes on the boundary and is (piecewise) smooth.
    std::optional<GradientField> gradient;
    /// Closed-form (u0, phi_mn); empty for custom data.
    std::function<double(int m, int n)> coefficient;

    static InitialDatum example1();
    static InitialDatum example2();
    static InitialDatum example3();
    static InitialDatum custom(ScalarField value, std::optional<GradientField> gradient = std::nullopt);
    /// "example1" | "example2" | "example3" | "zero"; throws InvalidArgument otherwise.
    static InitialDatum from_name(const std::string& name);
};

[[nodiscard]] std::string to_string(DatumKind kind);

/// u(x, y, t) = sum_{m,n=1}^{K} C_mn E_alpha(-lambda_mn t^alpha) phi_mn(x, y).
struct SeriesSolution {
    double alpha = 1.0;
    int modes = 0;
    std::vector<double> coefficients;  // C_mn at (m-1)*K + (n-1)
    std::vector<double> eigenvalues;   // lambda_mn = (m^2 + n^2) pi^2, same layout

    [[nodiscard]] double coefficient(int m, int n) const {
        return coefficients[static_cast<std::size_t>((m - 1) * modes + (n - 1))];
    }
    [[nodiscard]] double eigenvalue(int m, int n) const {
        return eigenvalues[static_cast<std::size_t>((m - 1) * modes + (n - 1))];
    }
};

/// Coefficients from the closed form, or by a tensor Gauss-Legendre rule with
/// 4K points per axis for custom data.
[[nodiscard]] SeriesSolution make_series(const InitialDatum& datum, double alpha, int modes);

/// Values on a tensor lattice; value(i, j) is u(xs[i], ys[j]).
struct GridValues {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;  // j * nx + i

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
};

/**
 * Separable evaluation Sx * D(t) * Sy^T of a series solution on a fixed tensor
 * lattice, with sine tables cached at construction.
 */
class GridEvaluator {
public:
    GridEvaluator(SeriesSolution solution, std::vector<double> xs, std::vector<double> ys,
                  MittagLeffler::Thresholds thresholds = {});

    /// Throws InvalidArgument for t < 0, EvaluationError on non-finite values.
    [[nodiscard]] GridValues evaluate(double t) const;
    /// 2 C_mn E_alpha(-lambda_mn t^alpha), layout as SeriesSolution.
    [[nodiscard]] std::vector<double> modal_factors(double t) const;

    [[nodiscard]] const SeriesSolution& solution() const noexcept { return sol_; }

private:
    SeriesSolution sol_;
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> sx_;  // xs.size() x K, sin(m pi x)
    std::vector<double> sy_;  // ys.size() x K
    MittagLeffler ml_;
};

[[nodiscard]] GridValues eval_grid(const SeriesSolution& solution, double t,
                                   std::span<const double> xs, std::span<const double> ys);

/// Direct pointwise summation (no separable factorisation).
[[nodiscard]] double eval_point(const SeriesSolution& solution, double t, double x, double y);

}  // namespace tfde
