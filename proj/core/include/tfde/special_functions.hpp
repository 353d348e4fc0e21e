#pragma once

namespace tfde {

/// sin(pi x) with exact zeros at the integers.
[[nodiscard]] double sinpi(double x);

/// Gamma function (Lanczos, g = 7, with reflection below 1/2).
/// Throws DomainError at the poles 0, -1, -2, ...
[[nodiscard]] double gamma(double x);

/// 1/Gamma(x); zero at the poles.
[[nodiscard]] double reciprocal_gamma(double x);

/// log Gamma(x) for x > 0.
[[nodiscard]] double log_gamma(double x);

}  // namespace tfde
