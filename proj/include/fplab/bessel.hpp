#pragma once

namespace fplab {

/// Bessel kernel G_alpha(r) in R^N through the heat-semigroup subordination
///   G_alpha(r) = c int_0^inf t^{(alpha-N)/2 - 1} exp(-r^2/(4t) - t) dt,
/// c = (4 pi)^{-N/2} / Gamma(alpha/2). Positive, strictly decreasing,
/// ~ r^{alpha-N} as r -> 0 and exponentially small for large r.
/// Quadrature on a log-spaced grid in t (composite Simpson, `panels` panels).
double bessel_kernel(int N, double alpha, double r, int panels = 200);

}  // namespace fplab
