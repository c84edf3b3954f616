#include "fplab/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fplab {

double bessel_kernel(int N, double alpha, double r, int panels) {
    if (!(alpha > 0.0 && alpha < N)) throw std::invalid_argument("bessel: need 0 < alpha < N");
    if (!(r > 0.0)) throw std::invalid_argument("bessel: r = 0 is singular");
    if (panels < 16) throw std::invalid_argument("bessel: need >= 16 panels");

    // integrand exp(-r^2/(4t) - t) peaks at t* = r/2; the log window below
    // covers both the small-t Gaussian cutoff and the large-t decay
    const double nu = 0.5 * (alpha - N) - 1.0;
    const double t_star = 0.5 * r;
    const double t_lo = std::min(t_star, 0.25 * r * r) / 400.0;
    const double t_hi = std::max(t_star, 1.0) + 60.0;

    auto f = [&](double u) {  // u = log t substitution: dt = t du
        double t = std::exp(u);
        return std::exp(nu * u - 0.25 * r * r / t - t) * t;
    };
    const double a = std::log(t_lo), b = std::log(t_hi);
    const int n = 2 * panels;  // composite Simpson needs an even count
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    double integral = acc * h / 3.0;

    double c = std::pow(4.0 * std::numbers::pi, -0.5 * N) / std::tgamma(0.5 * alpha);
    return c * integral;
}

}  // namespace fplab
