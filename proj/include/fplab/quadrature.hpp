#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fplab {

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int max_depth = 40) {
    auto simpson = [&](double lo, double hi, double flo, double fmid, double fhi) {
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    };
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
            int depth) -> double {
        double m = 0.5 * (lo + hi);
        double fl = f(0.5 * (lo + m)), fr = f(0.5 * (m + hi));
        double left = simpson(lo, m, flo, fl, fmid);
        double right = simpson(m, hi, fmid, fr, fhi);
        if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, m, flo, fl, fmid, left, 0.5 * eps, depth - 1) +
               rec(m, hi, fmid, fr, fhi, right, 0.5 * eps, depth - 1);
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, max_depth);
}

struct ImproperResult {
    double value = 0.0;
    bool divergent = false;
};

/// Integral of a nonnegative integrand over [a, infinity) by dyadic blocks
/// [a 2^k, a 2^{k+1}] with divergence detection: the blocks of a convergent
/// integral decay geometrically, so nondecaying blocks (or a partial sum past
/// the cap) signal divergence.
inline ImproperResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                            double tol = 1e-9, double cap = 1e14,
                                            int max_blocks = 2000) {
    if (!(a > 0.0)) throw std::invalid_argument("integrate_to_infinity: need a > 0");
    ImproperResult out;
    double lo = a;
    double prev_block = -1.0, prev_ratio = -1.0;
    int flat = 0, stable = 0;
    for (int k = 0; k < max_blocks && lo < 1e300; ++k) {
        double hi = 2.0 * lo;
        double block = adaptive_simpson(f, lo, hi, tol * std::max(1.0, out.value) / 64.0);
        out.value += block;
        if (out.value > cap) {
            out.divergent = true;
            return out;
        }
        if (prev_block > 0.0 && block > 0.0) {
            double ratio = block / prev_block;
            if (ratio >= 1.0) {
                stable = 0;
                if (++flat >= 8) {
                    out.divergent = true;
                    return out;
                }
            } else {
                flat = 0;
                double remaining = block * ratio / (1.0 - ratio);
                if (remaining <= tol * std::max(1.0, out.value)) {
                    out.value += remaining;
                    return out;
                }
                // a settled geometric ratio lets the tail be summed in closed form
                if (prev_ratio > 0.0 && std::abs(ratio - prev_ratio) <= 1e-6 * ratio) {
                    if (++stable >= 4) {
                        out.value += remaining;
                        return out;
                    }
                } else {
                    stable = 0;
                }
            }
            prev_ratio = ratio;
        } else if (prev_block == 0.0 && block == 0.0) {
            return out;
        }
        prev_block = block;
        lo = hi;
    }
    out.divergent = true;  // never settled
    return out;
}

}  // namespace fplab
