#include "fplab/absorption.hpp"

#include "fplab/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fplab {

SubcriticalResult subcritical_check(const Nonlinearity& g, int N, double s, double p) {
    if (!(s > 0.0 && s < 1.0 && p > 1.0 && p < N / s))
        throw std::invalid_argument("subcritical_check: invalid (N, s, p)");
    SubcriticalResult out;
    out.exponent = N * (p - 1.0) / (N - s * p);
    auto integrand = [&](double t) {
        return (g.g(t) - g.g(-t)) * std::pow(t, -out.exponent - 1.0);
    };
    ImproperResult r = integrate_to_infinity(integrand, 1.0);
    out.verdict = r.divergent ? Criticality::Supercritical : Criticality::Subcritical;
    out.lambda_g = r.divergent ? std::numeric_limits<double>::infinity() : r.value;
    return out;
}

namespace {

// smallest c with sign * u <= c * W nodewise (0 when the positive side is empty)
double sandwich_fit(const DiscreteDomain& d, const Eigen::VectorXd& u, const Eigen::VectorXd& W,
                    double sign) {
    double c = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        double v = sign * u(i);
        if (v <= 0.0) continue;
        if (W(i) <= 0.0) return std::numeric_limits<double>::infinity();
        c = std::max(c, v / W(i));
    }
    return c;
}

bool unbounded(const Nonlinearity& g) {
    if (g.is_zero()) return false;
    // truncated variants are bounded by construction
    return g.truncation_level() == 0.0 && g.is_power();
}

SolveReport truncated_scheme(const DiscreteDomain& d, const KernelTable& table,
                             const Nonlinearity& g, const MeasureData& mu,
                             const SolveOptions& opts, std::vector<double>* level_l1,
                             double kappa, bool* diverged, int max_levels,
                             double* final_level = nullptr) {
    SolveReport rep;
    Eigen::VectorXd prev;
    double level = 1.0;
    bool stabilized = false;
    for (int n = 0; n < max_levels; ++n, level *= 2.0) {
        if (final_level) *final_level = level;
        SolveOptions lv = opts;
        lv.diagnostics = false;
        rep = minimize_J(d, table, Nonlinearity::truncated(g, level), mu, lv);
        if (level_l1) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < d.n_interior; ++i)
                acc += std::pow(std::abs(rep.u(i)), kappa) * d.weights(i);
            level_l1->push_back(acc);
        }
        // stabilization requires the iterate to settle AND the current level
        // to dominate the untruncated absorption term; otherwise two
        // consecutive iterates can agree simply because the clamped g is
        // negligible at both levels while the ladder is far below g(u).
        double gmax = 0.0;
        for (Eigen::Index i = 0; i < d.n_interior; ++i)
            gmax = std::max(gmax, std::abs(g.g(rep.u(i))));
        if (prev.size() > 0) {
            double diff = (rep.u - prev).lpNorm<Eigen::Infinity>();
            double scale = std::max(rep.u.lpNorm<Eigen::Infinity>(), 1e-300);
            if (diff <= 0.01 * scale && gmax <= level) {
                stabilized = true;
                break;
            }
        }
        prev = rep.u;
    }
    if (diverged) *diverged = !stabilized;
    return rep;
}

}  // namespace

AbsorptionResult run_absorption(const DiscreteDomain& d, const KernelTable& table,
                                const Nonlinearity& g, const MeasureData& mu,
                                const WolffQuery& q, const SeminormSpec& spec,
                                const SolveOptions& opts) {
    AbsorptionResult out;
    out.verdict = subcritical_check(g, d.dim, table.spec.s, table.spec.p);

    if (unbounded(g))
        out.report = truncated_scheme(d, table, g, mu, opts, nullptr, g.power_exponent(),
                                      nullptr, 10);
    else
        out.report = minimize_J(d, table, g, mu, opts);

    const double pm1 = table.spec.p - 1.0;
    out.wolff_plus = wolff_field(d, mu.positive_part(d), q);
    out.wolff_minus = wolff_field(d, mu.negative_part(d), q);
    out.c_plus = sandwich_fit(d, out.report.u, out.wolff_plus, 1.0);
    out.c_minus = sandwich_fit(d, out.report.u, out.wolff_minus, -1.0);

    double gl1 = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        gl1 += std::abs(g.g(out.report.u(i))) * d.weights(i);
    out.g_l1_power = std::pow(gl1, 1.0 / pm1);
    out.seminorm = gagliardo_seminorm(d, out.report.u, spec, table.spec.s, table.spec.p);
    out.mu_tv_power = std::pow(mu.total_variation(d), 1.0 / pm1);
    return out;
}

PowerAbsorptionResult run_power_absorption(const DiscreteDomain& d, const KernelTable& table,
                                           double kappa, const MeasureData& mu,
                                           const WolffQuery& q, const SeminormSpec& spec,
                                           const SolveOptions& opts, int max_levels) {
    if (!(kappa > table.spec.p - 1.0))
        throw std::invalid_argument("run_power_absorption: need kappa > p - 1");
    PowerAbsorptionResult out;
    Nonlinearity g = Nonlinearity::power(kappa);
    out.base.verdict = subcritical_check(g, d.dim, table.spec.s, table.spec.p);
    out.base.report = truncated_scheme(d, table, g, mu, opts, &out.level_l1, kappa,
                                       &out.diverged, max_levels, &out.final_level);

    const double pm1 = table.spec.p - 1.0;
    out.base.wolff_plus = wolff_field(d, mu.positive_part(d), q);
    out.base.wolff_minus = wolff_field(d, mu.negative_part(d), q);
    out.base.c_plus = sandwich_fit(d, out.base.report.u, out.base.wolff_plus, 1.0);
    out.base.c_minus = sandwich_fit(d, out.base.report.u, out.base.wolff_minus, -1.0);

    double gl1 = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        double a = std::abs(out.base.report.u(i));
        out.u_kappa_l1 += std::pow(a, kappa) * d.weights(i);
        gl1 += std::abs(g.g(out.base.report.u(i))) * d.weights(i);
    }
    out.base.g_l1_power = std::pow(gl1, 1.0 / pm1);
    out.base.seminorm = gagliardo_seminorm(d, out.base.report.u, spec, table.spec.s,
                                           table.spec.p);
    out.base.mu_tv_power = std::pow(mu.total_variation(d), 1.0 / pm1);
    return out;
}

double radial_loglog_slope(const DiscreteDomain& d, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& x0, double r_lo, double r_hi) {
    // Average the profile over log-spaced radius bins before fitting; a raw
    // per-node regression would weight each scale by its node count (~ r dr in
    // 2D) and the outer annulus would dominate the slope.
    constexpr int kBins = 8;
    double bx[kBins] = {}, by[kBins] = {};
    long bn[kBins] = {};
    const double llo = std::log(r_lo), span = std::log(r_hi) - llo;
    long total = 0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        double r = (d.points.row(i).transpose() - x0).norm();
        if (r < r_lo || r > r_hi || u(i) == 0.0) continue;
        int b = std::min(kBins - 1, static_cast<int>(kBins * (std::log(r) - llo) / span));
        bx[b] += std::log(r);
        by[b] += std::log(std::abs(u(i)));
        ++bn[b];
        ++total;
    }
    if (total < 4) throw std::invalid_argument("radial_loglog_slope: fewer than 4 annulus nodes");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long n = 0;
    for (int b = 0; b < kBins; ++b) {
        if (bn[b] == 0) continue;
        double lx = bx[b] / bn[b], ly = by[b] / bn[b];
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("radial_loglog_slope: fewer than 2 radius bins");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fplab
