#include "fplab/source.hpp"

#include "fplab/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fplab {

namespace {

double weak_exponent(const DiscreteDomain& d, const KernelSpec& spec) {
    return d.dim / (d.dim - spec.s * spec.p);
}

Eigen::VectorXd signed_power(const Eigen::VectorXd& v, double e) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = v(i) == 0.0 ? 0.0 : std::pow(std::abs(v(i)), e) * (v(i) > 0.0 ? 1.0 : -1.0);
    return out;
}

MeasureData with_extra_density(const DiscreteDomain& d, const MeasureData& base, double scale,
                               const Eigen::VectorXd& extra) {
    MeasureData out = base.scaled(scale);
    if (out.density.size() == 0) out.density = Eigen::VectorXd::Zero(d.n_interior);
    out.density += extra.head(d.n_interior);
    return out;
}

}  // namespace

double measure_ball_constant(const DiscreteDomain& d, const KernelTable& table,
                             const std::vector<MeasureData>& probes, const SolveOptions& opts) {
    if (probes.empty()) throw std::invalid_argument("measure_ball_constant: empty probe family");
    const double pm1 = table.spec.p - 1.0;
    const double a = weak_exponent(d, table.spec);
    SolveOptions lv = opts;
    lv.diagnostics = false;
    double worst = 0.0;
    for (const MeasureData& nu : probes) {
        double tv = nu.total_variation(d);
        if (tv <= 0.0) continue;
        SolveReport rep = minimize_J(d, table, Nonlinearity::zero(), nu, lv);
        Eigen::VectorXd vp = rep.u.cwiseAbs().array().pow(pm1);
        worst = std::max(worst, weak_norm_star(d, vp, a) / tv);
    }
    if (worst == 0.0) throw std::invalid_argument("measure_ball_constant: all probes empty");
    return worst;
}

BallConstants solve_ball_constants(double C, double a, double kappa) {
    if (!(C > 0.0 && a > 1.0 && kappa > 1.0))
        throw std::invalid_argument("solve_ball_constants: need C > 0, a > 1, kappa > 1");
    BallConstants out;
    // the admissible-rho headroom (t - C t^a - C t^kappa)/C vanishes at the
    // largest feasible t, so the scan keeps the t maximizing it instead
    const int n = 4001;
    for (int k = 0; k < n; ++k) {
        double t = std::pow(10.0, -10.0 + 16.0 * k / (n - 1));  // 1e-10 .. 1e6
        double body = C * (std::pow(t, a) + std::pow(t, kappa));
        if (!(body < t)) continue;
        double rho0 = (t - body) / C;
        // guard the certificate against rounding in the reconstruction
        while (rho0 > 0.0 && C * (std::pow(t, a) + std::pow(t, kappa) + rho0) > t)
            rho0 *= 1.0 - 1e-12;
        if (rho0 > out.rho0) {
            out.t0 = t;
            out.rho0 = rho0;
            out.feasible = true;
        }
    }
    return out;
}

FixedPointResult fixed_point_iterate(const DiscreteDomain& d, const KernelTable& table,
                                     const Nonlinearity& g, const MeasureData& tau,
                                     const FixedPointConfig& config, const SolveOptions& opts) {
    if (!(config.rho >= 0.0)) throw std::invalid_argument("fixed_point_iterate: need rho >= 0");
    const double pm1 = table.spec.p - 1.0;
    const double a = weak_exponent(d, table.spec);
    const double tol = config.tol > 0.0 ? config.tol : 1e-6 * d.interior_volume();
    SolveOptions lv = opts;
    lv.diagnostics = false;

    FixedPointResult out;
    out.v = Eigen::VectorXd::Zero(d.n_total());
    for (int it = 0; it < config.max_iter; ++it) {
        Eigen::VectorXd u_in = signed_power(out.v, 1.0 / pm1);
        Eigen::VectorXd gu(d.n_interior);
        for (Eigen::Index i = 0; i < d.n_interior; ++i) gu(i) = g.g(u_in(i));
        MeasureData data = with_extra_density(d, tau, config.rho, gu);
        SolveReport rep = minimize_J(d, table, Nonlinearity::zero(), data, lv);
        Eigen::VectorXd v_new = signed_power(rep.u, pm1);

        OrbitStep step;
        step.weak_norm = weak_norm_star(d, v_new.cwiseAbs(), a);
        double inc = 0.0;
        for (Eigen::Index i = 0; i < d.n_total(); ++i)
            inc += std::abs(v_new(i) - out.v(i)) * d.weights(i);
        step.l1_increment = inc;
        out.orbit.push_back(step);
        out.v = v_new;
        out.residual_l1 = inc;

        if (config.t0 > 0.0 && step.weak_norm > config.t0) {
            out.escaped = true;
            break;
        }
        if (inc < tol) {
            out.converged = true;
            break;
        }
    }
    out.u = signed_power(out.v, 1.0 / pm1);
    return out;
}

MonotoneSourceResult monotone_source_iterate(const DiscreteDomain& d, const KernelTable& table,
                                             double kappa, const MeasureData& tau, double rho,
                                             const WolffQuery& q, double M, int max_iter,
                                             const SolveOptions& opts) {
    if (!tau.is_nonnegative(d))
        throw std::invalid_argument("monotone_source_iterate: tau must be nonnegative");
    if (!(rho > 0.0 && kappa > table.spec.p - 1.0))
        throw std::invalid_argument("monotone_source_iterate: need rho > 0, kappa > p - 1");
    const double pm1 = table.spec.p - 1.0;
    SolveOptions lv = opts;
    lv.diagnostics = false;

    MonotoneSourceResult out;
    out.A = std::pow(2.0, 1.0 / pm1 + 1.0);

    MeasureData rho_tau = tau.scaled(rho);
    Eigen::VectorXd W_rt = wolff_field(d, rho_tau, q);
    SolveReport rep = minimize_J(d, table, Nonlinearity::zero(), rho_tau, lv);
    Eigen::VectorXd u = rep.u;

    // measured linear comparability constant u_0 <= C W[rho tau]
    double C = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        if (W_rt(i) > 0.0) C = std::max(C, u(i) / W_rt(i));
    out.C = C;
    out.barrier = out.A * C * W_rt;
    out.admissible = std::pow(out.A * C, kappa / pm1) * M *
                             std::pow(rho, (kappa - pm1) / (pm1 * pm1)) +
                         1.0 <
                     2.0;

    for (int n = 1; n <= max_iter; ++n) {
        Eigen::VectorXd uk = u.head(d.n_interior).cwiseMax(0.0).array().pow(kappa);
        MeasureData data = with_extra_density(d, tau, rho, uk);
        SolveReport next = minimize_J(d, table, Nonlinearity::zero(), data, lv);
        out.iterations = n;

        double worst_drop = (next.u - u).minCoeff();
        if (worst_drop < -1e-12) {
            out.aborted_monotone = true;
            out.u = next.u;
            return out;
        }
        bool over = false;
        for (Eigen::Index i = 0; i < d.n_interior; ++i)
            if (next.u(i) > out.barrier(i) * (1.0 + 1e-12)) over = true;
        if (over) {
            out.aborted_barrier = true;
            out.u = next.u;
            return out;
        }
        double inc = (next.u - u).lpNorm<Eigen::Infinity>();
        out.increments.push_back(inc);
        u = next.u;
        if (inc <= 0.01 * u.lpNorm<Eigen::Infinity>()) {
            out.stabilized = true;
            break;
        }
    }
    out.u = u;

    // sandwich fits against the final measure du = u^kappa dx + rho dtau
    Eigen::VectorXd uk = u.head(d.n_interior).cwiseMax(0.0).array().pow(kappa);
    MeasureData mu_final = with_extra_density(d, tau, rho, uk);
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        if (W_rt(i) > 0.0) out.upper_fit = std::max(out.upper_fit, u(i) / W_rt(i));
        // nearest collar node stands in for the distance to the boundary
        double dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index e = d.n_interior; e < d.n_total(); ++e)
            dist = std::min(dist, d.node_distance(i, e));
        if (!(dist > 0.0) || u(i) <= 0.0) continue;
        WolffQuery qi = q;
        qi.R = dist / 8.0;
        if (!(qi.R > 0.0)) continue;
        double w = wolff_potential(d, mu_final, d.points.row(i).transpose(), qi);
        if (w > 0.0) out.lower_fit = std::max(out.lower_fit, w / u(i));
    }
    return out;
}

}  // namespace fplab
