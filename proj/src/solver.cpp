#include "fplab/solver.hpp"

#include "fplab/quadrature.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace fplab {

namespace {

double phi_p(double t, double p) {
    return t == 0.0 ? 0.0 : std::pow(std::abs(t), p - 2.0) * t;
}

// Pair stiffness for the model Hessian. For p > 2 this is the smoothed
// derivative of phi_p. For p < 2 the (p-1) factor is dropped: the resulting
// weight majorizes |t|^p by a quadratic, so the full step never overshoots a
// sign change of a pair difference (Newton with the true derivative maps a
// near-zero difference d to -d and cycles).
double psi_eps(double t, double p, double eps) {
    double w = std::pow(t * t + eps * eps, 0.5 * (p - 2.0));
    return p > 2.0 ? (p - 1.0) * w : w;
}

struct Problem {
    const DiscreteDomain& d;
    const KernelTable& table;
    const Nonlinearity& g;
    Eigen::VectorXd m;   // interior nodal masses
    Eigen::VectorXd ce;  // collar coupling sum_{j exterior} k_ij per interior row
    double p;

    Problem(const DiscreteDomain& dd, const KernelTable& tt, const Nonlinearity& gg,
            const MeasureData& mu)
        : d(dd), table(tt), g(gg), p(tt.spec.p) {
        Eigen::VectorXd full = mu.node_masses(dd);
        m = full.head(dd.n_interior);
        ce = tt.k.rightCols(dd.n_exterior()).rowwise().sum();
    }

    double objective(const Eigen::VectorXd& x) const {
        const Eigen::Index ni = d.n_interior;
        double en = 0.0;
        for (Eigen::Index i = 0; i < ni; ++i) {
            for (Eigen::Index j = i + 1; j < ni; ++j) {
                double df = std::abs(x(i) - x(j));
                if (df != 0.0) en += 2.0 * std::pow(df, p) * table.k(i, j);
            }
            if (x(i) != 0.0) en += 2.0 * std::pow(std::abs(x(i)), p) * ce(i);
        }
        double pot = 0.0;
        for (Eigen::Index i = 0; i < ni; ++i) pot += g.G(x(i)) * d.weights(i);
        return en / p + pot - x.dot(m);
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
        const Eigen::Index ni = d.n_interior;
        Eigen::VectorXd F(ni);
        for (Eigen::Index i = 0; i < ni; ++i) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j < ni; ++j)
                if (j != i) acc += phi_p(x(i) - x(j), p) * table.k(i, j);
            acc += phi_p(x(i), p) * ce(i);
            F(i) = 2.0 * acc + g.g(x(i)) * d.weights(i) - m(i);
        }
        return F;
    }

    Eigen::MatrixXd hessian(const Eigen::VectorXd& x, double eps) const {
        const Eigen::Index ni = d.n_interior;
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ni, ni);
        for (Eigen::Index i = 0; i < ni; ++i) {
            double diag = psi_eps(x(i), p, eps) * ce(i);
            for (Eigen::Index j = 0; j < ni; ++j) {
                if (j == i) continue;
                double w = psi_eps(x(i) - x(j), p, eps) * table.k(i, j);
                diag += w;
                H(i, j) = -2.0 * w;
            }
            H(i, i) = 2.0 * diag + g.slope(x(i)) * d.weights(i);
        }
        double ridge = 1e-12 * H.diagonal().maxCoeff() + 1e-300;
        H.diagonal().array() += ridge;
        return H;
    }
};

}  // namespace

SolveReport minimize_J(const DiscreteDomain& d, const KernelTable& table, const Nonlinearity& g,
                       const MeasureData& mu, const SolveOptions& opts) {
    d.validate();
    mu.validate(d);
    if (!(opts.tol > 0.0)) throw std::invalid_argument("minimize_J: need tol > 0");
    if (!g.monotone_on_samples())
        throw std::invalid_argument("minimize_J: g must be nondecreasing with g(0) = 0");
    Problem prob(d, table, g, mu);
    const Eigen::Index ni = d.n_interior;
    const double p = table.spec.p;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(ni);
    SolveReport rep;

    // Warm start from the quadratic (p = 2) problem: 2(D - K) x = m with unit
    // pair stiffness; exact first step when p = 2.
    {
        Eigen::MatrixXd H2 = Eigen::MatrixXd::Zero(ni, ni);
        for (Eigen::Index i = 0; i < ni; ++i) {
            double diag = prob.ce(i);
            for (Eigen::Index j = 0; j < ni; ++j) {
                if (j == i) continue;
                diag += prob.table.k(i, j);
                H2(i, j) = -2.0 * prob.table.k(i, j);
            }
            H2(i, i) = 2.0 * diag + g.slope(0.0) * d.weights(i) + 1e-300;
        }
        x = H2.ldlt().solve(prob.m);
        if (!x.allFinite()) x.setZero();
    }

    double fx = prob.objective(x);
    Eigen::VectorXd F = prob.gradient(x);
    rep.residual_norm = F.lpNorm<Eigen::Infinity>();

    long it = 0;
    int stall = 0;
    double best_res = rep.residual_norm;
    while (rep.residual_norm > opts.tol && it < opts.max_iter && stall < 60) {
        ++it;
        // Levenberg-style regularization tied to the current residual; exact
        // Hessian at p = 2 where the pair stiffness is constant. For p < 2
        // the smoothing gap enters the residual like eps^{p-1} through
        // near-zero pair differences, so eps must fall quadratically in the
        // residual to reach the tolerance.
        double eps_scale = p < 2.0 ? std::min(1e-2 * rep.residual_norm,
                                              rep.residual_norm * rep.residual_norm)
                                   : 1e-2 * rep.residual_norm;
        double eps = p == 2.0
                         ? 0.0
                         : std::clamp(eps_scale, 1e-14, 1e-2 * (1.0 + x.lpNorm<Eigen::Infinity>()));
        Eigen::MatrixXd H = prob.hessian(x, eps);
        Eigen::VectorXd dir = H.ldlt().solve(-F);
        double slope0 = F.dot(dir);
        if (!dir.allFinite() || slope0 >= 0.0) {
            dir = -F / std::max(1.0, H.diagonal().maxCoeff());
            slope0 = F.dot(dir);
        }
        double alpha = 1.0;
        bool moved = false;
        while (alpha > 1e-16) {
            Eigen::VectorXd xn = x + alpha * dir;
            double fn = prob.objective(xn);
            if (fn <= fx + 1e-4 * alpha * slope0) {
                x = xn;
                fx = fn;
                F = prob.gradient(x);
                rep.residual_norm = F.lpNorm<Eigen::Infinity>();
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) {
            // Near the minimizer J flattens out at rounding level while the
            // weak residual is still above tol; fall back to the step with
            // the best residual decrease.
            double best_rn = rep.residual_norm;
            Eigen::VectorXd best_x, best_F;
            for (double a = 1.0; a > 1e-12; a *= 0.25) {
                Eigen::VectorXd xn = x + a * dir;
                Eigen::VectorXd Fn = prob.gradient(xn);
                double rn = Fn.lpNorm<Eigen::Infinity>();
                if (rn < best_rn) {
                    best_rn = rn;
                    best_x = std::move(xn);
                    best_F = std::move(Fn);
                }
            }
            if (best_x.size() > 0) {
                x = std::move(best_x);
                F = std::move(best_F);
                rep.residual_norm = best_rn;
                fx = prob.objective(x);
                moved = true;
            }
        }
        // A step that neither moves nor makes residual progress counts as a
        // stall; rounding-level wandering then terminates instead of looping.
        if (!moved || rep.residual_norm > 0.999 * best_res)
            ++stall;
        else
            stall = 0;
        best_res = std::min(best_res, rep.residual_norm);
    }

    rep.iterations = it;
    rep.converged = rep.residual_norm <= opts.tol;
    rep.objective = fx;
    rep.u = Eigen::VectorXd::Zero(d.n_total());
    rep.u.head(ni) = x;

    if (opts.diagnostics) {
        for (Eigen::Index i = 0; i < ni; ++i) rep.g_l1 += std::abs(g.g(x(i))) * d.weights(i);
        for (double k : {1.0, 2.0, 4.0, 8.0, 16.0})
            rep.truncation_energies.emplace_back(k, truncation_energy(d, rep.u, k, table.spec));
        for (const auto& spec : opts.seminorms)
            rep.seminorm_values.push_back(
                gagliardo_seminorm(d, rep.u, spec, table.spec.s, table.spec.p));
        double q_up = d.dim / (d.dim - table.spec.s * table.spec.p);
        Eigen::VectorXd up = rep.u.cwiseAbs().array().pow(p - 1.0);
        rep.weak_star_up = weak_norm_star(d, up, q_up);
    }
    return rep;
}

SolaReport solve_sola(const DiscreteDomain& d, const KernelTable& table, const Nonlinearity& g,
                      const MeasureData& mu, int n_max, const SeminormSpec& spec,
                      const SolveOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("solve_sola: need n_max >= 1");
    spec.validate(table.spec.s, table.spec.p, d.dim);
    SolaReport out;
    Eigen::VectorXd prev;
    for (int n = 1; n <= n_max; ++n) {
        MollifyResult mol = mollify(d, mu, n);
        out.mollifier_saturated = out.mollifier_saturated || mol.below_grid;
        SolveOptions level_opts = opts;
        level_opts.diagnostics = n == n_max && opts.diagnostics;
        SolveReport rep = minimize_J(d, table, g, mol.measure, level_opts);
        if (prev.size() > 0)
            out.increments.push_back(whq_quasinorm(d, rep.u - prev, spec));
        prev = rep.u;
        if (n == n_max) out.final = std::move(rep);
    }
    size_t ninc = out.increments.size();
    if (ninc >= 3) {
        for (size_t k = ninc - 2; k < ninc; ++k)
            if (out.increments[k] > out.increments[k - 1] * (1.0 + 1e-9))
                out.increments_decreasing = false;
    }
    return out;
}

ComparisonResult check_comparison(const SolveReport& u, const SolveReport& v, double slack) {
    if (u.u.size() != v.u.size())
        throw std::invalid_argument("check_comparison: mismatched fields");
    ComparisonResult out;
    out.max_violation = (v.u - u.u).maxCoeff();
    out.holds = out.max_violation <= slack;
    return out;
}

bool absorption_l1_bound(const DiscreteDomain& d, const SolveReport& report,
                         const Nonlinearity& g, const MeasureData& mu, double tol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        acc += std::abs(g.g(report.u(i))) * d.weights(i);
    return acc <= mu.total_variation(d) + tol;
}

TailSumBound tail_sum_bound(const Nonlinearity& g, double q_tilde, double C0, double s0,
                            const DiscreteDomain* d, const Eigen::VectorXd* field) {
    if (!(q_tilde > 0.0 && s0 > 0.0 && C0 >= 0.0))
        throw std::invalid_argument("tail_sum_bound: need q > 0, s0 > 0, C0 >= 0");
    TailSumBound out;
    auto integrand = [&](double s) {
        return (g.g(s) - g.g(-s)) * std::pow(s, -q_tilde - 1.0);
    };
    ImproperResult tail = integrate_to_infinity(integrand, s0);
    if (tail.divergent)
        throw std::domain_error("tail_sum_bound: divergent tail integral (supercritical g)");
    out.tail_integral = tail.value;
    if (d && field) {
        for (Eigen::Index i = 0; i < d->n_interior; ++i) {
            double a = std::abs((*field)(i));
            if (a <= s0) out.bounded_part += g.g(a) * d->weights(i);
        }
    }
    out.bound = out.bounded_part + q_tilde * C0 * out.tail_integral;
    return out;
}

double whq_quasinorm(const DiscreteDomain& d, const Eigen::VectorXd& f, const SeminormSpec& spec) {
    double semi = std::pow(gagliardo_form(d, f, spec.h, spec.q), 1.0 / spec.q);
    double lq = 0.0;
    for (Eigen::Index i = 0; i < d.n_total(); ++i)
        lq += std::pow(std::abs(f(i)), spec.q) * d.weights(i);
    return semi + std::pow(lq, 1.0 / spec.q);
}

}  // namespace fplab
