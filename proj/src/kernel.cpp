#include "fplab/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fplab {

void KernelSpec::validate(int N) const {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("kernel: need s in (0,1)");
    if (!(p > 1.0 && p < N / s)) throw std::invalid_argument("kernel: need 1 < p < N/s");
    if (!(lambda_k >= 1.0)) throw std::invalid_argument("kernel: need Lambda_K >= 1");
    if (c_ns) {
        double c = *c_ns;
        if (!(c > 0.0) || c > lambda_k || 1.0 / c > lambda_k)
            throw std::invalid_argument("kernel: C_{N,s} must fit inside the ellipticity band");
    }
}

double KernelSpec::value(double r, int N) const {
    double power = std::pow(r, -(N + s * p));
    double factor = c_ns.value_or(1.0);
    if (profile == KernelProfile::CosineModulated) factor *= std::pow(lambda_k, std::cos(r));
    return factor * power;
}

double fractional_laplacian_constant(int N, double s) {
    return std::pow(2.0, 2.0 * s) * std::pow(std::numbers::pi, -0.5 * N) * s *
           std::tgamma(0.5 * (N + 2.0 * s)) / std::tgamma(1.0 - s);
}

KernelTable assemble_kernel(const DiscreteDomain& d, const KernelSpec& spec) {
    spec.validate(d.dim);
    KernelTable t;
    t.spec = spec;
    const Eigen::Index ni = d.n_interior, n = d.n_total();
    t.k.setZero(ni, n);
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            double r = d.node_distance(i, j);
            if (r <= 0.0) throw std::invalid_argument("assemble_kernel: coincident nodes");
            t.k(i, j) = spec.value(r, d.dim) * d.weights(i) * d.weights(j);
        }
    }
    return t;
}

static double phi_p(double t, double p) {
    return t == 0.0 ? 0.0 : std::pow(std::abs(t), p - 2.0) * t;
}

Eigen::VectorXd apply_operator(const DiscreteDomain& d, const KernelTable& table,
                               const Eigen::VectorXd& u, double p) {
    const Eigen::Index ni = d.n_interior, n = d.n_total();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < ni; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) acc += phi_p(u(i) - u(j), p) * table.k(i, j);
        out(i) = acc / d.weights(i);
    }
    for (Eigen::Index e = ni; e < n; ++e) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < ni; ++j) acc += phi_p(u(e) - u(j), p) * table.k(j, e);
        out(e) = acc / d.weights(e);
    }
    return out;
}

double energy(const DiscreteDomain& d, const KernelTable& table, const Eigen::VectorXd& u,
              double p) {
    const Eigen::Index ni = d.n_interior, n = d.n_total();
    double total = 0.0;
    for (Eigen::Index i = 0; i < ni; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double df = std::abs(u(i) - u(j));
            if (df == 0.0) continue;
            total += 2.0 * std::pow(df, p) * table.k(i, j);
        }
    }
    // pairs with both nodes in the collar carry u = 0 on Dirichlet fields
    return total / p;
}

Eigen::VectorXd truncate(const Eigen::VectorXd& u, double k) {
    return u.cwiseMax(-k).cwiseMin(k);
}

double truncation_energy(const DiscreteDomain& d, const Eigen::VectorXd& u, double k,
                         const KernelSpec& spec) {
    if (!(k > 0.0)) throw std::invalid_argument("truncation_energy: need k > 0");
    Eigen::VectorXd tk = truncate(u, k);
    const Eigen::Index n = d.n_total();
    const double expo = d.dim + spec.s * spec.p;
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double df = std::abs(tk(i) - tk(j));
            if (df == 0.0) continue;
            double r = d.node_distance(i, j);
            total += 2.0 * std::pow(df, spec.p) / std::pow(r, expo) * d.weights(i) * d.weights(j);
        }
    }
    return total;
}

TailResult tail(const DiscreteDomain& d, const Eigen::VectorXd& u, Eigen::Index x, double r,
                const KernelSpec& spec) {
    if (!(r > 0.0)) throw std::invalid_argument("tail: need r > 0");
    const double pm1 = spec.p - 1.0;
    const double expo = d.dim + spec.s * spec.p;
    double acc = 0.0;
    bool any = false;
    for (Eigen::Index j = 0; j < d.n_total(); ++j) {
        if (j == x) continue;
        double dist = d.node_distance(x, j);
        if (dist < r) continue;
        any = true;
        if (u(j) == 0.0) continue;
        acc += std::pow(std::abs(u(j)), pm1) / std::pow(dist, expo) * d.weights(j);
    }
    TailResult out;
    out.truncated = !any;
    out.value = any ? std::pow(std::pow(r, spec.s * spec.p) * acc, 1.0 / pm1) : 0.0;
    return out;
}

double collar_truncation_bound(const DiscreteDomain& d, const Eigen::VectorXd& u,
                               const KernelSpec& spec) {
    double sup = u.cwiseAbs().maxCoeff();
    double sigma = d.dim == 1 ? 2.0 : 2.0 * std::numbers::pi;
    return spec.lambda_k * std::pow(sup, spec.p - 1.0) * sigma / (spec.s * spec.p) *
           std::pow(d.r_ext, -spec.s * spec.p);
}

double weighted_energy(const DiscreteDomain& d, const Eigen::VectorXd& u, double xi,
                       double shift, const KernelSpec& spec) {
    if (!(xi > 1.0 && shift > 0.0)) throw std::invalid_argument("weighted_energy: need xi>1, d>0");
    const Eigen::Index n = d.n_total();
    const double expo = d.dim + spec.s * spec.p;
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double df = std::abs(u(i) - u(j));
            if (df == 0.0) continue;
            double r = d.node_distance(i, j);
            double denom = std::pow(shift + std::abs(u(i)) + std::abs(u(j)), xi);
            total += 2.0 * std::pow(df, spec.p) / denom / std::pow(r, expo) * d.weights(i) *
                     d.weights(j);
        }
    }
    return total;
}

}  // namespace fplab
