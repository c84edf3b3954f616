#include "fplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fplab {

void SeminormSpec::validate(double s, double p, int N) const {
    if (!(h > 0.0 && h < s)) throw std::invalid_argument("seminorm spec: need 0 < h < s");
    double qmax = N * (p - 1.0) / (N - s);
    if (!(q > 0.0 && q < qmax))
        throw std::invalid_argument("seminorm spec: need 0 < q < N(p-1)/(N-s)");
}

double distribution_function(const DiscreteDomain& d, const Eigen::VectorXd& f, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("distribution_function: threshold must be positive");
    double vol = 0.0;
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (std::abs(f(i)) > a) vol += d.weights(i);
    return vol;
}

double weak_norm_star(const DiscreteDomain& d, const Eigen::VectorXd& f, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("weak_norm_star: need q >= 1");
    const Eigen::Index n = f.size();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index a, Eigen::Index b) { return std::abs(f(a)) > std::abs(f(b)); });
    // a -> v^- gives a^q lambda(a) -> v^q * |{|f| >= v}|: scan cumulative weights
    double best = 0.0, cum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double v = std::abs(f(idx[k]));
        if (v == 0.0) break;
        cum += d.weights(idx[k]);
        if (k + 1 < n && std::abs(f(idx[k + 1])) == v) continue;  // finish the tie group
        best = std::max(best, v * std::pow(cum, 1.0 / q));
    }
    return best;
}

double weak_norm_sup(const DiscreteDomain& d, const Eigen::VectorXd& f, double q) {
    if (!(q > 1.0)) throw std::invalid_argument("weak_norm_sup: need q > 1");
    const double qp = q / (q - 1.0);
    const Eigen::Index n = f.size();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index a, Eigen::Index b) { return std::abs(f(a)) > std::abs(f(b)); });
    double best = 0.0, mass = 0.0, vol = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        double v = std::abs(f(idx[k]));
        if (v == 0.0) break;
        mass += v * d.weights(idx[k]);
        vol += d.weights(idx[k]);
        best = std::max(best, mass / std::pow(vol, 1.0 / qp));
    }
    return best;
}

double gagliardo_form(const DiscreteDomain& d, const Eigen::VectorXd& f, double h, double q) {
    const Eigen::Index n = d.n_total();
    const double expo = d.dim + h * q;
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double df = std::abs(f(i) - f(j));
            if (df == 0.0) continue;
            double r = d.node_distance(i, j);
            acc += std::pow(df, q) / std::pow(r, expo) * d.weights(j);
        }
        total += 2.0 * acc * d.weights(i);  // both orders of each pair
    }
    return total;
}

double gagliardo_seminorm(const DiscreteDomain& d, const Eigen::VectorXd& f,
                          const SeminormSpec& spec, double s, double p) {
    spec.validate(s, p, d.dim);
    return std::pow(gagliardo_form(d, f, spec.h, spec.q), 1.0 / spec.q);
}

}  // namespace fplab
