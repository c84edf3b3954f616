#include "fplab/wolff.hpp"

#include "fplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fplab {

void WolffQuery::validate(int N) const {
    if (!(alpha > 0.0)) throw std::invalid_argument("wolff: need alpha > 0");
    if (!(p > 1.0 && p < N / alpha)) throw std::invalid_argument("wolff: need 1 < p < N/alpha");
    if (!(R > 0.0)) throw std::invalid_argument("wolff: need R > 0");
    if (radial_grid < 16) throw std::invalid_argument("wolff: need radial_grid >= 16");
}

namespace {

// int_a^b (M / r^{N - alpha p})^{1/(p-1)} dr/r for constant M.
double segment(double M, double a, double b, double beta, double pm1) {
    if (M <= 0.0 || b <= a) return 0.0;
    double scale = std::pow(M, 1.0 / pm1);
    if (std::abs(beta) > 1e-12)
        return scale * (std::pow(a, -beta) - std::pow(b, -beta)) / beta;
    return scale * std::log(b / a);
}

}  // namespace

double wolff_potential(const DiscreteDomain& d, const MeasureData& mu, const Eigen::VectorXd& x,
                       const WolffQuery& q, bool use_absolute) {
    q.validate(d.dim);
    Eigen::VectorXd masses = mu.node_masses(d);
    if (!use_absolute && (masses.array() < 0.0).any())
        throw std::invalid_argument("wolff_potential: negative measure without absolute flag");
    if (use_absolute) masses = masses.cwiseAbs();

    std::vector<std::pair<double, double>> by_dist;  // (distance, node mass)
    by_dist.reserve(static_cast<size_t>(d.n_interior));
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        if (masses(i) == 0.0) continue;
        by_dist.emplace_back((d.points.row(i).transpose() - x).norm(), masses(i));
    }
    std::sort(by_dist.begin(), by_dist.end());

    const double r_min = d.spacing / 4.0;
    const double beta = (d.dim - q.alpha * q.p) / (q.p - 1.0);
    const double pm1 = q.p - 1.0;

    double total = 0.0, cum = 0.0, lo = r_min;
    size_t k = 0;
    // mass at distance <= r_min is visible from the very first segment
    while (k < by_dist.size() && by_dist[k].first <= r_min) cum += by_dist[k++].second;
    while (lo < q.R) {
        double hi = q.R;
        if (k < by_dist.size() && by_dist[k].first < q.R) hi = by_dist[k].first;
        total += segment(cum, lo, hi, beta, pm1);
        lo = hi;
        while (k < by_dist.size() && by_dist[k].first <= lo) cum += by_dist[k++].second;
    }
    return total;
}

Eigen::VectorXd wolff_field(const DiscreteDomain& d, const MeasureData& mu, const WolffQuery& q,
                            bool use_absolute) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(d.n_total());
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        out(i) = wolff_potential(d, mu, d.points.row(i).transpose(), q, use_absolute);
    return out;
}

double wolff_potential_radial(const std::function<double(double)>& ball_mass, int N,
                              const WolffQuery& q, double r_lo) {
    q.validate(N);
    double lo = std::max(r_lo, 1e-9 * q.R);
    const double expo = (N - q.alpha * q.p) / (q.p - 1.0);
    const double pm1 = q.p - 1.0;
    auto integrand = [&](double r) {
        double m = ball_mass(r);
        if (m <= 0.0) return 0.0;
        return std::pow(m, 1.0 / pm1) * std::pow(r, -expo - 1.0);
    };
    double total = 0.0;
    double ratio = std::pow(q.R / lo, 1.0 / q.radial_grid);
    double a = lo;
    for (int k = 0; k < q.radial_grid; ++k) {
        double b = k + 1 == q.radial_grid ? q.R : a * ratio;
        total += adaptive_simpson(integrand, a, b, 1e-12);
        a = b;
    }
    return total;
}

}  // namespace fplab
