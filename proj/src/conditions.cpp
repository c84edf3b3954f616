#include "fplab/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fplab {

namespace {

MeasureData restrict_to_ball(const DiscreteDomain& d, const MeasureData& tau, const Ball& b) {
    Eigen::VectorXd masses = tau.node_masses(d);
    MeasureData out;
    out.density = Eigen::VectorXd::Zero(d.n_interior);
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        if ((d.points.row(i).transpose() - b.center).norm() <= b.radius)
            out.density(i) = masses(i) / d.weights(i);
    }
    return out;
}

}  // namespace

BallConditionResult check_ball_condition(const DiscreteDomain& d, const MeasureData& tau,
                                         double kappa, const WolffQuery& q,
                                         const std::vector<Ball>& balls, BallExponent variant) {
    if (!tau.is_nonnegative(d))
        throw std::invalid_argument("check_ball_condition: tau must be nonnegative");
    if (!(kappa > q.p - 1.0))
        throw std::invalid_argument("check_ball_condition: need kappa > p - 1");
    const double expo = variant == BallExponent::Kappa ? kappa : kappa / (q.p - 1.0);

    BallConditionResult out;
    for (const Ball& b : balls) {
        MeasureData tb = restrict_to_ball(d, tau, b);
        double mass = tb.total(d);
        if (mass <= 0.0) continue;
        WolffQuery qb = q;
        qb.R = 4.0 * b.radius;  // 2 * diam(B)
        double acc = 0.0;
        for (Eigen::Index i = 0; i < d.n_interior; ++i) {
            if ((d.points.row(i).transpose() - b.center).norm() > b.radius) continue;
            double w = wolff_potential(d, tb, d.points.row(i).transpose(), qb);
            if (w > 0.0) acc += std::pow(w, expo) * d.weights(i);
        }
        double ratio = acc / mass;
        out.ratios.push_back(ratio);
        out.max_ratio = out.any ? std::max(out.max_ratio, ratio) : ratio;
        out.any = true;
    }
    return out;
}

double check_wolff_composition(const DiscreteDomain& d, const MeasureData& tau, double kappa,
                               const WolffQuery& q) {
    if (!tau.is_nonnegative(d))
        throw std::invalid_argument("check_wolff_composition: tau must be nonnegative");
    if (!(kappa > 0.0)) throw std::invalid_argument("check_wolff_composition: need kappa > 0");
    Eigen::VectorXd f1 = wolff_field(d, tau, q);
    if (f1.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
    MeasureData composed =
        MeasureData::from_density(d, f1.head(d.n_interior).array().pow(kappa).matrix());
    Eigen::VectorXd f2 = wolff_field(d, composed, q);
    double sup = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        if (f1(i) > 0.0) sup = std::max(sup, f2(i) / f1(i));
    return sup;
}

GrowthResult measure_growth_exponent(const DiscreteDomain& d, const MeasureData& tau,
                                     double kappa, const KernelSpec& spec,
                                     const std::vector<Eigen::VectorXd>& centers) {
    if (!tau.is_nonnegative(d))
        throw std::invalid_argument("measure_growth_exponent: tau must be nonnegative");
    if (centers.empty())
        throw std::invalid_argument("measure_growth_exponent: need at least one center");
    const double N = d.dim;
    GrowthResult out;
    out.threshold =
        (kappa * (N - spec.s * spec.p) - N * (spec.p - 1.0)) / (kappa - spec.p + 1.0);

    Eigen::VectorXd masses = tau.node_masses(d);
    const double t_lo = 4.0 * d.spacing, t_hi = 0.5 * d.diam;
    if (!(t_lo < t_hi))
        throw std::invalid_argument("measure_growth_exponent: grid too coarse for a radius scan");
    const int nt = 12;

    bool first = true;
    for (const auto& c : centers) {
        std::vector<double> lt, lm;
        for (int k = 0; k < nt; ++k) {
            double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(k) / (nt - 1));
            double mass = 0.0;
            for (Eigen::Index i = 0; i < d.n_interior; ++i)
                if ((d.points.row(i).transpose() - c).norm() <= t) mass += masses(i);
            if (mass > 0.0) {
                lt.push_back(std::log(t));
                lm.push_back(std::log(mass));
            }
        }
        if (lt.size() < 4)
            throw std::invalid_argument("measure_growth_exponent: fewer than 4 usable radii");
        double n = static_cast<double>(lt.size());
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (size_t k = 0; k < lt.size(); ++k) {
            sx += lt[k];
            sy += lm[k];
            sxx += lt[k] * lt[k];
            sxy += lt[k] * lm[k];
        }
        double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        out.fitted = first ? slope : std::min(out.fitted, slope);
        first = false;
    }
    out.passes = out.fitted >= out.threshold - 0.1;
    return out;
}

}  // namespace fplab
