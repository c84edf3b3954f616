#include "fplab/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace fplab {

MeasureData MeasureData::zero(const DiscreteDomain& d) {
    MeasureData m;
    m.density = Eigen::VectorXd::Zero(d.n_interior);
    return m;
}

MeasureData MeasureData::dirac(const DiscreteDomain& d, const Eigen::VectorXd& x, double mass) {
    MeasureData m = zero(d);
    m.atoms.emplace_back(d.nearest_interior(x), mass);
    return m;
}

MeasureData MeasureData::from_density(const DiscreteDomain& d, const Eigen::VectorXd& rho) {
    if (rho.size() != d.n_interior)
        throw std::invalid_argument("measure: density size must equal interior node count");
    MeasureData m;
    m.density = rho;
    return m;
}

MeasureData MeasureData::uniform_ball(const DiscreteDomain& d, const Eigen::VectorXd& center,
                                      double r, double total_mass) {
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(d.n_interior);
    double vol = 0.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        if ((d.points.row(i).transpose() - center).norm() <= r) {
            rho(i) = 1.0;
            vol += d.weights(i);
        }
    }
    if (vol <= 0.0) throw std::invalid_argument("uniform_ball: no interior node inside the ball");
    rho *= total_mass / vol;
    return from_density(d, rho);
}

Eigen::VectorXd MeasureData::node_masses(const DiscreteDomain& d) const {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(d.n_total());
    if (density.size() > 0) {
        if (density.size() != d.n_interior)
            throw std::invalid_argument("measure: density size mismatch");
        m.head(d.n_interior) = density.cwiseProduct(d.weights.head(d.n_interior));
    }
    for (const auto& [i, mass] : atoms) {
        if (!d.is_interior(i)) throw std::invalid_argument("measure: atom on exterior node");
        m(i) += mass;
    }
    return m;
}

double MeasureData::total(const DiscreteDomain& d) const { return node_masses(d).sum(); }

double MeasureData::total_variation(const DiscreteDomain& d) const {
    return node_masses(d).cwiseAbs().sum();
}

static MeasureData from_node_masses(const DiscreteDomain& d, const Eigen::VectorXd& m) {
    MeasureData out = MeasureData::zero(d);
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        if (m(i) != 0.0) out.atoms.emplace_back(i, m(i));
    return out;
}

MeasureData MeasureData::positive_part(const DiscreteDomain& d) const {
    return from_node_masses(d, node_masses(d).cwiseMax(0.0));
}

MeasureData MeasureData::negative_part(const DiscreteDomain& d) const {
    return from_node_masses(d, (-node_masses(d)).cwiseMax(0.0));
}

MeasureData MeasureData::absolute(const DiscreteDomain& d) const {
    return from_node_masses(d, node_masses(d).cwiseAbs());
}

MeasureData MeasureData::scaled(double t) const {
    MeasureData out = *this;
    for (auto& a : out.atoms) a.second *= t;
    if (out.density.size() > 0) out.density *= t;
    return out;
}

bool MeasureData::is_nonnegative(const DiscreteDomain& d) const {
    return (node_masses(d).array() >= 0.0).all();
}

void MeasureData::validate(const DiscreteDomain& d) const {
    (void)node_masses(d);  // throws on exterior atoms / size mismatch
}

MollifyResult mollify(const DiscreteDomain& d, const MeasureData& mu, int n) {
    if (n < 1) throw std::invalid_argument("mollify: smoothing index must be >= 1");
    double radius = 1.0 / n;
    if (radius < d.spacing) return {mu, true};

    Eigen::VectorXd src = mu.node_masses(d);
    Eigen::VectorXd rho = Eigen::VectorXd::Zero(d.n_interior);
    double sigma = radius / 3.0;
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        if (src(i) == 0.0) continue;
        // nonnegative bump, renormalized over the interior nodes it reaches
        double z = 0.0;
        std::vector<std::pair<Eigen::Index, double>> hits;
        for (Eigen::Index j = 0; j < d.n_interior; ++j) {
            double r = d.node_distance(i, j);
            if (r > radius) continue;
            double b = std::exp(-0.5 * (r / sigma) * (r / sigma));
            hits.emplace_back(j, b * d.weights(j));
            z += b * d.weights(j);
        }
        for (const auto& [j, bw] : hits) rho(j) += src(i) * bw / (z * d.weights(j));
    }
    MollifyResult out;
    out.measure = MeasureData::from_density(d, rho);
    return out;
}

}  // namespace fplab
