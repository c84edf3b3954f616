#include "fplab/domain.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace fplab {

Eigen::Index DiscreteDomain::nearest_interior(const Eigen::VectorXd& x) const {
    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n_interior; ++i) {
        double d = (points.row(i).transpose() - x).norm();
        if (d < best_d - 1e-15) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

void DiscreteDomain::validate() const {
    if (dim != 1 && dim != 2) throw std::invalid_argument("domain: dim must be 1 or 2");
    if (n_interior <= 0 || n_interior > n_total())
        throw std::invalid_argument("domain: bad interior node count");
    if ((weights.array() <= 0.0).any())
        throw std::invalid_argument("domain: every weight must be positive");
    if (r_ext < 2.0 * diam)
        throw std::invalid_argument("domain: exterior collar must reach 2*diam");
}

DiscreteDomain make_interval_domain(double a, double b, double h, double collar_factor) {
    if (!(b > a) || !(h > 0)) throw std::invalid_argument("interval domain: need b>a, h>0");
    DiscreteDomain d;
    d.dim = 1;
    d.diam = b - a;
    d.spacing = h;
    d.r_ext = collar_factor * d.diam;

    std::vector<double> xs_in, xs_out;
    double lo = a - d.r_ext, hi = b + d.r_ext;
    // cell centers on a single uniform lattice anchored at a
    long k0 = static_cast<long>(std::floor((lo - a) / h));
    long k1 = static_cast<long>(std::ceil((hi - a) / h));
    for (long k = k0; k <= k1; ++k) {
        double x = a + (k + 0.5) * h;
        if (x <= lo || x >= hi) continue;
        if (x > a && x < b)
            xs_in.push_back(x);
        else
            xs_out.push_back(x);
    }
    Eigen::Index n = static_cast<Eigen::Index>(xs_in.size() + xs_out.size());
    d.points.resize(n, 1);
    d.weights.setConstant(n, h);
    d.n_interior = static_cast<Eigen::Index>(xs_in.size());
    Eigen::Index r = 0;
    for (double x : xs_in) d.points(r++, 0) = x;
    for (double x : xs_out) d.points(r++, 0) = x;
    d.validate();
    return d;
}

DiscreteDomain make_disk_domain(double radius, double h, double collar_factor) {
    if (!(radius > 0) || !(h > 0)) throw std::invalid_argument("disk domain: need radius>0, h>0");
    DiscreteDomain d;
    d.dim = 2;
    d.diam = 2.0 * radius;
    d.spacing = h;
    d.r_ext = collar_factor * d.diam;

    std::vector<Eigen::Vector2d> pts_in, pts_out;
    std::vector<double> w_out;

    // fine uniform level covering the bounding box of Omega plus one cell
    double w0 = radius + h;
    long m = static_cast<long>(std::ceil(w0 / h));
    double fine_halfwidth = m * h;
    for (long i = -m; i < m; ++i) {
        for (long j = -m; j < m; ++j) {
            Eigen::Vector2d c((i + 0.5) * h, (j + 0.5) * h);
            if (c.norm() < radius)
                pts_in.push_back(c);
            else {
                pts_out.push_back(c);
                w_out.push_back(h * h);
            }
        }
    }
    // dyadically coarsening square rings out past r_ext + radius
    double target = d.r_ext + radius;
    double inner = fine_halfwidth;
    double hl = h;
    while (inner < target) {
        hl *= 2.0;
        double outer = 2.0 * inner;
        long ml = static_cast<long>(std::llround(outer / hl));
        for (long i = -ml; i < ml; ++i) {
            for (long j = -ml; j < ml; ++j) {
                Eigen::Vector2d c((i + 0.5) * hl, (j + 0.5) * hl);
                double mn = std::max(std::abs(c.x()), std::abs(c.y()));
                if (mn > inner && mn <= outer) {
                    pts_out.push_back(c);
                    w_out.push_back(hl * hl);
                }
            }
        }
        inner = outer;
    }

    Eigen::Index n = static_cast<Eigen::Index>(pts_in.size() + pts_out.size());
    d.points.resize(n, 2);
    d.weights.resize(n);
    d.n_interior = static_cast<Eigen::Index>(pts_in.size());
    Eigen::Index r = 0;
    for (const auto& c : pts_in) {
        d.points.row(r) = c.transpose();
        d.weights(r) = h * h;
        ++r;
    }
    for (size_t k = 0; k < pts_out.size(); ++k) {
        d.points.row(r) = pts_out[k].transpose();
        d.weights(r) = w_out[k];
        ++r;
    }
    d.validate();
    return d;
}

std::string domain_descriptor_json(const DiscreteDomain& d) {
    nlohmann::ordered_json j;
    j["dim"] = d.dim;
    j["diam"] = d.diam;
    j["spacing"] = d.spacing;
    j["r_ext"] = d.r_ext;
    j["n_interior"] = d.n_interior;
    j["n_total"] = d.n_total();
    return j.dump(2);
}

DiscreteDomain domain_from_descriptor_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int dim = j.at("dim").get<int>();
    double diam = j.at("diam").get<double>();
    double spacing = j.at("spacing").get<double>();
    double collar = j.value("collar_factor", 4.0);
    if (dim == 1) {
        double a = j.value("a", -0.5 * diam);
        return make_interval_domain(a, a + diam, spacing, collar);
    }
    return make_disk_domain(0.5 * diam, spacing, collar);
}

}  // namespace fplab
