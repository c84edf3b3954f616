#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"

#include <utility>
#include <vector>

namespace fplab {

/// Signed measure on the grid: atoms at interior nodes plus a density
/// (mass per volume) on interior nodes. No mass lives on the collar.
struct MeasureData {
    std::vector<std::pair<Eigen::Index, double>> atoms;
    Eigen::VectorXd density;  // size n_interior; empty means zero

    static MeasureData zero(const DiscreteDomain& d);
    static MeasureData dirac(const DiscreteDomain& d, const Eigen::VectorXd& x, double mass);
    static MeasureData from_density(const DiscreteDomain& d, const Eigen::VectorXd& rho);
    /// Uniform measure of the given total mass on interior nodes within
    /// distance r of the center.
    static MeasureData uniform_ball(const DiscreteDomain& d, const Eigen::VectorXd& center,
                                    double r, double total_mass);

    /// Combined mass carried by node i (atom mass + density * weight).
    /// Zero on exterior nodes by construction.
    Eigen::VectorXd node_masses(const DiscreteDomain& d) const;

    double total(const DiscreteDomain& d) const;            // mu(Omega), signed
    double total_variation(const DiscreteDomain& d) const;  // |mu|(Omega)

    /// Jordan decomposition per node: sign of the combined nodal mass.
    MeasureData positive_part(const DiscreteDomain& d) const;
    MeasureData negative_part(const DiscreteDomain& d) const;
    MeasureData absolute(const DiscreteDomain& d) const;

    MeasureData scaled(double t) const;
    bool is_nonnegative(const DiscreteDomain& d) const;

    void validate(const DiscreteDomain& d) const;
};

struct MollifyResult {
    MeasureData measure;
    bool below_grid = false;  // bump radius under the grid spacing; input returned unchanged
};

/// Convolution of mu against a truncated Gaussian bump of radius 1/n,
/// renormalized on the grid so every unit of mass is preserved exactly.
MollifyResult mollify(const DiscreteDomain& d, const MeasureData& mu, int n);

}  // namespace fplab
