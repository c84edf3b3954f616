#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"
#include "fplab/measure.hpp"

#include <functional>

namespace fplab {

/// Truncated Wolff potential parameters: order alpha, exponent p, truncation
/// radius R, and the log-spaced radial grid resolution used by the radial
/// quadrature path.
struct WolffQuery {
    double alpha = 0.5;
    double p = 2.0;
    double R = 1.0;
    int radial_grid = 512;

    void validate(int N) const;
};

/// W_{alpha,p}^R[mu](x) = int_0^R (mu(B_r(x)) / r^{N - alpha p})^{1/(p-1)} dr/r.
/// On a grid mu(B_r(x)) is a step function of r jumping at the sorted node
/// distances, so each segment integrates in closed form; the integral is
/// truncated below at spacing/4 (mass closer than that is carried by the
/// first segment). Exact for atomic measures.
/// Negative measures are rejected unless use_absolute is set, in which case
/// |mu| is integrated.
double wolff_potential(const DiscreteDomain& d, const MeasureData& mu,
                       const Eigen::VectorXd& x, const WolffQuery& q, bool use_absolute = false);

/// wolff_potential at every interior node (zero on the collar).
Eigen::VectorXd wolff_field(const DiscreteDomain& d, const MeasureData& mu, const WolffQuery& q,
                            bool use_absolute = false);

/// Radial-profile path: ball_mass(r) = mu(B_r(x)) given analytically.
/// Quadrature over radial_grid log-spaced panels on [max(r_lo, 1e-9 R), R].
double wolff_potential_radial(const std::function<double(double)>& ball_mass, int N,
                              const WolffQuery& q, double r_lo = 0.0);

}  // namespace fplab
