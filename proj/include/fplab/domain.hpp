#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace fplab {

/// Collocation grid for a bounded open set Omega in R^N (N = 1 or 2),
/// surrounded by an exterior collar on which Dirichlet fields vanish.
/// Interior nodes come first, exterior collar nodes after.
struct DiscreteDomain {
    int dim = 1;
    Eigen::MatrixXd points;   // n_total x dim, interior rows first
    Eigen::VectorXd weights;  // quadrature weight (volume) per node
    Eigen::Index n_interior = 0;
    double diam = 0.0;        // diameter of Omega
    double spacing = 0.0;     // finest grid spacing
    double r_ext = 0.0;       // collar reach from every interior point

    Eigen::Index n_total() const { return points.rows(); }
    Eigen::Index n_exterior() const { return n_total() - n_interior; }
    bool is_interior(Eigen::Index i) const { return i < n_interior; }

    double node_distance(Eigen::Index i, Eigen::Index j) const {
        return (points.row(i) - points.row(j)).norm();
    }

    /// |Omega| as the sum of interior weights.
    double interior_volume() const { return weights.head(n_interior).sum(); }

    /// Index of the interior node closest to x; ties broken by lowest index.
    Eigen::Index nearest_interior(const Eigen::VectorXd& x) const;

    void validate() const;
};

/// 1D domain Omega = (a, b) on a uniform grid of spacing h, with a uniform
/// exterior collar out to collar_factor * diam from every interior point.
DiscreteDomain make_interval_domain(double a, double b, double h,
                                    double collar_factor = 4.0);

/// 2D domain Omega = ball of given radius about the origin, uniform grid of
/// spacing h inside a bounding box, with a graded (dyadically coarsening)
/// square collar out to collar_factor * diam. The grading keeps the node
/// count at desk scale; cell weights equal cell volumes throughout.
DiscreteDomain make_disk_domain(double radius, double h,
                                double collar_factor = 4.0);

/// JSON round trip for the domain descriptor (dim, bounds, spacing, R_ext).
std::string domain_descriptor_json(const DiscreteDomain& d);
DiscreteDomain domain_from_descriptor_json(const std::string& text);

}  // namespace fplab
