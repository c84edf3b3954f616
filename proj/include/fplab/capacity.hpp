#pragma once

#include <Eigen/Core>

#include <vector>

namespace fplab {

/// Discretized Bessel capacity program
///   Cap_{alpha,beta}(E) = inf sum_i g_i^beta w_i
///   s.t. sum_j G_alpha(|x_e - x_j|) g_j w_j >= 1 for all e in E, g >= 0,
/// posed on an ambient grid that may exceed the physical domain.
struct CapacityProblem {
    double alpha = 1.0;
    double beta = 2.0;
    Eigen::MatrixXd points;   // n x dim ambient grid
    Eigen::VectorXd weights;  // cell volumes
    std::vector<Eigen::Index> target;  // E as node indices

    void validate() const;
};

/// Quadratic-penalty + projected-descent solve to relative tolerance tol;
/// the reported value comes from the feasible rescaling of the final iterate,
/// so it is an upper bound that tightens with the penalty. Cap(empty) = 0.
/// The kernel self-interaction uses the half-cell radius w_i^{1/dim}/2.
double capacity(const CapacityProblem& problem, double tol = 1e-4);

enum class CapacityRegime { Positive, Null };

/// Points carry positive Cap_{alpha,beta} iff alpha*beta > N; the boundary
/// case is classified as null.
CapacityRegime point_capacity_regime(double alpha, double beta, int N);

}  // namespace fplab
