#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"
#include "fplab/kernel.hpp"
#include "fplab/measure.hpp"
#include "fplab/wolff.hpp"

#include <vector>

namespace fplab {

struct Ball {
    Eigen::VectorXd center;
    double radius = 0.0;
};

/// Exponent applied to the Wolff potential in the ball condition. The two
/// variants are deliberately both available; Kappa is the default.
enum class BallExponent { Kappa, KappaOverPm1 };

struct BallConditionResult {
    std::vector<double> ratios;  // one per ball carrying mass, in input order
    double max_ratio = 0.0;
    bool any = false;  // false when every ball was skipped (tau(B) = 0)
};

/// For each ball B: int_B (W_{alpha,p}^{2 diam B}[tau|_B])^E dx / tau(B),
/// with E = kappa or kappa/(p-1). Balls with tau(B) = 0 are skipped.
BallConditionResult check_ball_condition(const DiscreteDomain& d, const MeasureData& tau,
                                         double kappa, const WolffQuery& q,
                                         const std::vector<Ball>& balls,
                                         BallExponent variant = BallExponent::Kappa);

/// F1 = W[tau], F2 = W[F1^kappa dx]; returns sup over interior nodes with
/// F1 > 0 of F2/F1 (0 for tau = 0).
double check_wolff_composition(const DiscreteDomain& d, const MeasureData& tau, double kappa,
                               const WolffQuery& q);

struct GrowthResult {
    double fitted = 0.0;     // least-squares slope, minimized over centers
    double threshold = 0.0;  // (kappa(N - sp) - N(p-1)) / (kappa - p + 1)
    bool passes = false;     // fitted >= threshold - 0.1
};

/// Fits log tau(B_t(x)) against log t over t in [4*spacing, diam/2] at every
/// center; rejects centers with fewer than 4 radii carrying mass.
GrowthResult measure_growth_exponent(const DiscreteDomain& d, const MeasureData& tau,
                                     double kappa, const KernelSpec& spec,
                                     const std::vector<Eigen::VectorXd>& centers);

}  // namespace fplab
