#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"
#include "fplab/kernel.hpp"
#include "fplab/measure.hpp"
#include "fplab/nonlinearity.hpp"
#include "fplab/norms.hpp"
#include "fplab/solver.hpp"
#include "fplab/wolff.hpp"

#include <vector>

namespace fplab {

enum class Criticality { Subcritical, Supercritical };

struct SubcriticalResult {
    Criticality verdict = Criticality::Subcritical;
    double lambda_g = 0.0;  // int_1^inf (g(t) - g(-t)) t^{-q-1} dt when finite
    double exponent = 0.0;  // q = N(p-1)/(N - sp)
};

/// Integrability test for the absorption tail; divergence is a verdict,
/// not an error.
SubcriticalResult subcritical_check(const Nonlinearity& g, int N, double s, double p);

struct AbsorptionResult {
    SolveReport report;
    Eigen::VectorXd wolff_plus;   // W[mu+] at every node
    Eigen::VectorXd wolff_minus;  // W[mu-]
    double c_plus = 0.0;          // smallest c with u <= c W[mu+]
    double c_minus = 0.0;         // smallest c with -c W[mu-] <= u
    SubcriticalResult verdict;
    double g_l1_power = 0.0;   // (int |g(u)|)^{1/(p-1)}
    double seminorm = 0.0;     // requested (h,q) seminorm of u
    double mu_tv_power = 0.0;  // |mu|(Omega)^{1/(p-1)}
};

/// Solve Lu + g(u) = mu and fit the pointwise sandwich against the Wolff
/// fields of the Jordan parts. Unbounded g is handled by the truncated
/// scheme: levels n = 1, 2, 4, ... until two successive fields agree to 1%.
AbsorptionResult run_absorption(const DiscreteDomain& d, const KernelTable& table,
                                const Nonlinearity& g, const MeasureData& mu,
                                const WolffQuery& q, const SeminormSpec& spec,
                                const SolveOptions& opts = {});

struct PowerAbsorptionResult {
    AbsorptionResult base;
    double u_kappa_l1 = 0.0;            // int |u|^kappa at the final level
    std::vector<double> level_l1;       // int |u_n|^kappa per truncation level
    double final_level = 0.0;           // truncation level of the reported solve
    bool diverged = false;              // levels kept growing without stabilizing
};

/// Power absorption g(t) = |t|^{kappa-1} t via the truncated scheme; a
/// non-stabilizing, growing level sequence is the non-existence signature
/// and is reported, never asserted as a theorem.
PowerAbsorptionResult run_power_absorption(const DiscreteDomain& d, const KernelTable& table,
                                           double kappa, const MeasureData& mu,
                                           const WolffQuery& q, const SeminormSpec& spec,
                                           const SolveOptions& opts = {}, int max_levels = 10);

/// Least-squares slope of log|u| against log|x - x0| over the annulus
/// r_lo <= |x - x0| <= r_hi (interior nodes with u != 0).
double radial_loglog_slope(const DiscreteDomain& d, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& x0, double r_lo, double r_hi);

}  // namespace fplab
