#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"
#include "fplab/kernel.hpp"
#include "fplab/measure.hpp"
#include "fplab/nonlinearity.hpp"
#include "fplab/solver.hpp"
#include "fplab/wolff.hpp"

#include <vector>

namespace fplab {

/// Constant of the ball inequality ||S(v)|| <= C (t^a + t^kappa + rho),
/// measured on the current grid as the worst linear-solve estimate ratio
/// weak_norm_star(|w|^{p-1}, N/(N-sp)) / |nu|(Omega) over a probe family.
double measure_ball_constant(const DiscreteDomain& d, const KernelTable& table,
                             const std::vector<MeasureData>& probes,
                             const SolveOptions& opts = {});

struct BallConstants {
    double t0 = 0.0;
    double rho0 = 0.0;
    bool feasible = false;
};

/// Logarithmic scan over t for the pair (t0, rho0) with
/// rho0 = (t0 - C t0^a - C t0^kappa) / C maximal, so that
/// C (t0^a + t0^kappa + rho) <= t0 for every rho <= rho0. (The largest
/// feasible t0 itself carries no rho headroom, so the scan keeps the one
/// with the most.) Infeasible when the scan exhausts without a hit.
BallConstants solve_ball_constants(double C, double a, double kappa);

struct FixedPointConfig {
    double rho = 0.0;   // data multiplier
    double t0 = 0.0;    // invariant-ball radius in the weak quasi-norm
    double C = 0.0;     // measured ball constant (recorded, not used per step)
    double a = 0.0;     // N/(N - sp)
    double kappa = 0.0;
    int max_iter = 200;
    double tol = 0.0;   // L1 stabilization threshold; 0 = 1e-6 * |Omega|
};

struct OrbitStep {
    double weak_norm = 0.0;     // weak_norm_star(v, a)
    double l1_increment = 0.0;  // sum |v_new - v| w
};

struct FixedPointResult {
    Eigen::VectorXd v;  // fixed point of S, lives at power p-1
    Eigen::VectorXd u;  // |v|^{1/(p-1)} sign v
    std::vector<OrbitStep> orbit;
    bool converged = false;
    bool escaped = false;  // orbit left the ball ||v||_* <= t0
    double residual_l1 = 0.0;
};

/// Iterate v -> S(v): solve Lw = g(|v|^{1/(p-1)} sign v) + rho tau, set
/// S(v) = |w|^{p-1} sign w, starting from v = 0.
FixedPointResult fixed_point_iterate(const DiscreteDomain& d, const KernelTable& table,
                                     const Nonlinearity& g, const MeasureData& tau,
                                     const FixedPointConfig& config,
                                     const SolveOptions& opts = {});

struct MonotoneSourceResult {
    Eigen::VectorXd u;
    Eigen::VectorXd barrier;         // A C W[rho tau] nodewise
    std::vector<double> increments;  // sup-norm of u_n - u_{n-1}
    int iterations = 0;
    bool stabilized = false;
    bool aborted_monotone = false;  // nodewise decrease beyond 1e-12
    bool aborted_barrier = false;   // iterate exceeded the barrier (rho too large)
    bool admissible = true;         // (A C)^{kappa/(p-1)} M rho^{(kappa-p+1)/(p-1)^2} + 1 < 2
    double A = 0.0, C = 0.0;
    double upper_fit = 0.0;  // smallest M with u <= M W[rho tau]
    double lower_fit = 0.0;  // smallest M with M^{-1} W^{d(x)/8}[mu] <= u, dmu = u^k dx + rho dtau
};

/// Monotone iteration u_0: Lu_0 = rho tau, u_n: Lu_n = u_{n-1}^kappa + rho tau
/// under the upper barrier A C W[rho tau] with A = 2^{1/(p-1)+1} and C the
/// measured linear comparability constant. Stops at 1% sup-norm stabilization.
MonotoneSourceResult monotone_source_iterate(const DiscreteDomain& d, const KernelTable& table,
                                             double kappa, const MeasureData& tau, double rho,
                                             const WolffQuery& q, double M, int max_iter = 50,
                                             const SolveOptions& opts = {});

}  // namespace fplab
