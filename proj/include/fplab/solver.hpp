#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"
#include "fplab/kernel.hpp"
#include "fplab/measure.hpp"
#include "fplab/nonlinearity.hpp"
#include "fplab/norms.hpp"

#include <vector>

namespace fplab {

struct SolveOptions {
    double tol = 1e-8;      // max-norm of the discrete weak residual
    long max_iter = 100000;
    std::vector<SeminormSpec> seminorms;  // diagnostic quasi-norms to report
    bool diagnostics = true;
};

struct SolveReport {
    Eigen::VectorXd u;  // full grid, zero on the collar
    long iterations = 0;
    double residual_norm = 0.0;
    double objective = 0.0;
    bool converged = false;

    // recomputable diagnostics
    double g_l1 = 0.0;                                       // sum |g(u_i)| w_i
    std::vector<std::pair<double, double>> truncation_energies;  // (k, value)
    std::vector<double> seminorm_values;
    double weak_star_up = 0.0;  // weak_norm_star(|u|^{p-1}, N/(N-sp))
};

/// Minimize J_h(v) = (1/p) sum_{i!=j} |v_i-v_j|^p k_ij + sum G(v_i) w_i
///                   - sum v_i m_i over fields vanishing on the collar.
/// Stationarity is the discrete weak identity
///   2 sum_j phi_p(u_i - u_j) k_ij + g(u_i) w_i = m_i,
/// driven below opts.tol in the max norm by damped Newton with an
/// epsilon-regularized Hessian continuation (exact at p = 2).
SolveReport minimize_J(const DiscreteDomain& d, const KernelTable& table, const Nonlinearity& g,
                       const MeasureData& mu, const SolveOptions& opts = {});

struct SolaReport {
    SolveReport final;
    std::vector<double> increments;  // W^{h,q} quasi-norm of u_{n+1} - u_n
    bool increments_decreasing = true;
    bool mollifier_saturated = false;  // bump radius fell under the grid spacing
};

/// Solve against mollified data for n = 1..n_max and track the Cauchy
/// increments in the requested W^{h,q} quasi-norm.
SolaReport solve_sola(const DiscreteDomain& d, const KernelTable& table, const Nonlinearity& g,
                      const MeasureData& mu, int n_max, const SeminormSpec& spec,
                      const SolveOptions& opts = {});

struct ComparisonResult {
    bool holds = false;
    double max_violation = 0.0;  // max over nodes of (v - u)
};

/// u >= v nodewise up to the given slack.
ComparisonResult check_comparison(const SolveReport& u, const SolveReport& v,
                                  double slack = 1e-8);

/// sum |g(u_i)| w_i <= |mu|(Omega) + tol.
bool absorption_l1_bound(const DiscreteDomain& d, const SolveReport& report,
                         const Nonlinearity& g, const MeasureData& mu, double tol = 1e-9);

struct TailSumBound {
    double bounded_part = 0.0;   // int_{Omega \ E_{s0}} g(|v|)
    double tail_integral = 0.0;  // int_{s0}^inf s^{-q-1} (g(s) - g(-s)) ds
    double bound = 0.0;          // bounded_part + q * C0 * tail_integral
};

/// Throws std::domain_error when the tail integral diverges (supercritical g).
/// The field term is included when a field is supplied.
TailSumBound tail_sum_bound(const Nonlinearity& g, double q_tilde, double C0, double s0,
                            const DiscreteDomain* d = nullptr,
                            const Eigen::VectorXd* field = nullptr);

/// W^{h,q} quasi-norm: Gagliardo seminorm plus the L^q term.
double whq_quasinorm(const DiscreteDomain& d, const Eigen::VectorXd& f, const SeminormSpec& spec);

}  // namespace fplab
