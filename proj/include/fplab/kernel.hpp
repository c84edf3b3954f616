#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"

#include <optional>

namespace fplab {

enum class KernelProfile { PurePower, CosineModulated };

/// Parameters of the nonlocal kernel: order s in (0,1), summability
/// p in (1, N/s), ellipticity constant Lambda_K >= 1 and the profile.
struct KernelSpec {
    double s = 0.5;
    double p = 2.0;
    double lambda_k = 1.0;
    KernelProfile profile = KernelProfile::PurePower;
    std::optional<double> c_ns;  // optional normalization constant

    void validate(int N) const;

    /// K(x, y) for nodes at distance r > 0.
    double value(double r, int N) const;
};

/// Normalization constant C_{N,s} of the fractional Laplacian.
double fractional_laplacian_constant(int N, double s);

/// Pairwise kernel table k_ij = K(x_i, x_j) w_i w_j, stored for rows
/// i < n_interior and all columns j (exterior-exterior pairs never couple
/// to a Dirichlet field). Immutable after assembly.
struct KernelTable {
    Eigen::MatrixXd k;  // n_interior x n_total, zero diagonal
    KernelSpec spec;

    double at(Eigen::Index i, Eigen::Index j) const {
        return i < k.rows() ? k(i, j) : k(j, i);
    }
};

KernelTable assemble_kernel(const DiscreteDomain& d, const KernelSpec& spec);

/// (Lu)_i = sum_{j != i} |u_i - u_j|^{p-2} (u_i - u_j) k_ij / w_i at every node.
Eigen::VectorXd apply_operator(const DiscreteDomain& d, const KernelTable& table,
                               const Eigen::VectorXd& u, double p);

/// (1/p) sum over ordered pairs i != j of |u_i - u_j|^p k_ij, for fields that
/// vanish on the collar.
double energy(const DiscreteDomain& d, const KernelTable& table, const Eigen::VectorXd& u,
              double p);

/// Gagliardo p-form (power p, pure-power kernel, exponent pair (s,p)) of the
/// truncation T_k(u); bounded by k * Lambda_K * |mu|(Omega) on solver output.
double truncation_energy(const DiscreteDomain& d, const Eigen::VectorXd& u, double k,
                         const KernelSpec& spec);

/// Tail(u; x_i, r) = (r^{sp} sum_{|x_j - x_i| >= r} |u_j|^{p-1}
///                    / |x_i - x_j|^{N+sp} w_j)^{1/(p-1)}.
struct TailResult {
    double value = 0.0;
    bool truncated = false;  // no node outside B_r(x)
};
TailResult tail(const DiscreteDomain& d, const Eigen::VectorXd& u, Eigen::Index x, double r,
                const KernelSpec& spec);

/// Analytic bound on the collar-truncation error of the tail sums:
/// Lambda_K (sup|u|)^{p-1} * sigma_N / (sp) * R_ext^{-sp}, per unit w_i.
double collar_truncation_bound(const DiscreteDomain& d, const Eigen::VectorXd& u,
                               const KernelSpec& spec);

/// sum_{i != j} |u_i-u_j|^p / (d + |u_i| + |u_j|)^xi * |x_i-x_j|^{-N-sp} w_i w_j.
double weighted_energy(const DiscreteDomain& d, const Eigen::VectorXd& u, double xi,
                       double shift, const KernelSpec& spec);

/// Truncation T_k applied elementwise.
Eigen::VectorXd truncate(const Eigen::VectorXd& u, double k);

}  // namespace fplab
