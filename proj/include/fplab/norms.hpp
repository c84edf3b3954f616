#pragma once

#include <Eigen/Core>

#include "fplab/domain.hpp"

namespace fplab {

/// Differentiability/summability pair for the Gagliardo quasi-norm,
/// constrained to 0 < h < s and 0 < q < N(p-1)/(N-s).
struct SeminormSpec {
    double h;
    double q;

    void validate(double s, double p, int N) const;
};

/// lambda_f(a) = measure of {|f| > a}, as a sum of node weights.
double distribution_function(const DiscreteDomain& d, const Eigen::VectorXd& f, double a);

/// Marcinkiewicz quasi-norm sup_{a>0} (a^q lambda_f(a))^{1/q}. The sup over a
/// finite grid is attained at the jump points of lambda_f, so the node values
/// of |f| are scanned directly.
double weak_norm_star(const DiscreteDomain& d, const Eigen::VectorXd& f, double q);

/// Equivalent weak norm sup_omega (int_omega |f|) / |omega|^{1/q'}, q > 1.
/// The sup is attained on superlevel sets of |f|, so prefixes of the nodes
/// sorted by |f| descending are scanned.
double weak_norm_sup(const DiscreteDomain& d, const Eigen::VectorXd& f, double q);

/// Raw double sum  sum_{i != j} |f_i - f_j|^q / |x_i - x_j|^{N + h q} w_i w_j.
double gagliardo_form(const DiscreteDomain& d, const Eigen::VectorXd& f, double h, double q);

/// (gagliardo_form)^{1/q}; spec invariants are enforced against (s, p, N).
double gagliardo_seminorm(const DiscreteDomain& d, const Eigen::VectorXd& f,
                          const SeminormSpec& spec, double s, double p);

}  // namespace fplab
