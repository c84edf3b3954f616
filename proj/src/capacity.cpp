#include "fplab/capacity.hpp"

#include "fplab/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fplab {

void CapacityProblem::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("capacity: need alpha > 0");
    if (!(beta > 1.0)) throw std::invalid_argument("capacity: need beta > 1");
    if (points.rows() == 0 || points.rows() != weights.size())
        throw std::invalid_argument("capacity: grid/weight size mismatch");
    const int dim = static_cast<int>(points.cols());
    if (!(alpha < dim)) throw std::invalid_argument("capacity: need alpha < N");
    for (Eigen::Index e : target)
        if (e < 0 || e >= points.rows())
            throw std::invalid_argument("capacity: target index out of range");
}

double capacity(const CapacityProblem& prob, double tol) {
    prob.validate();
    if (prob.target.empty()) return 0.0;

    const Eigen::Index n = prob.points.rows();
    const Eigen::Index ne = static_cast<Eigen::Index>(prob.target.size());
    const int dim = static_cast<int>(prob.points.cols());
    const double beta = prob.beta;

    // constraint matrix A_{e,j} = G_alpha(|x_e - x_j|) w_j with the half-cell
    // radius regularizing the self pair
    Eigen::MatrixXd A(ne, n);
    for (Eigen::Index a = 0; a < ne; ++a) {
        Eigen::Index e = prob.target[static_cast<size_t>(a)];
        for (Eigen::Index j = 0; j < n; ++j) {
            double r = (prob.points.row(e) - prob.points.row(j)).norm();
            if (r == 0.0) r = 0.5 * std::pow(prob.weights(j), 1.0 / dim);
            A(a, j) = bessel_kernel(dim, prob.alpha, r) * prob.weights(j);
        }
        if (A.row(a).sum() < 1e-300)
            throw std::runtime_error("capacity: infeasible discretization (dead kernel row)");
    }

    auto objective = [&](const Eigen::VectorXd& g) {
        return g.array().pow(beta).matrix().dot(prob.weights);
    };
    auto feasible_value = [&](const Eigen::VectorXd& g) {
        double worst = (A * g).minCoeff();
        if (worst <= 0.0) return std::numeric_limits<double>::infinity();
        return objective(g) / std::pow(worst, beta);
    };

    // start from the uniform feasible potential
    Eigen::VectorXd g = Eigen::VectorXd::Ones(n);
    g /= (A * g).minCoeff();

    double best = feasible_value(g);
    for (double rho = 1.0; rho <= 1e8; rho *= 10.0) {
        auto penalized = [&](const Eigen::VectorXd& v) {
            double p = objective(v);
            Eigen::VectorXd slack = Eigen::VectorXd::Ones(ne) - A * v;
            for (Eigen::Index a = 0; a < ne; ++a)
                if (slack(a) > 0.0) p += rho * slack(a) * slack(a);
            return p;
        };
        double fg = penalized(g);
        double step = 1.0;
        for (int it = 0; it < 400; ++it) {
            Eigen::VectorXd grad =
                (beta * g.array().pow(beta - 1.0) * prob.weights.array()).matrix();
            Eigen::VectorXd slack = Eigen::VectorXd::Ones(ne) - A * g;
            for (Eigen::Index a = 0; a < ne; ++a)
                if (slack(a) > 0.0) grad -= 2.0 * rho * slack(a) * A.row(a).transpose();
            // projected backtracking step
            bool moved = false;
            for (int bt = 0; bt < 60; ++bt) {
                Eigen::VectorXd gn = (g - step * grad).cwiseMax(0.0);
                double fn = penalized(gn);
                if (fn < fg - 1e-14 * std::abs(fg)) {
                    g = gn;
                    fg = fn;
                    step *= 2.0;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        double val = feasible_value(g);
        if (std::isfinite(val) && val < best) {
            if (best - val <= tol * best && rho >= 1e4) {
                best = val;
                break;
            }
            best = val;
        }
    }
    return best;
}

CapacityRegime point_capacity_regime(double alpha, double beta, int N) {
    if (!(alpha > 0.0 && beta > 0.0))
        throw std::invalid_argument("point_capacity_regime: need alpha, beta > 0");
    return alpha * beta > static_cast<double>(N) ? CapacityRegime::Positive
                                                 : CapacityRegime::Null;
}

}  // namespace fplab
