#include <doctest.h>

#include "fplab/domain.hpp"
#include "fplab/norms.hpp"

#include <cmath>
#include <random>

using namespace fplab;

namespace {

DiscreteDomain two_node_line() {
    DiscreteDomain d;
    d.dim = 1;
    d.points.resize(2, 1);
    d.points << 0.0, 1.0;
    d.weights = Eigen::VectorXd::Ones(2);
    d.n_interior = 2;
    d.diam = 1.0;
    d.spacing = 1.0;
    d.r_ext = 2.0;
    return d;
}

}  // namespace

TEST_CASE("distribution function") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(d.n_total());
    CHECK(distribution_function(d, f, 1.0) == doctest::Approx(0.0));
    f.head(d.n_interior).setConstant(3.0);
    CHECK(distribution_function(d, f, 1.0) == doctest::Approx(d.interior_volume()));
    CHECK(distribution_function(d, f, 3.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(distribution_function(d, f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(distribution_function(d, f, -1.0), std::invalid_argument);
}

TEST_CASE("weak norm star: indicator and two-level oracles") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    Eigen::VectorXd f = Eigen::VectorXd::Zero(d.n_total());
    CHECK(weak_norm_star(d, f, 2.0) == doctest::Approx(0.0));

    // indicator of 4 nodes, |E| = 0.4
    for (int i = 0; i < 4; ++i) f(i) = 1.0;
    CHECK(weak_norm_star(d, f, 2.0) == doctest::Approx(std::sqrt(0.4)));

    // two levels: 2 on E1 (|E1| = 0.2), 1 on E2 (|E2| = 0.3)
    f.setZero();
    f(0) = f(1) = 2.0;
    f(2) = f(3) = f(4) = 1.0;
    for (double q : {1.5, 2.0, 3.0}) {
        double expected = std::max(2.0 * std::pow(0.2, 1.0 / q), std::pow(0.5, 1.0 / q));
        CHECK(weak_norm_star(d, f, q) == doctest::Approx(expected));
    }
}

TEST_CASE("weak norm sup equals the brute-force subset oracle") {
    DiscreteDomain d = make_interval_domain(0.0, 1.2, 0.1);  // 12 interior nodes
    REQUIRE(d.n_interior == 12);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int rep = 0; rep < 5; ++rep) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(d.n_total());
        for (Eigen::Index i = 0; i < d.n_interior; ++i) f(i) = U(rng);
        for (double q : {1.5, 2.0, 3.0}) {
            double qp = q / (q - 1.0);
            double brute = 0.0;
            for (unsigned mask = 1; mask < (1u << 12); ++mask) {
                double mass = 0.0, vol = 0.0;
                for (int i = 0; i < 12; ++i)
                    if (mask & (1u << i)) {
                        mass += std::abs(f(i)) * d.weights(i);
                        vol += d.weights(i);
                    }
                brute = std::max(brute, mass / std::pow(vol, 1.0 / qp));
            }
            CHECK(weak_norm_sup(d, f, q) == doctest::Approx(brute));
        }
    }
}

TEST_CASE("equinorm sandwich and Chebyshev") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.05);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(d.n_total());
        for (Eigen::Index i = 0; i < d.n_interior; ++i) f(i) = U(rng);
        for (double q : {1.5, 2.0, 3.0}) {
            double star = weak_norm_star(d, f, q);
            double sup = weak_norm_sup(d, f, q);
            CHECK(star <= sup * (1.0 + 1e-12));
            CHECK(sup <= q / (q - 1.0) * star * (1.0 + 1e-12));
            for (double s : {0.5, 1.0, 2.0})
                CHECK(distribution_function(d, f, s) * std::pow(s, q) <=
                      std::pow(sup, q) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("gagliardo seminorm: two-node hand value") {
    DiscreteDomain d = two_node_line();
    Eigen::VectorXd f(2);
    f << 0.0, 1.0;
    // both ordered pairs contribute |1|^2 / 1^{1+0.5}
    CHECK(gagliardo_form(d, f, 0.25, 2.0) == doctest::Approx(2.0));
    SeminormSpec spec{0.25, 2.0};
    CHECK(gagliardo_seminorm(d, f, spec, 0.5, 2.5) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("gagliardo seminorm: homogeneity and kernel of constants") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    SeminormSpec spec{0.2, 1.2};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Eigen::VectorXd f(d.n_total());
    for (Eigen::Index i = 0; i < d.n_total(); ++i) f(i) = U(rng);
    double base = gagliardo_seminorm(d, f, spec, 0.5, 2.0);
    CHECK(gagliardo_seminorm(d, 3.0 * f, spec, 0.5, 2.0) == doctest::Approx(3.0 * base));
    CHECK(gagliardo_seminorm(d, Eigen::VectorXd::Constant(d.n_total(), 4.2), spec, 0.5, 2.0) ==
          doctest::Approx(0.0));
}

TEST_CASE("seminorm spec invariants") {
    SeminormSpec ok{0.25, 1.0};
    ok.validate(0.5, 2.0, 1);  // q < 1*(1)/(0.5) = 2
    CHECK_THROWS_AS((SeminormSpec{0.6, 1.0}).validate(0.5, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS((SeminormSpec{0.25, 2.5}).validate(0.5, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(weak_norm_sup(two_node_line(), Eigen::VectorXd::Zero(2), 1.0),
                    std::invalid_argument);
}
