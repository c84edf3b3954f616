#include <doctest.h>

#include "fplab/domain.hpp"
#include "fplab/kernel.hpp"
#include "fplab/nonlinearity.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fplab;

namespace {

DiscreteDomain line(std::initializer_list<double> xs, double w = 1.0) {
    DiscreteDomain d;
    d.dim = 1;
    d.points.resize(static_cast<Eigen::Index>(xs.size()), 1);
    Eigen::Index r = 0;
    for (double x : xs) d.points(r++, 0) = x;
    d.weights = Eigen::VectorXd::Constant(d.points.rows(), w);
    d.n_interior = d.points.rows();
    d.diam = 1.0;
    d.spacing = 1.0;
    d.r_ext = 2.0;
    return d;
}

KernelSpec spec_1d() {
    KernelSpec s;
    s.s = 0.4;
    s.p = 2.0;  // valid: p < N/s = 2.5
    return s;
}

double phi(double t, double p) {
    return t == 0.0 ? 0.0 : std::pow(std::abs(t), p - 2.0) * t;
}

}  // namespace

TEST_CASE("kernel spec validation") {
    KernelSpec s = spec_1d();
    s.validate(1);
    s.p = 2.6;
    CHECK_THROWS_AS(s.validate(1), std::invalid_argument);  // p >= N/s
    s = spec_1d();
    s.lambda_k = 0.5;
    CHECK_THROWS_AS(s.validate(1), std::invalid_argument);
    s = spec_1d();
    s.c_ns = 3.0;  // outside the ellipticity band for lambda_k = 1
    CHECK_THROWS_AS(s.validate(1), std::invalid_argument);
}

TEST_CASE("assemble_kernel basic values") {
    DiscreteDomain d = line({0.0, 1.0});
    KernelTable t = assemble_kernel(d, spec_1d());
    CHECK(t.k(0, 1) == doctest::Approx(1.0));  // distance 1, unit weights
    CHECK(t.k(0, 0) == doctest::Approx(0.0));
    CHECK(t.at(0, 1) == doctest::Approx(t.at(1, 0)));

    // halving all weights quarters every k_ij
    DiscreteDomain dh = line({0.0, 1.0}, 0.5);
    KernelTable th = assemble_kernel(dh, spec_1d());
    CHECK(th.k(0, 1) == doctest::Approx(0.25));

    DiscreteDomain bad = line({0.0, 0.0});
    CHECK_THROWS_AS(assemble_kernel(bad, spec_1d()), std::invalid_argument);
}

TEST_CASE("modulated profile stays in the ellipticity band") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    KernelSpec pure = spec_1d();
    KernelSpec mod = spec_1d();
    mod.lambda_k = 2.0;
    mod.profile = KernelProfile::CosineModulated;
    KernelTable tp = assemble_kernel(d, pure);
    KernelTable tm = assemble_kernel(d, mod);
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        for (Eigen::Index j = 0; j < d.n_total(); ++j) {
            if (j == i || tp.k(i, j) == 0.0) continue;
            double ratio = tm.k(i, j) / tp.k(i, j);
            CHECK(ratio >= 1.0 / mod.lambda_k - 1e-12);
            CHECK(ratio <= mod.lambda_k + 1e-12);
        }
}

TEST_CASE("apply_operator hand values and symmetry") {
    DiscreteDomain d = line({0.0, 1.0});
    KernelTable t = assemble_kernel(d, spec_1d());
    Eigen::VectorXd u(2);
    u << 1.0, 0.0;
    Eigen::VectorXd Lu = apply_operator(d, t, u, 2.0);
    CHECK(Lu(0) == doctest::Approx(t.k(0, 1)));
    CHECK(Lu(1) == doctest::Approx(-t.k(0, 1)));

    CHECK(apply_operator(d, t, Eigen::VectorXd::Constant(2, 5.0), 2.0)
              .lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
    Eigen::VectorXd neg = apply_operator(d, t, Eigen::VectorXd(-u), 2.0);
    CHECK((neg + Lu).lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
}

TEST_CASE("energy hand value and scaling") {
    DiscreteDomain d = line({0.0, 1.0});
    KernelTable t = assemble_kernel(d, spec_1d());
    Eigen::VectorXd u(2);
    u << 0.0, 1.0;
    CHECK(energy(d, t, u, 2.0) == doctest::Approx(1.0));  // (1/2) * two ordered pairs
    for (double p : {1.5, 2.0, 3.0})
        CHECK(energy(d, t, 2.0 * u, p) == doctest::Approx(std::pow(2.0, p) * energy(d, t, u, p)));
}

TEST_CASE("energy gradient matches 2 w (Lu) by finite differences") {
    DiscreteDomain d = make_interval_domain(0.0, 0.5, 0.1);  // 5 interior nodes
    KernelTable t = assemble_kernel(d, spec_1d());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.2, 1.5);  // keep differences away from 0
    for (double p : {1.5, 2.0, 3.0}) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(d.n_total());
        for (Eigen::Index i = 0; i < d.n_interior; ++i)
            u(i) = U(rng) * (i % 2 == 0 ? 1.0 : -1.0);
        Eigen::VectorXd Lu = apply_operator(d, t, u, p);
        for (Eigen::Index i = 0; i < d.n_interior; ++i) {
            double h = 1e-6;
            Eigen::VectorXd up = u, dn = u;
            up(i) += h;
            dn(i) -= h;
            double fd = (energy(d, t, up, p) - energy(d, t, dn, p)) / (2.0 * h);
            double an = 2.0 * d.weights(i) * Lu(i);
            CHECK(fd == doctest::Approx(an).epsilon(1e-5));
        }
    }
}

TEST_CASE("difference form is monotone") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    for (double p : {1.5, 2.0, 3.0})
        for (int k = 0; k < 200; ++k) {
            double a = U(rng), b = U(rng);
            CHECK((phi(a, p) - phi(b, p)) * (a - b) >= -1e-15);
        }
}

TEST_CASE("truncation energy") {
    DiscreteDomain d = make_interval_domain(0.0, 0.5, 0.1);
    KernelSpec s = spec_1d();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-0.8, 0.8);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(d.n_total());
    for (Eigen::Index i = 0; i < d.n_interior; ++i) u(i) = U(rng);
    // u bounded by 1: truncation at level 1 leaves it unchanged
    CHECK(truncation_energy(d, u, 1.0, s) == doctest::Approx(truncation_energy(d, u, 50.0, s)));
    // clamping can only shrink the form
    CHECK(truncation_energy(d, u, 0.3, s) <= truncation_energy(d, u, 1.0, s) + 1e-12);
    CHECK(truncation_energy(d, Eigen::VectorXd::Zero(d.n_total()), 1.0, s) ==
          doctest::Approx(0.0));
    CHECK_THROWS_AS(truncation_energy(d, u, 0.0, s), std::invalid_argument);
}

TEST_CASE("tail closed form") {
    KernelSpec s = spec_1d();
    DiscreteDomain d = line({0.0, 2.0});
    Eigen::VectorXd u(2);
    u << 0.0, 3.0;
    double r = 1.0;
    TailResult tr = tail(d, u, 0, r, s);
    CHECK_FALSE(tr.truncated);
    // one-term sum: (r^{sp} |u_1|^{p-1} w / |x0-x1|^{N+sp})^{1/(p-1)}
    double expo = 1.0 + s.s * s.p;
    double expected = std::pow(std::pow(r, s.s * s.p) * 3.0 / std::pow(2.0, expo), 1.0);
    CHECK(tr.value == doctest::Approx(expected));

    TailResult inside = tail(d, u, 0, 10.0, s);
    CHECK(inside.truncated);
    CHECK(inside.value == doctest::Approx(0.0));
    CHECK_THROWS_AS(tail(d, u, 0, 0.0, s), std::invalid_argument);
}

TEST_CASE("weighted energy two-node hand value") {
    KernelSpec s = spec_1d();
    DiscreteDomain d = line({0.0, 1.0});
    Eigen::VectorXd u(2);
    u << 0.0, 2.0;
    double xi = 1.5, shift = 0.5;
    double expected = 2.0 * std::pow(2.0, s.p) / std::pow(0.5 + 2.0, xi);
    CHECK(weighted_energy(d, u, xi, shift, s) == doctest::Approx(expected));
    CHECK(weighted_energy(d, Eigen::VectorXd::Zero(2), xi, shift, s) == doctest::Approx(0.0));
    CHECK_THROWS_AS(weighted_energy(d, u, 1.0, shift, s), std::invalid_argument);
}

TEST_CASE("fractional laplacian constant closed form at s = 1/2, N = 1") {
    // 2^{2s} pi^{-1/2} s Gamma((1+2s)/2) / Gamma(1-s) = 1/pi at s = 1/2
    CHECK(fractional_laplacian_constant(1, 0.5) == doctest::Approx(1.0 / std::numbers::pi));
}

TEST_CASE("nonlinearity families") {
    Nonlinearity g = Nonlinearity::power(1.5);
    CHECK(g.g(4.0) == doctest::Approx(8.0));
    CHECK(g.g(-4.0) == doctest::Approx(-8.0));
    CHECK(g.G(1.0) == doctest::Approx(1.0 / 2.5));
    CHECK(g.monotone_on_samples());

    Nonlinearity t = Nonlinearity::truncated(g, 8.0);
    CHECK(t.g(4.0) == doctest::Approx(8.0));
    CHECK(t.g(9.0) == doctest::Approx(8.0));  // clamped: g(9) = 27 -> 8
    CHECK(t.g(-9.0) == doctest::Approx(-8.0));
    // primitive is linear past the clamp threshold t_n = 4
    CHECK(t.G(5.0) == doctest::Approx(std::pow(4.0, 2.5) / 2.5 + 8.0 * 1.0));
    // nested truncations take the tighter level
    CHECK(Nonlinearity::truncated(t, 20.0).truncation_level() == doctest::Approx(8.0));
    CHECK(Nonlinearity::truncated(t, 2.0).truncation_level() == doctest::Approx(2.0));

    Nonlinearity tab = Nonlinearity::table({-1.0, 0.0, 2.0}, {-2.0, 0.0, 4.0});
    CHECK(tab.g(1.0) == doctest::Approx(2.0));
    CHECK(tab.g(5.0) == doctest::Approx(4.0));  // constant extrapolation
    CHECK(tab.G(0.0) == doctest::Approx(0.0));
    CHECK(tab.G(2.0) == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(tab.monotone_on_samples());
    CHECK_THROWS_AS(Nonlinearity::table({0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(Nonlinearity::power(-1.0), std::invalid_argument);
}
