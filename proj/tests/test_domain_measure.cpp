#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fplab/domain.hpp"
#include "fplab/measure.hpp"

#include <cmath>
#include <numbers>

using namespace fplab;

TEST_CASE("interval domain layout") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    CHECK(d.dim == 1);
    CHECK(d.n_interior == 10);
    CHECK(d.interior_volume() == doctest::Approx(1.0));
    CHECK(d.diam == doctest::Approx(1.0));
    CHECK(d.r_ext == doctest::Approx(4.0));
    CHECK(d.n_exterior() > 0);
    d.validate();

    // collar reaches r_ext from every interior point
    double lo = d.points.col(0).minCoeff(), hi = d.points.col(0).maxCoeff();
    CHECK(lo < 0.0 - 3.5);
    CHECK(hi > 1.0 + 3.5);
    // interior rows come first and lie inside Omega
    for (Eigen::Index i = 0; i < d.n_interior; ++i) {
        CHECK(d.points(i, 0) > 0.0);
        CHECK(d.points(i, 0) < 1.0);
    }
}

TEST_CASE("nearest interior node, ties to the lowest index") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    Eigen::VectorXd x(1);
    x << 0.1;  // equidistant between the nodes at 0.05 and 0.15
    Eigen::Index i = d.nearest_interior(x);
    CHECK(d.points(i, 0) == doctest::Approx(0.05));
    x << 0.52;
    CHECK(d.points(d.nearest_interior(x), 0) == doctest::Approx(0.55));
}

TEST_CASE("disk domain layout") {
    DiscreteDomain d = make_disk_domain(1.0, 0.125);
    CHECK(d.dim == 2);
    d.validate();
    CHECK(d.interior_volume() == doctest::Approx(std::numbers::pi).epsilon(0.05));
    CHECK(d.r_ext == doctest::Approx(8.0));
    // graded collar keeps the node count at desk scale
    CHECK(d.n_total() < 8000);
    // every interior node lies in the disk, every exterior node outside
    for (Eigen::Index i = 0; i < d.n_total(); ++i) {
        double r = d.points.row(i).norm();
        if (d.is_interior(i))
            CHECK(r < 1.0);
        else
            CHECK(r >= 1.0 - 1e-12);
    }
}

TEST_CASE("domain descriptor JSON round trip") {
    DiscreteDomain d = make_interval_domain(-0.5, 0.5, 0.05);
    DiscreteDomain back = domain_from_descriptor_json(domain_descriptor_json(d));
    CHECK(back.dim == d.dim);
    CHECK(back.diam == doctest::Approx(d.diam));
    CHECK(back.spacing == doctest::Approx(d.spacing));
    CHECK(back.r_ext == doctest::Approx(d.r_ext));
    CHECK(back.n_interior == d.n_interior);
}

TEST_CASE("dirac and uniform-ball measures") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    Eigen::VectorXd x(1);
    x << 0.32;
    MeasureData mu = MeasureData::dirac(d, x, 2.5);
    CHECK(mu.total(d) == doctest::Approx(2.5));
    CHECK(mu.total_variation(d) == doctest::Approx(2.5));
    Eigen::VectorXd m = mu.node_masses(d);
    CHECK(m(d.nearest_interior(x)) == doctest::Approx(2.5));
    CHECK(m.cwiseAbs().sum() == doctest::Approx(2.5));

    Eigen::VectorXd c(1);
    c << 0.5;
    MeasureData ball = MeasureData::uniform_ball(d, c, 0.25, 1.0);
    CHECK(ball.total(d) == doctest::Approx(1.0));
    CHECK(ball.is_nonnegative(d));
}

TEST_CASE("jordan decomposition per node") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    MeasureData mu;
    mu.atoms.emplace_back(0, 1.0);
    mu.atoms.emplace_back(3, -2.0);
    mu.density = Eigen::VectorXd::Zero(d.n_interior);
    mu.density(3) = 5.0;  // combines with the atom on node 3
    mu.density(7) = -1.0;

    Eigen::VectorXd m = mu.node_masses(d);
    Eigen::VectorXd pos = mu.positive_part(d).node_masses(d);
    Eigen::VectorXd neg = mu.negative_part(d).node_masses(d);
    CHECK((pos - neg - m).lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
    CHECK((pos.array() >= 0.0).all());
    CHECK((neg.array() >= 0.0).all());
    // mutual singularity nodewise
    CHECK(pos.cwiseProduct(neg).lpNorm<Eigen::Infinity>() == doctest::Approx(0.0));
    CHECK(mu.total_variation(d) == doctest::Approx(pos.sum() + neg.sum()));
    CHECK(mu.absolute(d).total(d) == doctest::Approx(mu.total_variation(d)));
}

TEST_CASE("scaling and exterior atoms") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.1);
    Eigen::VectorXd x(1);
    x << 0.5;
    MeasureData mu = MeasureData::dirac(d, x, 1.0);
    CHECK(mu.scaled(-3.0).total_variation(d) == doctest::Approx(3.0));
    CHECK_FALSE(mu.scaled(-3.0).is_nonnegative(d));

    MeasureData bad;
    bad.atoms.emplace_back(d.n_interior, 1.0);  // first collar node
    CHECK_THROWS_AS(bad.validate(d), std::invalid_argument);
}

TEST_CASE("mollifier preserves mass and positivity") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.05);
    Eigen::VectorXd x(1);
    x << 0.5;
    MeasureData mu = MeasureData::dirac(d, x, 1.0);

    MollifyResult r = mollify(d, mu, 4);  // bump radius 0.25 >= spacing
    CHECK_FALSE(r.below_grid);
    CHECK(r.measure.total(d) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.measure.is_nonnegative(d));
    // support stays within the bump radius of the atom
    double atom_x = d.points(mu.atoms.front().first, 0);
    Eigen::VectorXd m = r.measure.node_masses(d);
    for (Eigen::Index i = 0; i < d.n_interior; ++i)
        if (m(i) != 0.0) CHECK(std::abs(d.points(i, 0) - atom_x) <= 0.25 + 1e-12);

    MollifyResult fine = mollify(d, mu, 100);  // radius 0.01 < spacing
    CHECK(fine.below_grid);
    CHECK(fine.measure.node_masses(d) == mu.node_masses(d));

    MollifyResult z = mollify(d, MeasureData::zero(d), 4);
    CHECK(z.measure.total_variation(d) == doctest::Approx(0.0));
}

TEST_CASE("mollifier total variation does not increase on signed data") {
    DiscreteDomain d = make_interval_domain(0.0, 1.0, 0.05);
    MeasureData mu;
    mu.atoms.emplace_back(3, 1.0);
    mu.atoms.emplace_back(12, -2.0);
    MollifyResult r = mollify(d, mu, 3);
    CHECK(r.measure.total(d) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.measure.total_variation(d) <= mu.total_variation(d) + 1e-12);
}
