#include "../support.hpp"

#include "dumbbell/errors.hpp"
#include "dumbbell/zeros.hpp"

#include <doctest.h>

#include <cmath>

using namespace dumbbell;
using doctest::Approx;

TEST_CASE("jacobian by central differences")
{
    const Field2D f = [](const Eigen::Vector2d& a) -> Eigen::Vector2d {
        return {a.x() * a.x() - a.y(), a.x() * a.y()};
    };
    Eigen::Matrix2d expected;
    expected << 2, -1, 2, 1;
    CHECK((jacobian2d(f, {1.0, 2.0}) - expected).cwiseAbs().maxCoeff() < 1e-8);

    const Field2D affine = [](const Eigen::Vector2d& a) -> Eigen::Vector2d {
        return {3 * a.x() - 0.5 * a.y() + 1, -a.x() + 7 * a.y()};
    };
    Eigen::Matrix2d a;
    a << 3, -0.5, -1, 7;
    CHECK((jacobian2d(affine, {-4.0, 12.0}) - a).cwiseAbs().maxCoeff() < 1e-10);

    const double s3 = std::sqrt(3.0);
    CHECK(jacobian2d(printed_corollary2_field, {1.0, 2 * s3 / 3}).determinant() == Approx(-1.0 / 32).epsilon(1e-8));
}

TEST_CASE("newton on simple fields")
{
    const Field2D affine = [](const Eigen::Vector2d& a) -> Eigen::Vector2d { return {a.x() - 1, a.y() + 2}; };
    std::vector<Eigen::Vector2d> trace;
    NewtonOptions traced;
    traced.trace = &trace;
    const auto z = newton2d(affine, {0.0, 0.0}, traced);
    CHECK((z.location - Eigen::Vector2d(1, -2)).norm() < 1e-14);
    REQUIRE(trace.size() >= 2);
    CHECK((trace[1] - Eigen::Vector2d(1, -2)).norm() < 1e-10);

    const Field2D constant = [](const Eigen::Vector2d&) -> Eigen::Vector2d { return {1.0, 0.5}; };
    CHECK_THROWS_AS(newton2d(constant, {0.3, 0.3}), NoConvergence);

    const auto c1 = newton2d(printed_corollary1_field, {0.5, 0.1});
    CHECK(std::abs(c1.location.x() - std::sqrt(3.0) / 3) < 1e-9);
    CHECK(std::abs(c1.location.y()) < 1e-9);
    CHECK(std::abs(c1.jacobian_det - 1.0 / 384) < 1e-9);
    CHECK(c1.classification == CertifiedZero::Kind::simple);

    CHECK_THROWS_AS(newton2d(affine, {0, 0}, {.tol = 0.0}), std::invalid_argument);
}

TEST_CASE("quadratic convergence")
{
    const Eigen::Vector2d root(0.8, -0.3);
    const Field2D f = [root](const Eigen::Vector2d& a) -> Eigen::Vector2d {
        const Eigen::Vector2d d = a - root;
        return {d.x() + d.squaredNorm(), d.y() + d.x() * d.y()};
    };
    std::vector<Eigen::Vector2d> trace;
    NewtonOptions opts;
    opts.trace = &trace;
    newton2d(f, {1.3, 0.2}, opts);
    std::vector<double> err;
    for (const auto& x : trace) err.push_back((x - root).norm());
    while (!err.empty() && err.back() < 1e-13) err.pop_back();
    REQUIRE(err.size() >= 4);
    for (std::size_t k = err.size() - 3; k < err.size(); ++k) CHECK(err[k] / (err[k - 1] * err[k - 1]) < 10.0);
}

TEST_CASE("multistart on the printed corollary fields")
{
    const ZeroSearchDomain domain;
    const auto z1 = multistart_zeros(printed_corollary1_field, domain);
    REQUIRE(z1.size() == 1);
    CHECK(z1[0].location.x() == Approx(std::sqrt(3.0) / 3).epsilon(1e-12));

    const auto z2 = multistart_zeros(printed_corollary2_field, domain);
    REQUIRE(z2.size() == 4);
    const auto classes = orbit_classes(z2);
    CHECK(*std::max_element(classes.begin(), classes.end()) == 2);
    const double s17 = std::sqrt(17.0), s3 = std::sqrt(3.0);
    const std::vector<Eigen::Vector2d> expected{
        {1, 2 * s3 / 3}, {1, -2 * s3 / 3}, {(1 - s17) / 4, 0}, {(1 + s17) / 4, 0}};
    for (const auto& e : expected) {
        const bool found = std::any_of(z2.begin(), z2.end(), [&](const auto& z) { return (z.location - e).norm() < 1e-9; });
        CHECK(found);
    }
    for (const auto& z : z2) {
        CHECK(printed_corollary2_field(z.location).norm() < 2e-12);
        CHECK(z.classification == CertifiedZero::Kind::simple);
    }

    const auto again = multistart_zeros(printed_corollary2_field, domain);
    REQUIRE(again.size() == z2.size());
    for (std::size_t i = 0; i < z2.size(); ++i) CHECK(again[i].location == z2[i].location);
}

TEST_CASE("affine field has only the excluded origin")
{
    const Field2D f = [](const Eigen::Vector2d& a) -> Eigen::Vector2d { return {a.y() / 6, a.x() / 2}; };
    CHECK(multistart_zeros(f, ZeroSearchDomain{}).empty());
}

TEST_CASE("domain validation and orbit classes")
{
    CHECK_THROWS((ZeroSearchDomain{1.0, 0.5, 4, 4}.validate()));
    CHECK_THROWS((ZeroSearchDomain{0.0, 0.5, 4, 4}.validate()));
    const ZeroSearchDomain d{0.1, 2.0, 3, 5};
    CHECK(d.seeds().size() == 15);
    CHECK(d.contains({1.0, 0.0}));
    CHECK_FALSE(d.contains({0.01, 0.0}));

    std::vector<CertifiedZero> zs(3);
    zs[0].location = {1, 2};
    zs[1].location = {3, 0};
    zs[2].location = {1, -2};
    CHECK(orbit_classes(zs) == std::vector<int>{0, 1, 0});
}
