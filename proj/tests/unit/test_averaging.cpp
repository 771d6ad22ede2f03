#include "../support.hpp"

#include "dumbbell/averaging.hpp"
#include "dumbbell/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace dumbbell;
using doctest::Approx;

TEST_CASE("periodic quadrature")
{
    const double pi = std::numbers::pi;
    CHECK(periodic_quadrature([](double t) { return std::sin(t) * std::sin(t); }, 2 * pi, 1e-14).value
          == Approx(pi).epsilon(1e-14));
    CHECK(periodic_quadrature([](double t) { return std::pow(std::cos(t), 4) * std::pow(std::sin(t), 2); }, 2 * pi,
                              1e-14)
              .value
          == Approx(pi / 8).epsilon(1e-14));
    CHECK(periodic_quadrature([](double) { return 1.0; }, 5.0, 1e-14).value == Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(periodic_quadrature([](double) { return 1.0; }, 0.0, 1e-12), std::invalid_argument);
}

TEST_CASE("averaged fields match the moment oracles")
{
    std::mt19937_64 rng(3);
    for (const auto& c : testing::oracle_cases()) {
        INFO(c.name);
        const AveragedField field({c.mode, 1, 1}, c.lin);
        for (int i = 0; i < 25; ++i) {
            const Eigen::Vector2d a = testing::random_in_annulus(rng, 0.1, 5.0);
            CHECK((field(a) - c.expected(a)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("origin maps to zero")
{
    const auto lin = extract_linearized(parse_torque(testing::kCorollary1F1), parse_torque(testing::kCorollary1F2));
    CHECK(AveragedField({Mode::NutationT1, 1, 1}, lin)(Eigen::Vector2d::Zero()).norm() == 0.0);
    CHECK(AveragedField({Mode::PrecessionT2, 1, 1}, lin)(Eigen::Vector2d::Zero()).norm() == 0.0);
}

TEST_CASE("generic integral and closed forms agree up to the normalization")
{
    std::mt19937_64 rng(9);
    for (const auto& c : testing::oracle_cases()) {
        INFO(c.name);
        const ResonanceSpec spec{c.mode, 1, 1};
        const AveragedField field(spec, c.lin);
        const auto g1 = dumbbell_perturbation(c.lin);
        const Eigen::Matrix2d n = closed_form_normalization(c.mode);
        for (int i = 0; i < 10; ++i) {
            const Eigen::Vector2d a = testing::random_in_annulus(rng, 0.1, 5.0);
            CHECK((n * malkin_average(g1, spec, a) - field(a)).cwiseAbs().maxCoeff() < 1e-9);
        }
    }

    const auto lin = extract_linearized(parse_torque(testing::kCorollary1F1), parse_torque(testing::kCorollary1F2));
    const ResonanceSpec spec{Mode::NutationT1, 1, 1};
    const Eigen::Vector2d a(0.5, 0.3);
    const Eigen::Vector2d m = malkin_average(dumbbell_perturbation(lin), spec, a);
    CHECK((closed_form_normalization(Mode::NutationT1) * m - averaged_field(spec, lin)(a)).norm() < 1e-10);

    const auto scaled = [g = dumbbell_perturbation(lin)](double t, const SatelliteState& x) -> SatelliteState {
        return 2.5 * g(t, x);
    };
    CHECK((malkin_average(scaled, spec, a) - 2.5 * m).norm() < 1e-12);
    const auto none = [](double, const SatelliteState&) -> SatelliteState { return SatelliteState::Zero(); };
    CHECK(malkin_average(none, spec, a).norm() == 0.0);
}

TEST_CASE("homogeneity")
{
    const auto lin = testing::only_f1([](double, double v1, double) { return v1 * v1 * v1; });
    const AveragedField field({Mode::NutationT1, 1, 1}, lin);
    const Eigen::Vector2d a(0.7, -0.4);
    for (double lambda : {2.0, 3.0})
        CHECK((field(lambda * a) - std::pow(lambda, 4) * field(a)).norm() < 1e-10 * std::pow(lambda, 4));
}

TEST_CASE("longer windows")
{
    // Moment identities hold for every p: the window is p full periods.
    const auto& c = testing::oracle_cases()[1];
    const Eigen::Vector2d a(0.8, 1.3);
    for (int p = 2; p <= 3; ++p) {
        const AveragedField field({c.mode, p, 1}, c.lin);
        CHECK((field(a) - c.expected(a)).norm() < 1e-10);
    }
}

TEST_CASE("printed reference fields")
{
    const double s3 = std::sqrt(3.0);
    CHECK(printed_corollary1_field({s3 / 3, 0.0}).norm() < 1e-15);
    CHECK(printed_corollary2_field({1.0, 2 * s3 / 3}).norm() < 1e-15);
    const double r = (1 + std::sqrt(17.0)) / 4;
    CHECK(printed_corollary2_field({r, 0.0}).norm() < 1e-14);
}
