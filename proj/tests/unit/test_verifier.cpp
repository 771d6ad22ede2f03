#include "../support.hpp"

#include "dumbbell/errors.hpp"
#include "dumbbell/integrator.hpp"
#include "dumbbell/shooting.hpp"

#include <doctest.h>

#include <cmath>

using namespace dumbbell;
using doctest::Approx;

namespace {

StateRhs unperturbed() { return linearized_system(LinearizedTorque::zero(), 0.0); }

LinearizedTorque corollary2_lin()
{
    return extract_linearized(parse_torque(testing::kCorollary2F1), parse_torque(testing::kCorollary2F2));
}

PerturbSetup corollary2_setup(double eps)
{
    return {parse_torque(testing::kCorollary2F1), parse_torque(testing::kCorollary2F2), eps, {}, {}};
}

} // namespace

TEST_CASE("integrator against the unperturbed periods and closed form")
{
    const auto rhs = unperturbed();
    CHECK((integrate(rhs, {1, 0, 0, 0}, 0.0, kPeriodT1) - SatelliteState(1, 0, 0, 0)).norm() < 1e-9);
    CHECK((integrate(rhs, {0, 0, 1, 0}, 0.0, kPeriodT2) - SatelliteState(0, 0, 1, 0)).norm() < 1e-9);
    CHECK((integrate(rhs, {0.3, 0.1, 0, 0}, 0.0, 0.7) - closed_form_solution({0.3, 0.1}, Mode::NutationT1, 0.7)).norm()
          < 1e-9);

    CHECK(integrate(rhs, {0.3, 0.1, 0, 0}, 2.0, 2.0) == SatelliteState(0.3, 0.1, 0, 0));
    CHECK_THROWS_AS(integrate(rhs, {0, 0, 0, 0}, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("integrator tolerance refinement and conserved quantities")
{
    const auto rhs = unperturbed();
    const SatelliteState s0(0.4, -0.3, 0.2, 0.5);
    const SatelliteState coarse = integrate(rhs, s0, 0.0, kPeriodT1, 1e-8);
    const SatelliteState fine = integrate(rhs, s0, 0.0, kPeriodT1, 1e-12);
    CHECK((coarse - fine).norm() < 10 * 1e-8);

    const SatelliteState end = integrate(rhs, s0, 0.0, 10 * kPeriodT1, 1e-11);
    const auto q1 = [](const SatelliteState& s) { return 3 * s[0] * s[0] + s[1] * s[1]; };
    const auto q2 = [](const SatelliteState& s) { return 4 * s[2] * s[2] + s[3] * s[3]; };
    CHECK(std::abs(q1(end) - q1(s0)) < 1e-9);
    CHECK(std::abs(q2(end) - q2(s0)) < 1e-9);
}

TEST_CASE("integrator surfaces the singularity")
{
    const StateRhs rhs = [](double t, const SatelliteState& s) -> SatelliteState {
        if (t > 0.5) throw SingularityError("singular");
        return s;
    };
    CHECK_THROWS_AS(integrate(rhs, {1, 0, 0, 0}, 0.0, 1.0), StepSizeUnderflow);
}

TEST_CASE("shooting at eps = 0 keeps a manifold point")
{
    const SatelliteState guess(0.4, 0.2, 0, 0);
    const auto cert = shoot_periodic(unperturbed(), guess, kPeriodT1);
    CHECK((cert.corrected_ic - guess).norm() < 1e-10);
    CHECK(cert.displacement_norm < 1e-10);
}

TEST_CASE("monodromy consistency at eps = 0")
{
    for (double period : {kPeriodT1, kPeriodT2, 1.3}) {
        const auto map = period_map_with_jacobian(unperturbed(), {0.2, -0.1, 0.3, 0.05}, period);
        CHECK((map.jacobian - fundamental_matrix(period)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("linearized corollary 2 orbits converge at first order")
{
    const ResonanceSpec spec{Mode::PrecessionT2, 1, 1};
    const auto lin = corollary2_lin();
    const SystemFactory factory = [lin](double eps) { return linearized_system(lin, eps); };
    const Eigen::Vector2d zero((1 + std::sqrt(17.0)) / 4, 0.0);
    const auto report = epsilon_continuation(factory, zero, spec, {1e-2, 1e-3, 1e-4});
    CHECK(report.passed());
    CHECK(report.distance_monotone());
    REQUIRE(report.steps.size() == 3);
    for (const auto& s : report.steps) {
        REQUIRE(s.certificate);
        CHECK(s.certificate->displacement_norm < 1e-10);
    }
    CHECK(*report.steps[2].empirical_order == Approx(1.0).epsilon(0.05));

    // Fixed point and genuine periodicity of the corrected orbit.
    const auto& cert = *report.steps[1].certificate;
    const StateRhs rhs = factory(cert.epsilon);
    const auto again = shoot_periodic(rhs, cert.corrected_ic, cert.period);
    CHECK((again.corrected_ic - cert.corrected_ic).norm() < 1e-10);
    for (int k = 1; k <= 8; ++k) {
        const double t = cert.period * k / 9.0;
        const SatelliteState a = integrate(rhs, cert.corrected_ic, 0.0, t, 1e-12);
        const SatelliteState b = integrate(rhs, a, t, t + cert.period, 1e-12);
        CHECK((a - b).norm() < 1e-8);
    }
}

TEST_CASE("continuation plumbing")
{
    const ResonanceSpec spec{Mode::NutationT1, 1, 1};
    const SystemFactory factory = [](double eps) { return linearized_system(LinearizedTorque::zero(), eps); };
    const auto zero_eps = epsilon_continuation(factory, {0.5, 0.1}, spec, {0.0});
    REQUIRE(zero_eps.steps.size() == 1);
    CHECK(zero_eps.steps[0].distance < 1e-12);
    CHECK(zero_eps.passed());

    CHECK_THROWS_AS(epsilon_continuation(factory, {0.5, 0.1}, spec, {1e-3, 1e-2}), std::invalid_argument);
    CHECK_THROWS_AS(epsilon_continuation(factory, {0.5, 0.1}, spec, {-1e-3}), std::invalid_argument);
    CHECK(pad_plane_ic({1, 2}, Mode::PrecessionT2) == SatelliteState(0, 0, 1, 2));
}

TEST_CASE("shooting far from any orbit fails")
{
    const auto rhs = full_system(corollary2_setup(1e-3));
    CHECK_THROWS_AS(shoot_periodic(rhs, {0, 0, 3, 3}, kPeriodT2), NoConvergence);
}

TEST_CASE("a failing step is reported with its epsilon")
{
    const ResonanceSpec spec{Mode::PrecessionT2, 1, 1};
    ShootingOptions opts;
    opts.max_iter = 1;
    const auto report = epsilon_continuation(corollary2_setup(0.0), {3.0, 3.0}, spec, {0.5}, opts);
    CHECK(report.status == ContinuationReport::Status::failed_at);
    REQUIRE(report.failed_epsilon);
    CHECK(*report.failed_epsilon == 0.5);
    CHECK(report.status_label().find("0.5") != std::string::npos);
}
