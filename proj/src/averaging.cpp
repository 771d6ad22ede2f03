#include "dumbbell/averaging.hpp"

#include "dumbbell/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace dumbbell {

AveragedField::AveragedField(ResonanceSpec spec, LinearizedTorque lin, double quad_tolerance)
    : spec_(spec), lin_(std::move(lin)), quad_tol_(quad_tolerance)
{
    spec_.validate();
    if (!(quad_tol_ > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
}

AveragedField::Evaluation AveragedField::evaluate_with_nodes(const PlaneIC& alpha) const
{
    const double p = spec_.p;
    const double period = window(spec_);
    constexpr double pi = std::numbers::pi;

    if (spec_.mode == Mode::NutationT1) {
        auto integrand = [&](double t) {
            const SatelliteState x = closed_form_solution(alpha, Mode::NutationT1, t);
            const double weight = x[0] * lin_.f1(t, x[1], 0.0);
            return Eigen::Vector2d(std::sin(kSqrt3 * t) * weight, std::cos(kSqrt3 * t) * weight);
        };
        const auto q = periodic_quadrature_vec<2>(integrand, period, quad_tol_);
        return {Eigen::Vector2d(q.value[0] / (2.0 * p * pi), kSqrt3 * q.value[1] / (2.0 * p * pi)), q.nodes};
    }

    auto integrand = [&](double t) {
        const SatelliteState x = closed_form_solution(alpha, Mode::PrecessionT2, t);
        const double weight = x[2] * lin_.f4(t, 0.0, x[3]);
        return Eigen::Vector2d(std::sin(2.0 * t) * weight, std::cos(2.0 * t) * weight);
    };
    const auto q = periodic_quadrature_vec<2>(integrand, period, quad_tol_);
    return {Eigen::Vector2d(q.value[0] / (p * pi), 2.0 * q.value[1] / (p * pi)), q.nodes};
}

Field2D AveragedField::as_field() const
{
    return [self = *this](const Eigen::Vector2d& alpha) { return self.evaluate(alpha); };
}

AveragedField averaged_field(const ResonanceSpec& spec, const LinearizedTorque& lin, double quad_tolerance)
{
    return AveragedField(spec, lin, quad_tolerance);
}

Eigen::Vector2d malkin_average(const PerturbationField& g1, const ResonanceSpec& spec, const PlaneIC& alpha,
                               double quad_tolerance)
{
    monodromy_gap(spec); // throws DegenerateMonodromy
    const double period = window(spec);
    const int k = plane_offset(spec.mode);
    // xi commutes with the integral; the inactive rows are not period-periodic.
    auto integrand = [&](double t) -> Eigen::Vector2d {
        const SatelliteState x = closed_form_solution(alpha, spec.mode, t);
        return (fundamental_matrix_inverse(t) * g1(t, x)).segment<2>(k);
    };
    const auto q = periodic_quadrature_vec<2>(integrand, period, quad_tolerance);
    return q.value / period;
}

PerturbationField dumbbell_perturbation(const LinearizedTorque& lin)
{
    return [lin](double t, const SatelliteState& x) -> SatelliteState {
        // The eps = 1 linear torque part of first_order_rhs.
        const double y = x[1], w = x[3];
        return {0.0, lin.f1(t, y, w) * x[0] + lin.f2(t, y, w) * x[2], 0.0,
                lin.f3(t, y, w) * x[0] + lin.f4(t, y, w) * x[2]};
    };
}

Eigen::Matrix2d closed_form_normalization(Mode mode)
{
    const double s = mode == Mode::NutationT1 ? 1.0 : 2.0;
    Eigen::Matrix2d n = Eigen::Matrix2d::Zero();
    n(0, 0) = -s;
    n(1, 1) = s;
    return n;
}

Eigen::Vector2d printed_corollary1_field(const Eigen::Vector2d& alpha)
{
    const double x = alpha[0], y = alpha[1];
    return {y * (3.0 * x * x + y * y) / 48.0,
            (3.0 * (kSqrt3 - 3.0 * x) * x * x - (kSqrt3 + 3.0 * x) * y * y) / 24.0};
}

Eigen::Vector2d printed_corollary2_field(const Eigen::Vector2d& alpha)
{
    const double z = alpha[0], w = alpha[1];
    return {(z - 1.0) * w / 8.0, (4.0 * z * (2.0 + z - 2.0 * z * z) - w * w * (1.0 + 2.0 * z)) / 32.0};
}

Field2D printed_reference_field(Mode mode)
{
    if (mode == Mode::NutationT1) return printed_corollary1_field;
    return printed_corollary2_field;
}

} // namespace dumbbell
