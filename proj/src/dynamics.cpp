#include "dumbbell/dynamics.hpp"

#include "dumbbell/errors.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dumbbell {

void ResonanceSpec::validate() const
{
    if (p <= 0 || q <= 0) throw std::invalid_argument("resonance p and q must be positive");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("resonance p = " + std::to_string(p) + ", q = " + std::to_string(q)
                                    + " are not relatively prime");
}

double base_period(Mode mode) { return mode == Mode::NutationT1 ? kPeriodT1 : kPeriodT2; }

double window(const ResonanceSpec& spec) { return spec.p * base_period(spec.mode); }

int plane_offset(Mode mode) { return mode == Mode::NutationT1 ? 0 : 2; }

bool all_finite(const SatelliteState& s) { return s.allFinite(); }

SatelliteState full_rhs(const SatelliteState& s, double t, const PerturbSetup& setup)
{
    const double theta = s[kTheta];
    const double theta_dot = s[kThetaDot];
    const double phi = s[kPhi];
    const double phi_dot = s[kPhiDot];

    const double cos_phi = std::cos(phi);
    if (std::abs(cos_phi) < 1e-12)
        throw SingularityError("equations of motion singular at phi = " + std::to_string(phi));
    const double sin_phi = std::sin(phi);
    const double sin_theta = std::sin(theta);
    const double cos_theta = std::cos(theta);
    const double spin = 1.0 + theta_dot;

    double theta_acc = 2.0 * phi_dot * spin * (sin_phi / cos_phi) - 3.0 * sin_theta * cos_theta;
    double phi_acc = -(spin * spin + 3.0 * cos_theta * cos_theta) * sin_phi * cos_phi;

    const double eps = setup.epsilon;
    if (eps != 0.0) {
        const Bindings b{t, theta, theta_dot, phi, phi_dot};
        theta_acc += eps * setup.f1_star.evaluate(b);
        phi_acc += eps * setup.f2_star.evaluate(b);
        if (setup.r1) theta_acc += eps * eps * setup.r1(t, s, eps);
        if (setup.r2) phi_acc += eps * eps * setup.r2(t, s, eps);
    }
    return {theta_dot, theta_acc, phi_dot, phi_acc};
}

SatelliteState first_order_rhs(const SatelliteState& s, double t, double eps, const LinearizedTorque& lin)
{
    const double x = s[0], y = s[1], z = s[2], w = s[3];
    double ydot = -3.0 * x;
    double wdot = -4.0 * z;
    if (eps != 0.0) {
        ydot += eps * (lin.f1(t, y, w) * x + lin.f2(t, y, w) * z);
        wdot += eps * (lin.f3(t, y, w) * x + lin.f4(t, y, w) * z);
    }
    return {y, ydot, w, wdot};
}

SatelliteState closed_form_solution(const PlaneIC& alpha, Mode mode, double t)
{
    SatelliteState s = SatelliteState::Zero();
    const double a = alpha[0], b = alpha[1];
    if (mode == Mode::NutationT1) {
        const double c = std::cos(kSqrt3 * t), sn = std::sin(kSqrt3 * t);
        s[0] = a * c + b / kSqrt3 * sn;
        s[1] = b * c - kSqrt3 * a * sn;
    } else {
        const double c = std::cos(2.0 * t), sn = std::sin(2.0 * t);
        s[2] = a * c + 0.5 * b * sn;
        s[3] = b * c - 2.0 * a * sn;
    }
    return s;
}

Eigen::Matrix4d fundamental_matrix(double t)
{
    const double c1 = std::cos(kSqrt3 * t), s1 = std::sin(kSqrt3 * t);
    const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = c1;
    m(0, 1) = s1 / kSqrt3;
    m(1, 0) = -kSqrt3 * s1;
    m(1, 1) = c1;
    m(2, 2) = c2;
    m(2, 3) = 0.5 * s2;
    m(3, 2) = -2.0 * s2;
    m(3, 3) = c2;
    return m;
}

Eigen::Matrix4d fundamental_matrix_inverse(double t) { return fundamental_matrix(-t); }

MonodromyGap monodromy_gap(const ResonanceSpec& spec)
{
    spec.validate();
    const Eigen::Matrix4d gap = fundamental_matrix_inverse(0.0) - fundamental_matrix_inverse(window(spec));
    // The active block is the one on the plane that is not resonant with the window.
    const int k = spec.mode == Mode::NutationT1 ? 2 : 0;
    const double det = gap.block<2, 2>(k, k).determinant();
    if (std::abs(det) < 1e-10)
        throw DegenerateMonodromy("monodromy gap determinant " + std::to_string(det)
                                  + " vanishes; the averaging hypothesis fails for p = "
                                  + std::to_string(spec.p));
    return {gap, det};
}

} // namespace dumbbell
