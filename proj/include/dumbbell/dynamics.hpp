#pragma once

#include "dumbbell/expression.hpp"
#include "dumbbell/torque.hpp"

#include <Eigen/Dense>

#include <functional>
#include <numbers>
#include <optional>

namespace dumbbell {

/// (theta, theta_dot, phi, phi_dot), equivalently (X, Y, Z, W).
using SatelliteState = Eigen::Vector4d;
/// Initial condition on one of the two periodic planes: (X0, Y0) or (Z0, W0).
using PlaneIC = Eigen::Vector2d;

enum StateIndex : int { kTheta = 0, kThetaDot = 1, kPhi = 2, kPhiDot = 3 };

inline constexpr double kSqrt3 = 1.7320508075688772935;
/// Period of the nutation-plane family, 2 pi / sqrt(3).
inline constexpr double kPeriodT1 = 2.0 * std::numbers::pi / kSqrt3;
/// Period of the precession-plane family.
inline constexpr double kPeriodT2 = std::numbers::pi;

enum class Mode { NutationT1, PrecessionT2 };

/// p:q resonance with the periodic family selected by mode.
struct ResonanceSpec {
    Mode mode = Mode::NutationT1;
    int p = 1;
    int q = 1;

    /// Throws std::invalid_argument unless p, q > 0 and gcd(p, q) = 1.
    void validate() const;
};

double base_period(Mode mode);
/// Averaging window p * T_mode. q only enters the torque's own period.
double window(const ResonanceSpec& spec);
/// Index of the first plane coordinate in the state (0 for T1, 2 for T2).
int plane_offset(Mode mode);

/// Remainder hook R(t, state, eps) entering as eps^2 R.
using Remainder = std::function<double(double t, const SatelliteState& s, double eps)>;

struct PerturbSetup {
    TorqueExpression f1_star;
    TorqueExpression f2_star;
    double epsilon = 0.0;
    Remainder r1; ///< empty means identically zero
    Remainder r2;
};

/// Full nonlinear equations of motion
///   theta'' = 2 phi' (1 + theta') tan(phi) - 3 sin(theta) cos(theta) + eps F1*
///   phi''   = -((1 + theta')^2 + 3 cos^2(theta)) sin(phi) cos(phi) + eps F2*
/// plus eps^2 Ri when remainders are set. Throws SingularityError for |cos(phi)| < 1e-12.
SatelliteState full_rhs(const SatelliteState& s, double t, const PerturbSetup& setup);

/// Linearized first-order system
///   (Y, -3X + eps (f1 X + f2 Z), W, -4Z + eps (f3 X + f4 Z)), fi evaluated at (t, Y, W).
SatelliteState first_order_rhs(const SatelliteState& s, double t, double eps, const LinearizedTorque& lin);

/// Unperturbed periodic solution through the plane point alpha at t = 0,
/// zero-padded on the inactive plane.
SatelliteState closed_form_solution(const PlaneIC& alpha, Mode mode, double t);

/// Fundamental matrix of the unperturbed linear system with M(0) = I.
/// Block diagonal, unimodular, and M(t)^-1 = M(-t).
Eigen::Matrix4d fundamental_matrix(double t);
Eigen::Matrix4d fundamental_matrix_inverse(double t);

struct MonodromyGap {
    Eigen::Matrix4d gap;      ///< M^-1(0) - M^-1(p T_mode)
    double active_determinant; ///< determinant of the block on the non-resonant plane
};

/// For NutationT1 the (X, Y) block vanishes and the (Z, W) block has determinant
/// 4 sin^2(2 sqrt3 p pi / 3); for PrecessionT2 the roles swap and the (X, Y)
/// block has determinant 4 sin^2(sqrt3 p pi / 2).
/// Throws DegenerateMonodromy if the active determinant is below 1e-10.
MonodromyGap monodromy_gap(const ResonanceSpec& spec);

bool all_finite(const SatelliteState& s);

} // namespace dumbbell
