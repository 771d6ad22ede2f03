#pragma once

#include "dumbbell/expression.hpp"

#include <functional>
#include <string>

namespace dumbbell {

/// Coefficient callable f(t, v1, v2) with v1 the x-velocity and v2 the y-velocity.
using Coefficient = std::function<double(double t, double v1, double v2)>;

/// f1..f4 of the linear torque form
///   F1 = f1(t, x', y') x + f2(t, x', y') y,
///   F2 = f3(t, x', y') x + f4(t, x', y') y.
struct LinearizedTorque {
    Coefficient f1;
    Coefficient f2;
    Coefficient f3;
    Coefficient f4;

    static LinearizedTorque zero();
};

/// fi are the angle derivatives of the torques at theta = phi = 0 with the
/// velocities kept exact: f1 = dF1*/dtheta, f2 = dF1*/dphi, f3 = dF2*/dtheta,
/// f4 = dF2*/dphi. Computed with dual numbers.
LinearizedTorque extract_linearized(const TorqueExpression& f1_star, const TorqueExpression& f2_star);

/// Grid used by validate_equilibrium. Endpoints are included.
struct SamplingPlan {
    int n_t = 16;
    int n_v1 = 9;
    int n_v2 = 9;
    double t_min = 0.0;
    double t_max = 6.283185307179586;
    double v_min = -2.0;
    double v_max = 2.0;
};

struct EquilibriumReport {
    enum class Status { pass, warn };

    Status status = Status::pass;
    double max_residual = 0.0;
    int torque_index = 0; ///< 1 or 2 for the torque holding max_residual; 0 if all zero
    double at_t = 0.0;
    double at_v1 = 0.0;
    double at_v2 = 0.0;
    /// Largest |d^2 Fi*/(dtheta dphi)| at the origin over the grid. These mixed
    /// terms have no place in the linear form and are dropped by extraction.
    double max_cross_term = 0.0;

    std::string summary() const;
};

/// Samples |Fi*(t, 0, v1, 0, v2)|. PASS when the max residual is below 1e-12,
/// WARN otherwise; never throws for a nonzero residual.
EquilibriumReport validate_equilibrium(const TorqueExpression& f1_star, const TorqueExpression& f2_star,
                                       const SamplingPlan& plan = {});

} // namespace dumbbell
