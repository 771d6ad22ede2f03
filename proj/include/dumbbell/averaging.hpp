#pragma once

#include "dumbbell/dynamics.hpp"
#include "dumbbell/torque.hpp"

#include <Eigen/Dense>

#include <functional>

namespace dumbbell {

/// A planar vector field alpha -> (G1, G2).
using Field2D = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// G1(t, x) of x' = G0(t, x) + eps G1(t, x) + eps^2 G2(t, x, eps).
using PerturbationField = std::function<SatelliteState(double t, const SatelliteState& x)>;

inline constexpr double kDefaultQuadTolerance = 1e-12;

/// The averaged bifurcation functions on the plane selected by the resonance.
///
/// NutationT1, window T = p T1, integrand built from f1(t, Delta2, 0):
///   F1 = 1/(2 p pi)       int_0^T sin(sqrt3 t) Delta1 f1 dt
///   F2 = sqrt3/(2 p pi)   int_0^T cos(sqrt3 t) Delta1 f1 dt
/// PrecessionT2, window T = p T2, integrand built from f4(t, 0, Delta4):
///   G1 = 1/(p pi)         int_0^T sin(2t) Delta3 f4 dt
///   G2 = 2/(p pi)         int_0^T cos(2t) Delta3 f4 dt
/// where (Delta1, Delta2, 0, 0) or (0, 0, Delta3, Delta4) is the unperturbed
/// solution through alpha. f2 and f3 do not enter.
class AveragedField {
public:
    struct Evaluation {
        Eigen::Vector2d value;
        int nodes;
    };

    AveragedField(ResonanceSpec spec, LinearizedTorque lin, double quad_tolerance = kDefaultQuadTolerance);

    Eigen::Vector2d evaluate(const PlaneIC& alpha) const { return evaluate_with_nodes(alpha).value; }
    Eigen::Vector2d operator()(const PlaneIC& alpha) const { return evaluate(alpha); }
    Evaluation evaluate_with_nodes(const PlaneIC& alpha) const;

    const ResonanceSpec& spec() const { return spec_; }
    const LinearizedTorque& linearized() const { return lin_; }
    double quad_tolerance() const { return quad_tol_; }

    Field2D as_field() const;

private:
    ResonanceSpec spec_;
    LinearizedTorque lin_;
    double quad_tol_;
};

AveragedField averaged_field(const ResonanceSpec& spec, const LinearizedTorque& lin,
                             double quad_tolerance = kDefaultQuadTolerance);

/// Generic first-order averaged function
///   xi( (1/T) int_0^T M^-1(t) G1(t, x(t, z_alpha)) dt ),  T = p T_mode,
/// along the unperturbed solution through alpha, projected on the resonant plane.
/// Throws DegenerateMonodromy when the monodromy gap is singular.
Eigen::Vector2d malkin_average(const PerturbationField& g1, const ResonanceSpec& spec, const PlaneIC& alpha,
                               double quad_tolerance = kDefaultQuadTolerance);

/// G1 = (0, F1, 0, F2) of the linearized dumbbell system.
PerturbationField dumbbell_perturbation(const LinearizedTorque& lin);

/// Constant map N with averaged_field(alpha) = N * malkin_average(alpha):
/// diag(-1, 1) for NutationT1 and diag(-2, 2) for PrecessionT2. The closed-form
/// prefactors and the sign of the first row differ from the generic integral
/// by these factors; zero sets coincide and Jacobian determinants scale by det N.
Eigen::Matrix2d closed_form_normalization(Mode mode);

/// Published closed-form polynomial fields of the two worked examples.
///   corollary 1 (NutationT1): ( Y(3X^2 + Y^2)/48, (3(sqrt3 - 3X)X^2 - (sqrt3 + 3X)Y^2)/24 )
///   corollary 2 (PrecessionT2): ( (Z - 1)W/8, (4Z(2 + Z - 2Z^2) - W^2(1 + 2Z))/32 )
Eigen::Vector2d printed_corollary1_field(const Eigen::Vector2d& alpha);
Eigen::Vector2d printed_corollary2_field(const Eigen::Vector2d& alpha);
/// corollary 1 field for NutationT1, corollary 2 field for PrecessionT2.
Field2D printed_reference_field(Mode mode);

} // namespace dumbbell
