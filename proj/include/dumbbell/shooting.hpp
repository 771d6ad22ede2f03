#pragma once

#include "dumbbell/dynamics.hpp"
#include "dumbbell/integrator.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dumbbell {

struct ShootingOptions {
    double tol = 1e-10;            ///< required ||x(T; z) - z||
    double integrator_tol = 1e-12;
    double fd_step = 1e-7;         ///< finite-difference step of the Jacobian columns
    double sv_cutoff = 1e-8;       ///< pseudo-inverse drops singular values below cutoff * sigma_max
    double max_step = 0.5;         ///< Newton steps are shortened to this length
    int max_iter = 25;
};

struct OrbitCertificate {
    double epsilon = 0.0;
    SatelliteState predicted_ic = SatelliteState::Zero();
    SatelliteState corrected_ic = SatelliteState::Zero();
    double displacement_norm = 0.0;
    double period = 0.0;
    int newton_iters = 0;
};

/// x(period; 0, z) together with its finite-difference Jacobian. The base and
/// the four perturbed trajectories are integrated as one 20-dimensional system
/// so they share the step sequence.
struct PeriodMap {
    SatelliteState image;
    Eigen::Matrix4d jacobian;
};
PeriodMap period_map_with_jacobian(const StateRhs& rhs, const SatelliteState& z, double period,
                                   const ShootingOptions& options = {});

/// Newton iteration on P(z) = x(period; 0, z) - z, solving each linear step with
/// a truncated-SVD pseudo-inverse of dP/dz. Throws NoConvergence, or
/// StepSizeUnderflow when the initial guess itself cannot be integrated.
OrbitCertificate shoot_periodic(const StateRhs& rhs, const SatelliteState& guess, double period,
                                const ShootingOptions& options = {});

/// Builds the rhs for a given epsilon.
using SystemFactory = std::function<StateRhs(double eps)>;

struct ContinuationStep {
    double epsilon = 0.0;
    std::optional<OrbitCertificate> certificate; ///< empty when shooting failed
    double distance = 0.0;                       ///< ||corrected_ic - predicted_ic||
    std::optional<double> empirical_order;       ///< against the previous step
    std::string failure;
};

struct ContinuationReport {
    enum class Status { passed, failed_at, order_out_of_band };

    SatelliteState predicted_ic = SatelliteState::Zero();
    ResonanceSpec spec;
    std::vector<ContinuationStep> steps;
    Status status = Status::passed;
    std::optional<double> failed_epsilon;
    double order_min = 0.5;
    double order_max = 1.5;

    bool passed() const { return status == Status::passed; }
    bool distance_monotone() const;
    /// PASSED, FAILED-AT(eps) or ORDER-OUT-OF-BAND.
    std::string status_label() const;
};

/// Shoots along a descending epsilon ladder, seeding each step with the
/// previous corrected IC (the first with the zero-padded averaged zero), and
/// measures log(d1/d2)/log(eps1/eps2) between consecutive steps. Passes when
/// every shot converges and every order lies in [0.5, 1.5]. Shooting failures
/// end the ladder and are reported rather than thrown.
ContinuationReport epsilon_continuation(const SystemFactory& system, const PlaneIC& averaged_zero,
                                        const ResonanceSpec& spec, const std::vector<double>& eps_list,
                                        const ShootingOptions& options = {});

/// Continuation on the full nonlinear equations; the template's epsilon is replaced per step.
ContinuationReport epsilon_continuation(const PerturbSetup& setup_template, const PlaneIC& averaged_zero,
                                        const ResonanceSpec& spec, const std::vector<double>& eps_list,
                                        const ShootingOptions& options = {});

/// Zero-padded state for a plane point.
SatelliteState pad_plane_ic(const PlaneIC& alpha, Mode mode);

} // namespace dumbbell
