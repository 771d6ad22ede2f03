#pragma once

#include "dumbbell/averaging.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dumbbell {

/// Annulus r1 <= |alpha| <= r2 around the excluded origin, seeded on a polar grid.
struct ZeroSearchDomain {
    double r1 = 0.05;
    double r2 = 5.0;
    int n_radii = 16;
    int n_angles = 32;

    void validate() const;
    bool contains(const Eigen::Vector2d& alpha) const;
    std::vector<Eigen::Vector2d> seeds() const;
};

struct NewtonOptions {
    double tol = 1e-12;       ///< residual norm
    double step_tol = 1e-12;  ///< final step length
    int max_iter = 50;
    int max_halvings = 20;
    double singular_det = 1e-14;
    double simple_det_rel = 1e-8; ///< Simple iff |det| > simple_det_rel * field_scale
    double field_scale = 1.0;
    std::vector<Eigen::Vector2d>* trace = nullptr; ///< receives every iterate, seed first
};

struct CertifiedZero {
    enum class Kind { simple, degenerate };

    Eigen::Vector2d location = Eigen::Vector2d::Zero();
    double residual_norm = 0.0;
    Eigen::Matrix2d jacobian = Eigen::Matrix2d::Zero();
    double jacobian_det = 0.0;
    Kind classification = Kind::degenerate;
    int iterations = 0;
};

/// Central differences with per-coordinate step 1e-5 * max(1, |x_i|).
Eigen::Matrix2d jacobian2d(const Field2D& field, const Eigen::Vector2d& point);

/// Damped Newton: full step, halved up to max_halvings times until the residual
/// norm decreases. Converged once |field| < tol and the last step < step_tol.
/// Throws NoConvergence, or SingularJacobian (a NoConvergence) when |det J| drops
/// below singular_det.
CertifiedZero newton2d(const Field2D& field, const Eigen::Vector2d& seed, const NewtonOptions& options = {});

/// Median |field| over the seed grid; the reference scale for simplicity.
double field_scale(const Field2D& field, const ZeroSearchDomain& domain);

/// Newton from every grid seed. Failed seeds are skipped, zeros closer than
/// 1e-6 are merged (first seed wins), zeros outside the closed annulus dropped.
/// Sorted by polar angle, then radius.
std::vector<CertifiedZero> multistart_zeros(const Field2D& field, const ZeroSearchDomain& domain,
                                            NewtonOptions options = {});

/// Orbit class per zero: (a, b) and (a, -b) describe the same periodic solution.
/// Returns one label per zero, numbered from 0 in first-appearance order.
std::vector<int> orbit_classes(const std::vector<CertifiedZero>& zeros, double tol = 1e-6);

} // namespace dumbbell
