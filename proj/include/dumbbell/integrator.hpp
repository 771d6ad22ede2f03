#pragma once

#include "dumbbell/dynamics.hpp"
#include "dumbbell/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace dumbbell {

/// s' = rhs(t, s).
using StateRhs = std::function<SatelliteState(double t, const SatelliteState& s)>;

inline constexpr double kDefaultIntegratorTolerance = 1e-11;

struct IntegratorStats {
    long accepted = 0;
    long rejected = 0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - b_hat (the embedded fourth-order weights)
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace detail

/// Adaptive Dormand-Prince 5(4) pair with local extrapolation, FSAL, and mixed
/// error control |err_i| <= tol (1 + max(|y_i|, |y_new_i|)) in the RMS norm.
/// The last step is clipped to land on t1 exactly. A stage that throws a
/// library Error (singular rhs, tan pole) rejects the step; once the step
/// shrinks below ~16 ulp of t StepSizeUnderflow is thrown.
template <typename Vec, typename Rhs>
Vec integrate_dp45(Rhs&& rhs, Vec y, double t0, double t1, double tol, IntegratorStats* stats = nullptr)
{
    using namespace detail;
    if (!(tol > 0.0)) throw std::invalid_argument("integrator tolerance must be positive");
    if (t1 < t0) throw std::invalid_argument("integrate requires t1 >= t0");
    if (t1 == t0) return y;

    const double span = t1 - t0;
    const auto n = static_cast<double>(y.size());
    auto error_norm = [&](const Vec& err, const Vec& y0, const Vec& y1) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < err.size(); ++i) {
            const double sc = tol * (1.0 + std::max(std::abs(y0[i]), std::abs(y1[i])));
            const double r = err[i] / sc;
            sum += r * r;
        }
        return std::sqrt(sum / n);
    };

    double t = t0;
    Vec k1 = rhs(t, y);

    // Initial step from the first-derivative scale.
    double h;
    {
        const double d0 = y.norm() / std::sqrt(n), d1 = k1.norm() / std::sqrt(n);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min({h, span, 0.1});
        h = std::max(h, 1e-8 * span);
    }

    long steps = 0;
    constexpr long kMaxSteps = 50'000'000;
    bool last_rejected = false;

    while (t < t1) {
        if (++steps > kMaxSteps) throw StepSizeUnderflow("integrator exceeded the maximum number of steps");
        const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        if (h < min_step)
            throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t));
        bool clipped = false;
        if (t + h >= t1) {
            h = t1 - t;
            clipped = true;
        }

        Vec k2, k3, k4, k5, k6, k7, y_new;
        try {
            k2 = rhs(t + c2 * h, Vec(y + h * (a21 * k1)));
            k3 = rhs(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
            k4 = rhs(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
            k5 = rhs(t + c5 * h, Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
            k6 = rhs(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
            y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            k7 = rhs(t + h, y_new);
        } catch (const Error&) {
            if (stats) ++stats->rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }

        const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = error_norm(err, y, y_new);
        if (!std::isfinite(en)) {
            if (stats) ++stats->rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }

        if (en <= 1.0) {
            t = clipped ? t1 : t + h;
            y = y_new;
            k1 = k7;
            if (stats) ++stats->accepted;
            double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (last_rejected) factor = std::min(factor, 1.0);
            h *= factor;
            last_rejected = false;
        } else {
            if (stats) ++stats->rejected;
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            last_rejected = true;
        }
    }
    return y;
}

/// State of s' = rhs(t, s) at t1 starting from s0 at t0.
SatelliteState integrate(const StateRhs& rhs, const SatelliteState& s0, double t0, double t1,
                         double tol = kDefaultIntegratorTolerance, IntegratorStats* stats = nullptr);

/// rhs of the full nonlinear equations for the given setup.
StateRhs full_system(PerturbSetup setup);
/// rhs of the linearized first-order system.
StateRhs linearized_system(LinearizedTorque lin, double eps);

} // namespace dumbbell
