#pragma once

#include "dumbbell/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace dumbbell {

template <int N>
struct QuadratureResult {
    Eigen::Matrix<double, N, 1> value;
    int nodes = 0; ///< node count of the accepted estimate
};

inline constexpr int kQuadratureStartNodes = 16;
inline constexpr int kQuadratureMaxNodes = 1 << 20;

/// Composite trapezoidal rule over one period of a smooth periodic integrand,
/// doubling the node count from 16 until two successive estimates agree to
/// tol * max(1, |estimate|) in the max norm. Spectrally accurate for smooth
/// periodic integrands. Throws NoConvergence past 2^20 nodes.
template <int N, typename F>
QuadratureResult<N> periodic_quadrature_vec(F&& f, double period, double tol)
{
    using Vec = Eigen::Matrix<double, N, 1>;
    if (!(period > 0.0)) throw std::invalid_argument("quadrature period must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");

    int n = kQuadratureStartNodes;
    Vec sum = Vec::Zero();
    for (int i = 0; i < n; ++i) sum += f(period * i / n);
    Vec estimate = sum * (period / n);

    while (true) {
        const int next = 2 * n;
        if (next > kQuadratureMaxNodes)
            throw NoConvergence("periodic quadrature did not converge within "
                                + std::to_string(kQuadratureMaxNodes) + " nodes");
        for (int i = 1; i < next; i += 2) sum += f(period * i / next);
        const Vec refined = sum * (period / next);
        const double scale = std::max(1.0, refined.cwiseAbs().maxCoeff());
        const double change = (refined - estimate).cwiseAbs().maxCoeff();
        estimate = refined;
        n = next;
        if (change < tol * scale) return {estimate, n};
    }
}

struct ScalarQuadrature {
    double value;
    int nodes;
};

ScalarQuadrature periodic_quadrature(const std::function<double(double)>& f, double period, double tol);

} // namespace dumbbell
