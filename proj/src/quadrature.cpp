#include "dumbbell/quadrature.hpp"

namespace dumbbell {

ScalarQuadrature periodic_quadrature(const std::function<double(double)>& f, double period, double tol)
{
    auto r = periodic_quadrature_vec<1>(
        [&f](double t) { return Eigen::Matrix<double, 1, 1>(f(t)); }, period, tol);
    return {r.value[0], r.nodes};
}

} // namespace dumbbell
