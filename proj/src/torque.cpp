#include "dumbbell/torque.hpp"

#include <cmath>
#include <sstream>

namespace dumbbell {

LinearizedTorque LinearizedTorque::zero()
{
    auto z = [](double, double, double) { return 0.0; };
    return {z, z, z, z};
}

namespace {

Coefficient angle_derivative(TorqueExpression expr, Seed seed)
{
    return [expr = std::move(expr), seed](double t, double v1, double v2) {
        return eval_dual(expr, Bindings{t, 0.0, v1, 0.0, v2}, seed).deriv;
    };
}

double linspace_at(double lo, double hi, int n, int i)
{
    return n <= 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Mixed partial via central difference in phi of the exact theta-derivative.
double mixed_partial(const TorqueExpression& e, double t, double v1, double v2)
{
    constexpr double h = 1e-4;
    const double up = eval_dual(e, Bindings{t, 0.0, v1, h, v2}, Seed::theta).deriv;
    const double dn = eval_dual(e, Bindings{t, 0.0, v1, -h, v2}, Seed::theta).deriv;
    return (up - dn) / (2.0 * h);
}

} // namespace

LinearizedTorque extract_linearized(const TorqueExpression& f1_star, const TorqueExpression& f2_star)
{
    return {angle_derivative(f1_star, Seed::theta), angle_derivative(f1_star, Seed::phi),
            angle_derivative(f2_star, Seed::theta), angle_derivative(f2_star, Seed::phi)};
}

EquilibriumReport validate_equilibrium(const TorqueExpression& f1_star, const TorqueExpression& f2_star,
                                       const SamplingPlan& plan)
{
    EquilibriumReport report;
    const TorqueExpression* torques[2] = {&f1_star, &f2_star};
    for (int i = 0; i < plan.n_t; ++i) {
        const double t = linspace_at(plan.t_min, plan.t_max, plan.n_t, i);
        for (int j = 0; j < plan.n_v1; ++j) {
            const double v1 = linspace_at(plan.v_min, plan.v_max, plan.n_v1, j);
            for (int k = 0; k < plan.n_v2; ++k) {
                const double v2 = linspace_at(plan.v_min, plan.v_max, plan.n_v2, k);
                for (int which = 0; which < 2; ++which) {
                    const double r = std::abs(torques[which]->evaluate(Bindings{t, 0.0, v1, 0.0, v2}));
                    if (r > report.max_residual) {
                        report.max_residual = r;
                        report.torque_index = which + 1;
                        report.at_t = t;
                        report.at_v1 = v1;
                        report.at_v2 = v2;
                    }
                    report.max_cross_term =
                        std::max(report.max_cross_term, std::abs(mixed_partial(*torques[which], t, v1, v2)));
                }
            }
        }
    }
    report.status = report.max_residual < 1e-12 ? EquilibriumReport::Status::pass
                                                : EquilibriumReport::Status::warn;
    return report;
}

std::string EquilibriumReport::summary() const
{
    std::ostringstream os;
    os.precision(17);
    if (status == Status::pass) {
        os << "PASS: torques vanish at theta = phi = 0 (max residual " << max_residual << ")";
    } else {
        os << "WARN: F" << torque_index << "* residual " << max_residual << " at theta = phi = 0"
           << " (t = " << at_t << ", theta_dot = " << at_v1 << ", phi_dot = " << at_v2 << ")";
    }
    if (max_cross_term > 1e-8)
        os << "; theta*phi cross terms up to " << max_cross_term << " dropped by linearization";
    return os.str();
}

} // namespace dumbbell
