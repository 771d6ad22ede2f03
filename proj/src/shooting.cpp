#include "dumbbell/shooting.hpp"

#include "dumbbell/errors.hpp"

#include <cmath>
#include <sstream>

namespace dumbbell {

namespace {

using Bundle = Eigen::Matrix<double, 20, 1>;

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace

SatelliteState pad_plane_ic(const PlaneIC& alpha, Mode mode) { return closed_form_solution(alpha, mode, 0.0); }

PeriodMap period_map_with_jacobian(const StateRhs& rhs, const SatelliteState& z, double period,
                                   const ShootingOptions& options)
{
    Bundle y0;
    y0.segment<4>(0) = z;
    for (int j = 0; j < 4; ++j) {
        SatelliteState zj = z;
        zj[j] += options.fd_step;
        y0.segment<4>(4 * (j + 1)) = zj;
    }
    auto bundle_rhs = [&rhs](double t, const Bundle& y) {
        Bundle dy;
        for (int j = 0; j < 5; ++j) dy.segment<4>(4 * j) = rhs(t, y.segment<4>(4 * j));
        return dy;
    };
    const Bundle y1 = integrate_dp45<Bundle>(bundle_rhs, y0, 0.0, period, options.integrator_tol);

    PeriodMap out;
    out.image = y1.segment<4>(0);
    for (int j = 0; j < 4; ++j)
        out.jacobian.col(j) = (y1.segment<4>(4 * (j + 1)) - out.image) / options.fd_step;
    return out;
}

OrbitCertificate shoot_periodic(const StateRhs& rhs, const SatelliteState& guess, double period,
                                const ShootingOptions& options)
{
    if (!(period > 0.0)) throw std::invalid_argument("shooting period must be positive");
    if (!guess.allFinite()) throw std::invalid_argument("shooting guess is not finite");

    OrbitCertificate cert;
    cert.predicted_ic = guess;
    cert.period = period;

    SatelliteState z = guess;
    double last_norm = 0.0;
    for (int iter = 0; iter <= options.max_iter; ++iter) {
        PeriodMap map;
        try {
            map = period_map_with_jacobian(rhs, z, period, options);
        } catch (const StepSizeUnderflow& e) {
            if (iter == 0) throw;
            throw NoConvergence("shooting left the integrable region after " + std::to_string(iter)
                                + " Newton steps: " + e.what());
        }
        const SatelliteState residual = map.image - z;
        last_norm = residual.norm();
        if (!std::isfinite(last_norm)) break;
        if (last_norm < options.tol) {
            cert.corrected_ic = z;
            cert.displacement_norm = last_norm;
            cert.newton_iters = iter;
            return cert;
        }
        if (iter == options.max_iter) break;

        const Eigen::Matrix4d dp = map.jacobian - Eigen::Matrix4d::Identity();
        Eigen::JacobiSVD<Eigen::Matrix4d> svd(dp, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::Vector4d sv = svd.singularValues();
        const double cutoff = options.sv_cutoff * sv[0];
        Eigen::Vector4d ut_r = svd.matrixU().transpose() * residual;
        for (int i = 0; i < 4; ++i) ut_r[i] = sv[i] > cutoff ? ut_r[i] / sv[i] : 0.0;
        Eigen::Vector4d step = -(svd.matrixV() * ut_r);
        const double len = step.norm();
        if (len > options.max_step) step *= options.max_step / len;
        z += step;
        if (!z.allFinite()) break;
    }
    throw NoConvergence("shooting did not converge in " + std::to_string(options.max_iter)
                        + " iterations (last displacement " + fmt(last_norm) + ")");
}

bool ContinuationReport::distance_monotone() const
{
    for (std::size_t i = 1; i < steps.size(); ++i)
        if (!(steps[i].distance < steps[i - 1].distance)) return false;
    return true;
}

std::string ContinuationReport::status_label() const
{
    switch (status) {
    case Status::passed: return "PASSED";
    case Status::failed_at: return "FAILED-AT(" + fmt(failed_epsilon.value_or(0.0)) + ")";
    case Status::order_out_of_band: return "ORDER-OUT-OF-BAND";
    }
    return "?";
}

ContinuationReport epsilon_continuation(const SystemFactory& system, const PlaneIC& averaged_zero,
                                        const ResonanceSpec& spec, const std::vector<double>& eps_list,
                                        const ShootingOptions& options)
{
    spec.validate();
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] >= 0.0) || !std::isfinite(eps_list[i]))
            throw std::invalid_argument("epsilon values must be finite and nonnegative");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("epsilon list must be strictly descending");
    }

    ContinuationReport report;
    report.spec = spec;
    report.predicted_ic = pad_plane_ic(averaged_zero, spec.mode);
    const double period = window(spec);

    SatelliteState seed = report.predicted_ic;
    for (double eps : eps_list) {
        ContinuationStep step;
        step.epsilon = eps;
        try {
            OrbitCertificate cert = shoot_periodic(system(eps), seed, period, options);
            cert.epsilon = eps;
            cert.predicted_ic = report.predicted_ic;
            step.distance = (cert.corrected_ic - report.predicted_ic).norm();
            seed = cert.corrected_ic;
            step.certificate = cert;
        } catch (const Error& e) {
            step.failure = e.what();
            report.steps.push_back(step);
            report.status = ContinuationReport::Status::failed_at;
            report.failed_epsilon = eps;
            return report;
        }
        if (!report.steps.empty()) {
            const ContinuationStep& prev = report.steps.back();
            if (prev.distance > 0.0 && step.distance > 0.0 && eps > 0.0)
                step.empirical_order = std::log(prev.distance / step.distance) / std::log(prev.epsilon / eps);
        }
        report.steps.push_back(step);
    }

    for (std::size_t i = 1; i < report.steps.size(); ++i) {
        const auto& order = report.steps[i].empirical_order;
        const bool both_zero = report.steps[i].distance == 0.0 && report.steps[i - 1].distance == 0.0;
        if (both_zero) continue;
        if (!order || *order < report.order_min || *order > report.order_max) {
            report.status = ContinuationReport::Status::order_out_of_band;
            break;
        }
    }
    return report;
}

ContinuationReport epsilon_continuation(const PerturbSetup& setup_template, const PlaneIC& averaged_zero,
                                        const ResonanceSpec& spec, const std::vector<double>& eps_list,
                                        const ShootingOptions& options)
{
    SystemFactory factory = [setup_template](double eps) {
        PerturbSetup s = setup_template;
        s.epsilon = eps;
        return full_system(std::move(s));
    };
    return epsilon_continuation(factory, averaged_zero, spec, eps_list, options);
}

} // namespace dumbbell
