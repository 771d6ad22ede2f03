#include "dumbbell/csv.hpp"

#include <cstdio>

namespace dumbbell {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void comment_line(std::ostream& os, const std::string& comment)
{
    os << "# " << comment << '\n';
}

const char* kind_name(CertifiedZero::Kind k) { return k == CertifiedZero::Kind::simple ? "simple" : "degenerate"; }

} // namespace

void write_field_csv(std::ostream& os, const std::vector<FieldSample>& rows, const std::string& comment)
{
    comment_line(os, comment);
    os << "alpha1,alpha2,field1,field2\n";
    for (const auto& r : rows)
        os << format_double(r.alpha[0]) << ',' << format_double(r.alpha[1]) << ',' << format_double(r.value[0])
           << ',' << format_double(r.value[1]) << '\n';
}

void write_zeros_csv(std::ostream& os, const std::vector<CertifiedZero>& zeros, const std::vector<int>& classes,
                     const std::string& comment)
{
    comment_line(os, comment);
    os << "alpha1,alpha2,residual,det,classification,orbit_class\n";
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const auto& z = zeros[i];
        os << format_double(z.location[0]) << ',' << format_double(z.location[1]) << ','
           << format_double(z.residual_norm) << ',' << format_double(z.jacobian_det) << ','
           << kind_name(z.classification) << ',' << (i < classes.size() ? classes[i] : -1) << '\n';
    }
}

void write_continuation_csv(std::ostream& os, const std::vector<LabelledContinuation>& runs,
                            const std::string& comment)
{
    comment_line(os, comment);
    os << "label,system,epsilon,predicted_theta,predicted_theta_dot,predicted_phi,predicted_phi_dot,"
          "corrected_theta,corrected_theta_dot,corrected_phi,corrected_phi_dot,displacement,distance,"
          "empirical_order,newton_iters,status\n";
    for (const auto& run : runs) {
        for (const auto& step : run.report.steps) {
            os << run.label << ',' << run.system << ',' << format_double(step.epsilon);
            for (int i = 0; i < 4; ++i) os << ',' << format_double(run.report.predicted_ic[i]);
            if (step.certificate) {
                for (int i = 0; i < 4; ++i) os << ',' << format_double(step.certificate->corrected_ic[i]);
                os << ',' << format_double(step.certificate->displacement_norm) << ','
                   << format_double(step.distance) << ',';
                if (step.empirical_order) os << format_double(*step.empirical_order);
                os << ',' << step.certificate->newton_iters << ",converged\n";
            } else {
                os << ",,,,,,,,,failed\n";
            }
        }
    }
}

} // namespace dumbbell
