#pragma once

#include "dumbbell/shooting.hpp"
#include "dumbbell/zeros.hpp"

#include <Eigen/Core>

#include <ostream>
#include <string>
#include <vector>

namespace dumbbell {

/// 17 significant digits; round-trips every double.
std::string format_double(double x);

struct FieldSample {
    Eigen::Vector2d alpha;
    Eigen::Vector2d value;
};

/// Every CSV starts with a `# key=value; ...` comment line, then the header row.
void write_field_csv(std::ostream& os, const std::vector<FieldSample>& rows, const std::string& comment);

/// Columns alpha1, alpha2, residual, det, classification, orbit_class.
void write_zeros_csv(std::ostream& os, const std::vector<CertifiedZero>& zeros, const std::vector<int>& classes,
                     const std::string& comment);

struct LabelledContinuation {
    std::string label;  ///< e.g. "pipeline/0"
    std::string system; ///< "full" or "linearized"
    ContinuationReport report;
};

/// One row per epsilon step: label, system, epsilon, predicted (4), corrected (4),
/// displacement, distance, empirical_order, newton_iters, status.
void write_continuation_csv(std::ostream& os, const std::vector<LabelledContinuation>& runs,
                            const std::string& comment);

} // namespace dumbbell
