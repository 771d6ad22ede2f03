#pragma once

#include "dumbbell/averaging.hpp"
#include "dumbbell/config.hpp"
#include "dumbbell/csv.hpp"
#include "dumbbell/shooting.hpp"
#include "dumbbell/zeros.hpp"

#include <map>
#include <string>
#include <vector>

namespace dumbbell {

/// Numerical failure inside a named pipeline stage (CLI exit code 2).
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what);
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Output file name -> content. Written by the caller.
using Artifacts = std::map<std::string, std::string>;

/// Averaged field of the configured torques, or the printed polynomial field.
Field2D make_field(const RunConfig& cfg, FieldSource source);

struct SolveResult {
    FieldSource source = FieldSource::pipeline;
    std::vector<CertifiedZero> zeros;
    std::vector<int> classes;
    double field_scale = 0.0;
    int max_nodes = 0; ///< largest quadrature node count at the zeros (0 for printed fields)
};

SolveResult solve(const RunConfig& cfg, FieldSource source);

/// One zero per orbit class among the simple zeros.
std::vector<std::pair<int, Eigen::Vector2d>> class_representatives(const SolveResult& result);

/// Continuation for every orbit class representative.
std::vector<LabelledContinuation> verify(const RunConfig& cfg, const SolveResult& result, VerifySystem system);

/// `eval`: field.csv on the configured grid.
Artifacts run_eval(const RunConfig& cfg);
/// `solve`: zeros.csv.
Artifacts run_solve(const RunConfig& cfg);
/// `verify`: continuation.csv and verify_report.txt. Sets all_passed.
Artifacts run_verify(const RunConfig& cfg, bool& all_passed);

struct ReproduceSummary {
    bool printed_matches = false; ///< printed-reference zeros and |det| match the published values
    bool table_written = false;
};

/// `reproduce`: zeros from both field sources, shooting on both the full and
/// the linearized equations, and the comparison table (comparison.txt/.csv).
Artifacts run_reproduce(const RunConfig& cfg, ReproduceSummary& summary);

/// Published zeros and Jacobian determinants for the bundled examples.
struct PublishedZero {
    Eigen::Vector2d location;
    double det;
    std::string label;
};
std::vector<PublishedZero> published_zeros(Mode mode);

} // namespace dumbbell
