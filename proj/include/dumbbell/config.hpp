#pragma once

#include "dumbbell/dynamics.hpp"
#include "dumbbell/expression.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dumbbell {

enum class FieldSource { pipeline, printed_reference };
enum class VerifySystem { full, linearized };

/// Parsed and validated run configuration. See docs/config.md for the key set.
struct RunConfig {
    std::string name;
    std::string f1_star_text;
    std::string f2_star_text;
    ResonanceSpec spec;
    std::vector<double> epsilon_list{1e-2, 1e-3, 1e-4};

    double r1 = 0.05;
    double r2 = 5.0;
    int n_radii = 16;
    int n_angles = 32;

    double grid_min = -1.0;
    double grid_max = 1.0;
    int grid_points = 11;

    double quad_tol = 1e-12;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    double shoot_tol = 1e-10;
    int shoot_max_iter = 25;
    double integrator_tol = 1e-12;

    std::string output_dir = "out";
    FieldSource field_source = FieldSource::pipeline;
    VerifySystem verify_system = VerifySystem::full;

    TorqueExpression f1_star() const;
    TorqueExpression f2_star() const;

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

/// `key = value` lines, `#` starts a comment, blank lines ignored, values may
/// be wrapped in double quotes. Unknown or repeated keys are errors; F1star,
/// F2star and mode are required. Throws ConfigError with the line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::string_view mode_name(Mode mode);
std::string_view field_source_name(FieldSource s);
std::string_view verify_system_name(VerifySystem s);

/// Text of a bundled configuration ("corollary1" or "corollary2"), if it exists.
std::optional<std::string_view> bundled_config(std::string_view name);
std::vector<std::string> bundled_config_names();

} // namespace dumbbell
