#include "dumbbell/config.hpp"

#include "dumbbell/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace dumbbell {

std::string_view mode_name(Mode mode) { return mode == Mode::NutationT1 ? "T1" : "T2"; }

std::string_view field_source_name(FieldSource s)
{
    return s == FieldSource::pipeline ? "pipeline" : "printed-reference";
}

std::string_view verify_system_name(VerifySystem s) { return s == VerifySystem::full ? "full" : "linearized"; }

TorqueExpression RunConfig::f1_star() const { return parse_torque(f1_star_text); }
TorqueExpression RunConfig::f2_star() const { return parse_torque(f2_star_text); }

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view v, std::size_t line, const std::string& key)
{
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError("key '" + key + "': expected a number, got '" + std::string(v) + "'", line, key);
    return out;
}

int to_int(std::string_view v, std::size_t line, const std::string& key)
{
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("key '" + key + "': expected an integer, got '" + std::string(v) + "'", line, key);
    return out;
}

std::vector<double> to_list(std::string_view v, std::size_t line, const std::string& key)
{
    std::vector<double> out;
    while (!v.empty()) {
        const auto comma = v.find(',');
        const std::string_view item = trim(v.substr(0, comma));
        if (item.empty()) throw ConfigError("key '" + key + "': empty list entry", line, key);
        out.push_back(to_double(item, line, key));
        if (comma == std::string_view::npos) break;
        v.remove_prefix(comma + 1);
        if (trim(v).empty()) throw ConfigError("key '" + key + "': trailing comma", line, key);
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list", line, key);
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::size_t, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"name", [](RunConfig& c, std::string_view v, std::size_t, const std::string&) { c.name = v; }},
        {"F1star", [](RunConfig& c, std::string_view v, std::size_t, const std::string&) { c.f1_star_text = v; }},
        {"F2star", [](RunConfig& c, std::string_view v, std::size_t, const std::string&) { c.f2_star_text = v; }},
        {"mode",
         [](RunConfig& c, std::string_view v, std::size_t line, const std::string& k) {
             if (v == "T1") c.spec.mode = Mode::NutationT1;
             else if (v == "T2") c.spec.mode = Mode::PrecessionT2;
             else throw ConfigError("key 'mode': expected T1 or T2, got '" + std::string(v) + "'", line, k);
         }},
        {"p", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.spec.p = to_int(v, l, k); }},
        {"q", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.spec.q = to_int(v, l, k); }},
        {"epsilon_list",
         [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.epsilon_list = to_list(v, l, k); }},
        {"r1", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.r1 = to_double(v, l, k); }},
        {"r2", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.r2 = to_double(v, l, k); }},
        {"n_radii", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.n_radii = to_int(v, l, k); }},
        {"n_angles", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.n_angles = to_int(v, l, k); }},
        {"grid_min", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.grid_min = to_double(v, l, k); }},
        {"grid_max", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.grid_max = to_double(v, l, k); }},
        {"grid_points",
         [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.grid_points = to_int(v, l, k); }},
        {"quad_tol", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.quad_tol = to_double(v, l, k); }},
        {"newton_tol",
         [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.newton_tol = to_double(v, l, k); }},
        {"newton_max_iter",
         [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.newton_max_iter = to_int(v, l, k); }},
        {"shoot_tol", [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.shoot_tol = to_double(v, l, k); }},
        {"shoot_max_iter",
         [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.shoot_max_iter = to_int(v, l, k); }},
        {"integrator_tol",
         [](RunConfig& c, std::string_view v, std::size_t l, const std::string& k) { c.integrator_tol = to_double(v, l, k); }},
        {"output_dir", [](RunConfig& c, std::string_view v, std::size_t, const std::string&) { c.output_dir = v; }},
        {"field_source",
         [](RunConfig& c, std::string_view v, std::size_t line, const std::string& k) {
             if (v == "pipeline") c.field_source = FieldSource::pipeline;
             else if (v == "printed-reference") c.field_source = FieldSource::printed_reference;
             else throw ConfigError("key 'field_source': expected pipeline or printed-reference", line, k);
         }},
        {"verify_system",
         [](RunConfig& c, std::string_view v, std::size_t line, const std::string& k) {
             if (v == "full") c.verify_system = VerifySystem::full;
             else if (v == "linearized") c.verify_system = VerifySystem::linearized;
             else throw ConfigError("key 'verify_system': expected full or linearized", line, k);
         }},
    };
    return table;
}

void require_positive(double v, const char* key)
{
    if (!(v > 0.0)) throw ConfigError(std::string("key '") + key + "' must be positive", 0, key);
}

} // namespace

void RunConfig::validate() const
{
    try {
        parse_torque(f1_star_text);
    } catch (const Error& e) {
        throw ConfigError(std::string("key 'F1star': ") + e.what(), 0, "F1star");
    }
    try {
        parse_torque(f2_star_text);
    } catch (const Error& e) {
        throw ConfigError(std::string("key 'F2star': ") + e.what(), 0, "F2star");
    }
    if (spec.p <= 0) throw ConfigError("key 'p' must be a positive integer", 0, "p");
    if (spec.q <= 0) throw ConfigError("key 'q' must be a positive integer", 0, "q");
    if (std::gcd(spec.p, spec.q) != 1) throw ConfigError("keys 'p' and 'q' must be relatively prime", 0, "q");
    require_positive(r1, "r1");
    if (!(r1 < r2)) throw ConfigError("key 'r1' must be smaller than r2", 0, "r1");
    if (n_radii < 1) throw ConfigError("key 'n_radii' must be at least 1", 0, "n_radii");
    if (n_angles < 1) throw ConfigError("key 'n_angles' must be at least 1", 0, "n_angles");
    if (grid_points < 1) throw ConfigError("key 'grid_points' must be at least 1", 0, "grid_points");
    if (!(grid_min <= grid_max)) throw ConfigError("key 'grid_min' must not exceed grid_max", 0, "grid_min");
    require_positive(quad_tol, "quad_tol");
    require_positive(newton_tol, "newton_tol");
    require_positive(shoot_tol, "shoot_tol");
    require_positive(integrator_tol, "integrator_tol");
    if (newton_max_iter < 1) throw ConfigError("key 'newton_max_iter' must be at least 1", 0, "newton_max_iter");
    if (shoot_max_iter < 1) throw ConfigError("key 'shoot_max_iter' must be at least 1", 0, "shoot_max_iter");
    for (std::size_t i = 0; i < epsilon_list.size(); ++i) {
        if (epsilon_list[i] < 0.0) throw ConfigError("key 'epsilon_list' entries must be >= 0", 0, "epsilon_list");
        if (i > 0 && !(epsilon_list[i] < epsilon_list[i - 1]))
            throw ConfigError("key 'epsilon_list' must be strictly descending", 0, "epsilon_list");
    }
    if (output_dir.empty()) throw ConfigError("key 'output_dir' must not be empty", 0, "output_dir");
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", line_no);
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (value.empty()) throw ConfigError("key '" + key + "' has an empty value", line_no, key);

        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line_no, key);
        if (!seen.insert(key).second) throw ConfigError("key '" + key + "' given twice", line_no, key);
        it->second(cfg, value, line_no, key);
    }
    for (const char* required : {"F1star", "F2star", "mode"})
        if (!seen.count(required))
            throw ConfigError(std::string("missing required key '") + required + "'", 0, required);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace dumbbell
