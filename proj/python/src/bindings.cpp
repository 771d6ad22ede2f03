#include "dumbbell/averaging.hpp"
#include "dumbbell/config.hpp"
#include "dumbbell/dynamics.hpp"
#include "dumbbell/errors.hpp"
#include "dumbbell/pipeline.hpp"
#include "dumbbell/torque.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dumbbell;

namespace {

Mode parse_mode(const std::string& m)
{
    if (m == "T1") return Mode::NutationT1;
    if (m == "T2") return Mode::PrecessionT2;
    throw py::value_error("mode must be 'T1' or 'T2'");
}

FieldSource parse_source(const std::string& s)
{
    if (s == "pipeline") return FieldSource::pipeline;
    if (s == "printed-reference") return FieldSource::printed_reference;
    throw py::value_error("source must be 'pipeline' or 'printed-reference'");
}

VerifySystem parse_system(const std::string& s)
{
    if (s == "full") return VerifySystem::full;
    if (s == "linearized") return VerifySystem::linearized;
    throw py::value_error("system must be 'full' or 'linearized'");
}

RunConfig config_from(const std::string& name_or_text)
{
    if (auto text = bundled_config(name_or_text)) return parse_config(*text);
    return parse_config(name_or_text);
}

py::list zeros_to_list(const SolveResult& r)
{
    py::list out;
    for (std::size_t i = 0; i < r.zeros.size(); ++i) {
        const auto& z = r.zeros[i];
        py::dict d;
        d["location"] = z.location;
        d["residual"] = z.residual_norm;
        d["det"] = z.jacobian_det;
        d["simple"] = z.classification == CertifiedZero::Kind::simple;
        d["orbit_class"] = r.classes[i];
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Averaged bifurcation functions and periodic-orbit verification for the dumbbell satellite";

    // Translators run newest first, so the base class is registered first.
    auto base = py::register_exception<Error>(m, "DumbbellError", PyExc_RuntimeError);
    py::register_exception<SyntaxError>(m, "TorqueSyntaxError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<TorqueExpression>(m, "Torque")
        .def("__str__", &TorqueExpression::to_string)
        .def("__repr__", [](const TorqueExpression& e) { return "Torque('" + e.to_string() + "')"; })
        .def("__eq__", [](const TorqueExpression& a, const TorqueExpression& b) { return a == b; })
        .def(
            "evaluate",
            [](const TorqueExpression& e, double t, double theta, double theta_dot, double phi, double phi_dot) {
                return e.evaluate({t, theta, theta_dot, phi, phi_dot});
            },
            py::arg("t") = 0.0, py::arg("theta") = 0.0, py::arg("theta_dot") = 0.0, py::arg("phi") = 0.0,
            py::arg("phi_dot") = 0.0);
    m.def("parse_torque", [](const std::string& text) { return parse_torque(text); }, py::arg("text"));

    m.def(
        "linearized_coefficients",
        [](const std::string& f1_star, const std::string& f2_star, double t, double v1, double v2) {
            const auto lin = extract_linearized(parse_torque(f1_star), parse_torque(f2_star));
            return std::array<double, 4>{lin.f1(t, v1, v2), lin.f2(t, v1, v2), lin.f3(t, v1, v2), lin.f4(t, v1, v2)};
        },
        py::arg("f1_star"), py::arg("f2_star"), py::arg("t"), py::arg("v1"), py::arg("v2"),
        "(f1, f2, f3, f4) at (t, v1, v2)");

    py::class_<AveragedField>(m, "AveragedField")
        .def(py::init([](const std::string& f1_star, const std::string& f2_star, const std::string& mode, int p, int q,
                         double quad_tol) {
                 const ResonanceSpec spec{parse_mode(mode), p, q};
                 spec.validate();
                 return AveragedField(spec, extract_linearized(parse_torque(f1_star), parse_torque(f2_star)), quad_tol);
             }),
             py::arg("f1_star"), py::arg("f2_star"), py::arg("mode") = "T1", py::arg("p") = 1, py::arg("q") = 1,
             py::arg("quad_tol") = kDefaultQuadTolerance)
        .def("__call__", [](const AveragedField& f, const Eigen::Vector2d& a) { return f(a); }, py::arg("alpha"));

    m.def(
        "printed_reference_field",
        [](const std::string& mode, const Eigen::Vector2d& a) { return printed_reference_field(parse_mode(mode))(a); },
        py::arg("mode"), py::arg("alpha"));

    m.def(
        "monodromy_gap",
        [](const std::string& mode, int p, int q) {
            const MonodromyGap g = monodromy_gap({parse_mode(mode), p, q});
            return py::make_tuple(g.gap, g.active_determinant);
        },
        py::arg("mode"), py::arg("p") = 1, py::arg("q") = 1, "(gap matrix, active block determinant)");

    m.def(
        "closed_form_solution",
        [](const Eigen::Vector2d& a, const std::string& mode, double t) {
            return closed_form_solution(a, parse_mode(mode), t);
        },
        py::arg("alpha"), py::arg("mode"), py::arg("t"));

    m.def("bundled_config_names", &bundled_config_names);
    m.def(
        "bundled_config",
        [](const std::string& name) {
            auto text = bundled_config(name);
            if (!text) throw py::key_error(name);
            return std::string(*text);
        },
        py::arg("name"));

    m.def(
        "solve",
        [](const std::string& config, const std::string& source) {
            return zeros_to_list(solve(config_from(config), parse_source(source)));
        },
        py::arg("config"), py::arg("source") = "pipeline",
        "Zeros of the averaged field. config is a bundled name or config text.");

    m.def(
        "verify",
        [](const std::string& config, const std::string& source, const std::string& system) {
            const RunConfig cfg = config_from(config);
            const auto runs = verify(cfg, solve(cfg, parse_source(source)), parse_system(system));
            py::list out;
            for (const auto& run : runs) {
                py::dict d;
                d["label"] = run.label;
                d["status"] = run.report.status_label();
                d["passed"] = run.report.passed();
                d["monotone"] = run.report.distance_monotone();
                py::list steps;
                for (const auto& s : run.report.steps) {
                    py::dict sd;
                    sd["epsilon"] = s.epsilon;
                    sd["distance"] = s.distance;
                    sd["order"] = s.empirical_order ? py::cast(*s.empirical_order) : py::none();
                    sd["displacement"] = s.certificate ? py::cast(s.certificate->displacement_norm) : py::none();
                    sd["corrected_ic"] = s.certificate ? py::cast(s.certificate->corrected_ic) : py::none();
                    steps.append(sd);
                }
                d["steps"] = steps;
                out.append(d);
            }
            return out;
        },
        py::arg("config"), py::arg("source") = "pipeline", py::arg("system") = "full");
}
