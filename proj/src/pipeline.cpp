#include "dumbbell/pipeline.hpp"

#include "dumbbell/torque.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dumbbell {

StageError::StageError(std::string stage, const std::string& what)
    : Error("stage '" + stage + "' failed: " + what), stage_(std::move(stage))
{
}

namespace {

template <typename F>
auto in_stage(const char* stage, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(stage, e.what());
    } catch (const std::invalid_argument& e) {
        throw StageError(stage, e.what());
    }
}

std::string common_comment(const RunConfig& cfg, const char* command)
{
    std::ostringstream os;
    os << "command=" << command;
    if (!cfg.name.empty()) os << "; name=" << cfg.name;
    os << "; mode=" << mode_name(cfg.spec.mode) << "; p=" << cfg.spec.p << "; q=" << cfg.spec.q;
    return os.str();
}

ShootingOptions shooting_options(const RunConfig& cfg)
{
    ShootingOptions o;
    o.tol = cfg.shoot_tol;
    o.integrator_tol = cfg.integrator_tol;
    o.max_iter = cfg.shoot_max_iter;
    return o;
}

std::string shooting_comment(const ShootingOptions& o)
{
    return "shoot_tol=" + format_double(o.tol) + "; integrator_tol=" + format_double(o.integrator_tol)
        + "; fd_step=" + format_double(o.fd_step) + "; sv_cutoff=" + format_double(o.sv_cutoff)
        + "; shoot_max_iter=" + std::to_string(o.max_iter);
}

ZeroSearchDomain domain_of(const RunConfig& cfg) { return {cfg.r1, cfg.r2, cfg.n_radii, cfg.n_angles}; }

std::string solve_comment(const RunConfig& cfg, const SolveResult& r, const char* command)
{
    std::ostringstream os;
    os << common_comment(cfg, command) << "; field_source=" << field_source_name(r.source)
       << "; quad_tol=" << format_double(cfg.quad_tol) << "; quad_nodes=" << r.max_nodes
       << "; newton_tol=" << format_double(cfg.newton_tol) << "; r1=" << format_double(cfg.r1)
       << "; r2=" << format_double(cfg.r2) << "; seeds=" << cfg.n_radii << "x" << cfg.n_angles
       << "; field_scale=" << format_double(r.field_scale);
    return os.str();
}

std::string zeros_csv(const RunConfig& cfg, const SolveResult& r, const char* command)
{
    std::ostringstream os;
    write_zeros_csv(os, r.zeros, r.classes, solve_comment(cfg, r, command));
    return os.str();
}

std::string fixed(double x, int prec = 10)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, x);
    return buf;
}

std::string sci(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::vector<double> grid_axis(const RunConfig& cfg)
{
    std::vector<double> axis;
    for (int i = 0; i < cfg.grid_points; ++i)
        axis.push_back(cfg.grid_points == 1
                           ? cfg.grid_min
                           : cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i / (cfg.grid_points - 1));
    return axis;
}

} // namespace

Field2D make_field(const RunConfig& cfg, FieldSource source)
{
    if (source == FieldSource::printed_reference) return printed_reference_field(cfg.spec.mode);
    const LinearizedTorque lin = extract_linearized(cfg.f1_star(), cfg.f2_star());
    return AveragedField(cfg.spec, lin, cfg.quad_tol).as_field();
}

SolveResult solve(const RunConfig& cfg, FieldSource source)
{
    return in_stage("solve", [&] {
        SolveResult r;
        r.source = source;
        const Field2D field = make_field(cfg, source);
        const ZeroSearchDomain domain = domain_of(cfg);
        NewtonOptions opts;
        opts.tol = cfg.newton_tol;
        opts.max_iter = cfg.newton_max_iter;
        r.field_scale = field_scale(field, domain);
        r.zeros = multistart_zeros(field, domain, opts);
        r.classes = orbit_classes(r.zeros);
        if (source == FieldSource::pipeline) {
            const AveragedField af(cfg.spec, extract_linearized(cfg.f1_star(), cfg.f2_star()), cfg.quad_tol);
            for (const auto& z : r.zeros) r.max_nodes = std::max(r.max_nodes, af.evaluate_with_nodes(z.location).nodes);
        }
        return r;
    });
}

std::vector<std::pair<int, Eigen::Vector2d>> class_representatives(const SolveResult& result)
{
    std::vector<std::pair<int, Eigen::Vector2d>> reps;
    for (std::size_t i = 0; i < result.zeros.size(); ++i) {
        if (result.zeros[i].classification != CertifiedZero::Kind::simple) continue;
        const int c = result.classes[i];
        if (std::none_of(reps.begin(), reps.end(), [c](const auto& r) { return r.first == c; }))
            reps.emplace_back(c, result.zeros[i].location);
    }
    return reps;
}

std::vector<LabelledContinuation> verify(const RunConfig& cfg, const SolveResult& result, VerifySystem system)
{
    return in_stage("verify", [&] {
        std::vector<LabelledContinuation> runs;
        const ShootingOptions opts = shooting_options(cfg);
        const TorqueExpression f1 = cfg.f1_star(), f2 = cfg.f2_star();
        SystemFactory factory;
        if (system == VerifySystem::full) {
            factory = [f1, f2](double eps) { return full_system(PerturbSetup{f1, f2, eps, {}, {}}); };
        } else {
            const LinearizedTorque lin = extract_linearized(f1, f2);
            factory = [lin](double eps) { return linearized_system(lin, eps); };
        }
        for (const auto& [cls, alpha] : class_representatives(result)) {
            LabelledContinuation run;
            run.label = std::string(field_source_name(result.source)) + "/" + std::to_string(cls);
            run.system = std::string(verify_system_name(system));
            run.report = epsilon_continuation(factory, alpha, cfg.spec, cfg.epsilon_list, opts);
            runs.push_back(std::move(run));
        }
        return runs;
    });
}

Artifacts run_eval(const RunConfig& cfg)
{
    return in_stage("eval", [&] {
        std::vector<FieldSample> rows;
        int max_nodes = 0;
        const auto axis = grid_axis(cfg);
        std::optional<AveragedField> af;
        if (cfg.field_source == FieldSource::pipeline)
            af.emplace(cfg.spec, extract_linearized(cfg.f1_star(), cfg.f2_star()), cfg.quad_tol);
        const Field2D printed = printed_reference_field(cfg.spec.mode);
        for (double a1 : axis) {
            for (double a2 : axis) {
                const Eigen::Vector2d alpha(a1, a2);
                if (af) {
                    const auto ev = af->evaluate_with_nodes(alpha);
                    max_nodes = std::max(max_nodes, ev.nodes);
                    rows.push_back({alpha, ev.value});
                } else {
                    rows.push_back({alpha, printed(alpha)});
                }
            }
        }
        std::ostringstream os;
        write_field_csv(os, rows,
                        common_comment(cfg, "eval") + "; field_source=" + std::string(field_source_name(cfg.field_source))
                            + "; quad_tol=" + format_double(cfg.quad_tol) + "; quad_nodes=" + std::to_string(max_nodes)
                            + "; grid=" + std::to_string(cfg.grid_points) + "x" + std::to_string(cfg.grid_points));
        return Artifacts{{"field.csv", os.str()}};
    });
}

Artifacts run_solve(const RunConfig& cfg)
{
    const SolveResult r = solve(cfg, cfg.field_source);
    return Artifacts{{"zeros.csv", zeros_csv(cfg, r, "solve")}};
}

namespace {

std::string continuation_text(const std::vector<LabelledContinuation>& runs)
{
    std::ostringstream os;
    if (runs.empty()) os << "  (no simple zeros to verify)\n";
    for (const auto& run : runs) {
        os << "  " << run.label << " on " << run.system << " equations, predicted IC (";
        for (int i = 0; i < 4; ++i) os << (i ? ", " : "") << fixed(run.report.predicted_ic[i]);
        os << "): " << run.report.status_label()
           << (run.report.steps.size() > 1 ? (run.report.distance_monotone() ? ", distance monotone" : ", distance NOT monotone") : "")
           << "\n";
        for (const auto& s : run.report.steps) {
            os << "    eps " << sci(s.epsilon);
            if (s.certificate) {
                os << "  distance " << sci(s.distance) << "  displacement " << sci(s.certificate->displacement_norm)
                   << "  order " << (s.empirical_order ? fixed(*s.empirical_order, 4) : std::string("-"))
                   << "  newton " << s.certificate->newton_iters << "\n";
            } else {
                os << "  FAILED: " << s.failure << "\n";
            }
        }
    }
    return os.str();
}

} // namespace

Artifacts run_verify(const RunConfig& cfg, bool& all_passed)
{
    const SolveResult r = solve(cfg, cfg.field_source);
    const auto runs = verify(cfg, r, cfg.verify_system);
    all_passed = std::all_of(runs.begin(), runs.end(), [](const auto& x) { return x.report.passed(); });

    const ShootingOptions opts = shooting_options(cfg);
    std::ostringstream csv;
    write_continuation_csv(csv, runs, common_comment(cfg, "verify") + "; field_source="
                                          + std::string(field_source_name(cfg.field_source)) + "; "
                                          + shooting_comment(opts));
    std::ostringstream txt;
    txt << "verify " << (cfg.name.empty() ? std::string("(unnamed)") : cfg.name) << ": mode "
        << mode_name(cfg.spec.mode) << ", p = " << cfg.spec.p << ", q = " << cfg.spec.q << ", field source "
        << field_source_name(cfg.field_source) << ", " << verify_system_name(cfg.verify_system) << " equations\n"
        << continuation_text(runs) << "overall: " << (all_passed ? "PASS" : "FAIL") << "\n";
    return Artifacts{{"continuation.csv", csv.str()}, {"verify_report.txt", txt.str()}};
}

std::vector<PublishedZero> published_zeros(Mode mode)
{
    const double s17 = std::sqrt(17.0);
    if (mode == Mode::NutationT1) return {{Eigen::Vector2d(kSqrt3 / 3.0, 0.0), 1.0 / 384.0, "(sqrt3/3, 0)"}};
    return {{Eigen::Vector2d(1.0, 2.0 * kSqrt3 / 3.0), 1.0 / 32.0, "(1, 2sqrt3/3)"},
            {Eigen::Vector2d(1.0, -2.0 * kSqrt3 / 3.0), 1.0 / 32.0, "(1, -2sqrt3/3)"},
            // |det| of the printed polynomials at each location; the published
            // display lists the same two magnitudes attached to the opposite zeros.
            {Eigen::Vector2d((1.0 - s17) / 4.0, 0.0), (7.0 * s17 + 17.0) / 512.0, "((1-sqrt17)/4, 0)"},
            {Eigen::Vector2d((1.0 + s17) / 4.0, 0.0), (7.0 * s17 - 17.0) / 512.0, "((1+sqrt17)/4, 0)"}};
}

Artifacts run_reproduce(const RunConfig& cfg, ReproduceSummary& summary)
{
    const TorqueExpression f1 = cfg.f1_star(), f2 = cfg.f2_star();
    const EquilibriumReport eq = validate_equilibrium(f1, f2);
    const MonodromyGap gap = in_stage("monodromy", [&] { return monodromy_gap(cfg.spec); });

    const SolveResult printed = solve(cfg, FieldSource::printed_reference);
    const SolveResult pipeline = solve(cfg, FieldSource::pipeline);

    // Field comparison on the eval grid.
    const Field2D pf = make_field(cfg, FieldSource::pipeline);
    const Field2D rf = make_field(cfg, FieldSource::printed_reference);
    double max_diff = 0.0, max_ref = 0.0;
    for (double a1 : grid_axis(cfg))
        for (double a2 : grid_axis(cfg)) {
            const Eigen::Vector2d a(a1, a2);
            const Eigen::Vector2d r = rf(a);
            max_diff = std::max(max_diff, (pf(a) - r).cwiseAbs().maxCoeff());
            max_ref = std::max(max_ref, r.cwiseAbs().maxCoeff());
        }
    const bool fields_agree = max_diff <= 1e-9 * std::max(1.0, max_ref);

    // Published values against the printed-reference solve.
    const auto published = published_zeros(cfg.spec.mode);
    struct Match {
        int published = -1;
        double loc_err = 0.0;
        double det_err = 0.0;
    };
    std::vector<Match> matches(printed.zeros.size());
    bool all_match = printed.zeros.size() == published.size();
    for (std::size_t i = 0; i < printed.zeros.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < published.size(); ++k) {
            const double d = (printed.zeros[i].location - published[k].location).norm();
            if (d < best) {
                best = d;
                matches[i] = {static_cast<int>(k), d,
                              std::abs(std::abs(printed.zeros[i].jacobian_det) - std::abs(published[k].det))};
            }
        }
        if (!(matches[i].loc_err < 1e-9 && matches[i].det_err < 1e-9)) all_match = false;
    }
    summary.printed_matches = all_match;

    std::vector<LabelledContinuation> runs;
    for (const SolveResult* r : {&pipeline, &printed})
        for (VerifySystem sys : {VerifySystem::full, VerifySystem::linearized}) {
            auto v = verify(cfg, *r, sys);
            runs.insert(runs.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
        }
    auto status_of = [&runs](const std::string& label, const char* system) -> std::string {
        for (const auto& run : runs)
            if (run.label == label && run.system == system) return run.report.status_label();
        return "-";
    };

    std::ostringstream txt;
    txt << "reproduce " << (cfg.name.empty() ? std::string("(unnamed)") : cfg.name) << "\n"
        << "  mode " << mode_name(cfg.spec.mode) << ", p = " << cfg.spec.p << ", q = " << cfg.spec.q
        << ", averaging window " << fixed(window(cfg.spec)) << "\n"
        << "  F1* = " << f1.to_string() << "\n"
        << "  F2* = " << f2.to_string() << "\n"
        << "  equilibrium check: " << eq.summary() << "\n"
        << "  monodromy gap determinant: " << fixed(gap.active_determinant, 12) << "\n\n";

    txt << "Averaged fields, pipeline vs printed-reference, on a " << cfg.grid_points << "x" << cfg.grid_points
        << " grid over [" << cfg.grid_min << ", " << cfg.grid_max << "]^2\n"
        << "  max |pipeline - printed| = " << sci(max_diff) << "  (" << (fields_agree ? "agree" : "differ") << ")\n\n";

    txt << "Zeros in the annulus " << cfg.r1 << " <= |alpha| <= " << cfg.r2 << "\n";
    char line[512];
    std::snprintf(line, sizeof line, "  %-18s %-6s %20s %20s %20s %-10s %-20s %10s %10s %-18s %-18s\n", "source",
                  "class", "alpha1", "alpha2", "det", "kind", "published", "|dloc|", "|d|det||", "full eqs",
                  "linearized eqs");
    txt << line;
    for (const SolveResult* r : {&printed, &pipeline}) {
        if (r->zeros.empty()) {
            std::snprintf(line, sizeof line, "  %-18s (none)\n", std::string(field_source_name(r->source)).c_str());
            txt << line;
        }
        for (std::size_t i = 0; i < r->zeros.size(); ++i) {
            const auto& z = r->zeros[i];
            std::string pub = "-", dloc = "-", ddet = "-";
            if (r == &printed && matches[i].published >= 0) {
                pub = published[static_cast<std::size_t>(matches[i].published)].label;
                dloc = sci(matches[i].loc_err);
                ddet = sci(matches[i].det_err);
            }
            const std::string label = std::string(field_source_name(r->source)) + "/" + std::to_string(r->classes[i]);
            std::snprintf(line, sizeof line, "  %-18s %-6d %20.15f %20.15f %20.15f %-10s %-20s %10s %10s %-18s %-18s\n",
                          std::string(field_source_name(r->source)).c_str(), r->classes[i], z.location[0],
                          z.location[1], z.jacobian_det,
                          z.classification == CertifiedZero::Kind::simple ? "simple" : "degenerate", pub.c_str(),
                          dloc.c_str(), ddet.c_str(), status_of(label, "full").c_str(),
                          status_of(label, "linearized").c_str());
            txt << line;
        }
    }
    const std::size_t n_classes = printed.classes.empty()
        ? 0
        : static_cast<std::size_t>(*std::max_element(printed.classes.begin(), printed.classes.end()) + 1);
    txt << "  printed-reference: " << printed.zeros.size() << " zeros in " << n_classes
        << " orbit classes; published values " << (all_match ? "reproduced" : "NOT reproduced")
        << " (location and |det| within 1e-9)\n\n";

    txt << "Shooting verification, epsilon ladder";
    for (double e : cfg.epsilon_list) txt << ' ' << sci(e);
    txt << "\n" << continuation_text(runs);

    std::ostringstream csv;
    csv << "# " << common_comment(cfg, "reproduce") << "; " << shooting_comment(shooting_options(cfg))
        << "; max_field_difference=" << format_double(max_diff) << "\n";
    csv << "source,orbit_class,alpha1,alpha2,det,classification,published,location_error,abs_det_error,"
           "full_status,linearized_status\n";
    for (const SolveResult* r : {&printed, &pipeline})
        for (std::size_t i = 0; i < r->zeros.size(); ++i) {
            const auto& z = r->zeros[i];
            const std::string src(field_source_name(r->source));
            const std::string label = src + "/" + std::to_string(r->classes[i]);
            csv << src << ',' << r->classes[i] << ',' << format_double(z.location[0]) << ','
                << format_double(z.location[1]) << ',' << format_double(z.jacobian_det) << ','
                << (z.classification == CertifiedZero::Kind::simple ? "simple" : "degenerate") << ',';
            if (r == &printed && matches[i].published >= 0)
                csv << '"' << published[static_cast<std::size_t>(matches[i].published)].label << "\","
                    << format_double(matches[i].loc_err) << ',' << format_double(matches[i].det_err);
            else
                csv << ",,";
            csv << ',' << status_of(label, "full") << ',' << status_of(label, "linearized") << '\n';
        }

    std::ostringstream cont;
    write_continuation_csv(cont, runs, common_comment(cfg, "reproduce") + "; " + shooting_comment(shooting_options(cfg)));

    summary.table_written = true;
    return Artifacts{{"comparison.txt", txt.str()},
                     {"comparison.csv", csv.str()},
                     {"reference_zeros.csv", zeros_csv(cfg, printed, "reproduce")},
                     {"pipeline_zeros.csv", zeros_csv(cfg, pipeline, "reproduce")},
                     {"continuation.csv", cont.str()}};
}

} // namespace dumbbell
