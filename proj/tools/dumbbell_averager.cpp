// dumbbell-averager <eval|solve|verify|reproduce> --config <path> [--out <dir>] [--force]
//
// Exit codes: 0 success, 1 configuration or usage error, 2 numerical failure.

#include "dumbbell/config.hpp"
#include "dumbbell/errors.hpp"
#include "dumbbell/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace dumbbell;

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalError = 2;

void write_artifacts(const fs::path& dir, const Artifacts& files, bool refuse_overwrite)
{
    if (refuse_overwrite) {
        for (const auto& [name, content] : files)
            if (fs::exists(dir / name))
                throw ConfigError("refusing to overwrite " + (dir / name).string() + " (use --force)");
    }
    fs::create_directories(dir);
    for (const auto& [name, content] : files) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + (dir / name).string());
        out << content;
        std::cout << "wrote " << (dir / name).string() << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Averaged bifurcation functions and periodic-orbit verification for the rigid dumbbell satellite"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool force = false;
    std::string bundled;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config,-c", config_path, "Run configuration file");
        if (config_required) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--out,-o", out_dir, "Output directory (overrides output_dir)");
    };
    auto* eval = app.add_subcommand("eval", "Evaluate the averaged field on a grid");
    auto* solve = app.add_subcommand("solve", "Find and certify simple zeros of the averaged field");
    auto* verify = app.add_subcommand("verify", "Shoot for periodic orbits along the epsilon ladder");
    auto* reproduce = app.add_subcommand("reproduce", "Run a bundled example end to end");
    add_common(eval, true);
    add_common(solve, true);
    add_common(verify, true);
    add_common(reproduce, false);
    reproduce->add_option("name", bundled, "Bundled configuration: corollary1 or corollary2")
        ->check(CLI::IsMember(bundled_config_names()));
    reproduce->add_flag("--force,-f", force, "Overwrite existing output files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    RunConfig cfg;
    try {
        if (reproduce->parsed() && config_path.empty()) {
            if (bundled.empty()) throw ConfigError("reproduce needs a bundled name or --config");
            cfg = parse_config(*bundled_config(bundled));
        } else {
            cfg = load_config(config_path);
        }
    } catch (const Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    const fs::path dir = out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(out_dir);

    try {
        if (eval->parsed()) {
            write_artifacts(dir, run_eval(cfg), false);
        } else if (solve->parsed()) {
            write_artifacts(dir, run_solve(cfg), false);
        } else if (verify->parsed()) {
            bool passed = false;
            const Artifacts files = run_verify(cfg, passed);
            write_artifacts(dir, files, false);
            std::cout << files.at("verify_report.txt");
            if (!passed) {
                std::cerr << "stage 'verify' failed: epsilon continuation did not pass\n";
                return kNumericalError;
            }
        } else {
            // Check before the (slow) run so nothing is computed for a refused write.
            for (const char* name : {"comparison.txt", "comparison.csv", "reference_zeros.csv",
                                     "pipeline_zeros.csv", "continuation.csv"})
                if (!force && fs::exists(dir / name))
                    throw ConfigError("refusing to overwrite " + (dir / name).string() + " (use --force)");
            ReproduceSummary summary;
            const Artifacts files = run_reproduce(cfg, summary);
            write_artifacts(dir, files, !force);
            std::cout << files.at("comparison.txt");
            if (!summary.printed_matches) {
                std::cerr << "stage 'reproduce' failed: printed-reference zeros do not match the published values\n";
                return kNumericalError;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const StageError& e) {
        std::cerr << e.what() << "\n";
        return kNumericalError;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    return 0;
}
