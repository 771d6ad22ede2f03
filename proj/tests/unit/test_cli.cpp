#include "../support.hpp"

#include "dumbbell/config.hpp"
#include "dumbbell/errors.hpp"
#include "dumbbell/pipeline.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dumbbell;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("dumbbell_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(DUMBBELL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::vector<double>> data_rows(const std::string& csv)
{
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("minimal config takes the defaults")
{
    const RunConfig c = parse_config("F1star = theta\nF2star = 0\nmode = T1\n");
    CHECK(c.spec.p == 1);
    CHECK(c.spec.q == 1);
    CHECK(c.r1 == 0.05);
    CHECK(c.r2 == 5.0);
    CHECK(c.epsilon_list == std::vector<double>{1e-2, 1e-3, 1e-4});
    CHECK(c.field_source == FieldSource::pipeline);
    CHECK(c.verify_system == VerifySystem::full);
}

TEST_CASE("config errors name the key or line")
{
    try {
        parse_config("F1star = theta\nF2star = 0\nmode = T1\nr1 = 6\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "r1");
    }
    try {
        parse_config("F1star = theta\n# comment\nbogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(e.key() == "bogus");
    }
    CHECK_THROWS_AS(parse_config("F1star = theta\nF2star = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("F1star = theta\nF1star = t\nF2star = 0\nmode = T1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("F1star = sin(\nF2star = 0\nmode = T1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("F1star = theta\nF2star = 0\nmode = T1\np = 2\nq = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("F1star = theta\nF2star = 0\nmode = T3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("F1star = theta\nF2star = 0\nmode = T1\nquad_tol = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("F1star = theta\nF2star = 0\nmode = T1\nepsilon_list = 1e-3, 1e-2\n"), ConfigError);
}

TEST_CASE("bundled corollary 2 config")
{
    const auto text = bundled_config("corollary2");
    REQUIRE(text);
    const RunConfig c = parse_config(*text);
    CHECK(c.spec.mode == Mode::PrecessionT2);
    CHECK(c.spec.p == 1);
    CHECK(c.spec.q == 1);
    CHECK(c.f1_star() == parse_torque(testing::kCorollary2F1));
    CHECK(c.f2_star() == parse_torque(testing::kCorollary2F2));
    CHECK_FALSE(bundled_config("corollary3"));
}

TEST_CASE("eval on a 3x3 grid")
{
    const fs::path dir = scratch_dir("eval");
    write(dir / "f1.cfg", "F1star = theta\nF2star = 0\nmode = T1\ngrid_points = 3\n");
    REQUIRE(run_cli("eval --config " + (dir / "f1.cfg").string() + " --out " + (dir / "out").string()) == 0);
    const auto rows = data_rows(slurp(dir / "out" / "field.csv"));
    REQUIRE(rows.size() == 9);
    for (const auto& r : rows) {
        REQUIRE(r.size() == 4);
        CHECK(std::abs(r[2] - r[1] / 6) < 1e-12);
        CHECK(std::abs(r[3] - r[0] / 2) < 1e-12);
    }
    const std::string csv = slurp(dir / "out" / "field.csv");
    CHECK(csv.rfind("# ", 0) == 0);
    CHECK(csv.find("quad_tol=") != std::string::npos);
    CHECK(csv.find("alpha1,alpha2,field1,field2") != std::string::npos);
}

TEST_CASE("solve is deterministic and reproduces the printed corollary 1 zero")
{
    const fs::path dir = scratch_dir("solve");
    write(dir / "c1.cfg", std::string(*bundled_config("corollary1")));
    const std::string cfg = (dir / "c1.cfg").string();
    REQUIRE(run_cli("solve --config " + cfg + " --out " + (dir / "a").string()) == 0);
    REQUIRE(run_cli("solve --config " + cfg + " --out " + (dir / "b").string()) == 0);
    const std::string a = slurp(dir / "a" / "zeros.csv");
    CHECK(a == slurp(dir / "b" / "zeros.csv"));
    const auto rows = data_rows(a);
    REQUIRE(rows.size() == 1);
    CHECK(std::abs(rows[0][0] - std::sqrt(3.0) / 3) < 1e-9);
    CHECK(std::abs(rows[0][3] - 1.0 / 384) < 1e-9);
}

TEST_CASE("exit codes and overwrite protection")
{
    const fs::path dir = scratch_dir("exit");
    write(dir / "bad.cfg", "F1star = theta\nF2star = 0\nmode = T1\nr1 = 9\n");
    CHECK(run_cli("solve --config " + (dir / "bad.cfg").string()) == 1);
    CHECK(run_cli("solve --config " + (dir / "missing.cfg").string()) == 1);
    CHECK(run_cli("frobnicate") == 1);

    const std::string out = (dir / "rp").string();
    REQUIRE(run_cli("reproduce corollary2 --out " + out) == 0);
    const auto before = fs::last_write_time(dir / "rp" / "comparison.csv");
    CHECK(run_cli("reproduce corollary2 --out " + out) == 1);
    CHECK(fs::last_write_time(dir / "rp" / "comparison.csv") == before);
    CHECK(run_cli("reproduce corollary2 --force --out " + out) == 0);

    // Verify on the full equations does not reach first order: numerical failure.
    write(dir / "c2.cfg", std::string(*bundled_config("corollary2")));
    CHECK(run_cli("verify --config " + (dir / "c2.cfg").string() + " --out " + (dir / "v").string()) == 2);
    CHECK(fs::exists(dir / "v" / "continuation.csv"));
}

TEST_CASE("reproduce artifacts in memory")
{
    ReproduceSummary summary;
    const Artifacts files = run_reproduce(parse_config(*bundled_config("corollary2")), summary);
    CHECK(summary.printed_matches);
    CHECK(summary.table_written);
    for (const char* name : {"comparison.txt", "comparison.csv", "reference_zeros.csv", "pipeline_zeros.csv",
                             "continuation.csv"})
        CHECK(files.count(name) == 1);
}
