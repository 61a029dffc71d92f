#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "trapspec/config.hpp"
#include "trapspec/errors.hpp"
#include "trapspec/io.hpp"
#include "trapspec/verify.hpp"

using namespace trapspec;
namespace fs = std::filesystem;

namespace {

const char* kIp = R"({
  "trap": "ioffe_pritchard",
  "geometry": {"coil_radius_m": 0.02, "coil_halfspacing_m": 0.03, "coil_current_A": 100,
               "bar_distance_m": 0.01, "bar_current_A": 12.0},
  "particle": {"magnetic_moment_J_per_T": 9.27e-24, "mass_kg": 1.44e-25},
  "parameters": {"max_N": 4}
})";

std::string message_of(const std::string& text) {
    try {
        (void)parse_config(text, "cfg.json");
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("parse a valid config") {
    auto c = parse_config(kIp);
    CHECK(c.trap == TrapKind::IoffePritchard);
    REQUIRE(c.ioffe_pritchard);
    CHECK(c.ioffe_pritchard->bar_current == 12.0);
    CHECK(c.particle->mass == 1.44e-25);
    CHECK(c.parameters["max_N"] == 4);
    CHECK(c.units == UnitMode::SI);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config round trip") {
    auto c = parse_config(kIp);
    auto back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    for (const char* f : {"ioffe_pritchard_rb87.json", "top_rb87.json", "paul_ca40.json", "penning_proton.json"}) {
        auto loaded = load_config(fs::path(TRAPSPEC_CONFIG_DIR) / f);
        CHECK_NOTHROW(loaded.validate());
        CHECK(config_to_json(config_from_json(config_to_json(loaded))) == config_to_json(loaded));
    }
}

TEST_CASE("parse errors carry line and column") {
    const std::string msg = message_of("{\n  \"trap\": \"top\",\n  oops\n}");
    CHECK(msg.find("cfg.json:3:") != std::string::npos);
}

TEST_CASE("missing, unknown and mis-united fields") {
    std::string text = kIp;
    std::string missing = text;
    missing.replace(missing.find("\"coil_current_A\": 100,"), 22, "");
    CHECK(message_of(missing).find("missing field 'geometry.coil_current_A'") != std::string::npos);

    std::string wrong_unit = text;
    wrong_unit.replace(wrong_unit.find("coil_radius_m"), 13, "coil_radius_cm");
    CHECK_THROWS_AS((void)parse_config(wrong_unit), UnitMismatchError);

    std::string unknown = text;
    unknown.replace(unknown.find("\"parameters\""), 12, "\"extra\": 1, \"parameters\"");
    CHECK(message_of(unknown).find("unknown field 'extra'") != std::string::npos);

    CHECK_THROWS_AS((void)parse_config(R"({"trap": "magnetic bottle", "geometry": {}, "particle": {}})"), ConfigError);
    CHECK_THROWS_AS((void)parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS((void)load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("validation of values and output directory") {
    auto c = parse_config(kIp);
    c.output = "/nonexistent-dir/out.csv";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.output.clear();
    c.particle->magnetic_moment = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("units field") {
    std::string text = kIp;
    std::string natural = text;
    natural.replace(natural.find("\"trap\""), 6, "\"units\": \"natural\", \"trap\"");
    CHECK(parse_config(natural).units == UnitMode::Natural);
    std::string bad = text;
    bad.replace(bad.find("\"trap\""), 6, "\"units\": \"cgs\", \"trap\"");
    CHECK_THROWS_AS((void)parse_config(bad), ConfigError);
}

TEST_CASE("format_real keeps 17 significant digits") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_real(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_real(2.0) == "2");
}

TEST_CASE("write_atomic replaces the file whole") {
    const fs::path dir = fs::temp_directory_path() / "trapspec_io_test";
    fs::create_directories(dir);
    const fs::path p = dir / "out.csv";
    write_atomic(p, "first\n");
    write_atomic(p, "second\n");
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second\n");
    CHECK_FALSE(fs::exists(dir / "out.csv.tmp"));
    CHECK_THROWS_AS(write_atomic(dir / "missing" / "x.csv", "x"), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("tolerance scale from the environment") {
    ::setenv("TRAPSPEC_TOL_SCALE", "2.5", 1);
    CHECK(tolerance_scale_from_env() == 2.5);
    ::setenv("TRAPSPEC_TOL_SCALE", "abc", 1);
    CHECK_THROWS_AS((void)tolerance_scale_from_env(), ConfigError);
    ::setenv("TRAPSPEC_TOL_SCALE", "-1", 1);
    CHECK_THROWS_AS((void)tolerance_scale_from_env(), ConfigError);
    ::unsetenv("TRAPSPEC_TOL_SCALE");
    CHECK(tolerance_scale_from_env() == 1.0);
}

TEST_CASE("suite lookup") {
    CHECK(suite_names().size() == 10);
    CHECK_THROWS_AS((void)run_suite("nope", {}), ConfigError);
    auto r = run_suite("combinatorics", {});
    CHECK(r.passed());
    CHECK(r.summary().rfind("[PASS]", 0) == 0);
    CHECK(to_json(r)["passed"] == true);
}
