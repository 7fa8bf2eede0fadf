// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sqotto/errors.hpp"
#include "sqotto/scenario.hpp"

using namespace sqotto;

TEST_SUITE("scenario") {

TEST_CASE("units are converted on load")
{
    const Scenario s = parse_scenario(
        "[trap]\n"
        "omega_ax_2pi_khz = 36\n"
        "omega_rad0_2pi_mhz = 0.4\n"
        "taper_angle_deg = 10\n"
        "r0_mm = 1.1\n"
        "a_max_mm = 0.3\n"
        "[baths]\n"
        "t_cold_mk = 2\n"
        "beta_ratio = 0.8\n"
        "[simulation]\n"
        "ensemble = 500\n"
        "r_targets = 0, 0.2, 0.4\n"
        "frequency_ratio = 1.1\n"
        "[calibration]\n"
        "z_anchor_mm = 0.1\n"
        "[run]\n"
        "seed = 99\n");
    CHECK(s.geom.omega_ax == doctest::Approx(2.0 * 3.141592653589793 * 36e3));
    CHECK(s.geom.omega_rad0 == doctest::Approx(2.0 * 3.141592653589793 * 0.4e6));
    CHECK(s.geom.theta == doctest::Approx(10.0 * 3.141592653589793 / 180.0));
    CHECK(s.geom.r0 == doctest::Approx(1.1e-3));
    CHECK(s.geom.a_max == doctest::Approx(0.3e-3));
    CHECK(s.t_cold == doctest::Approx(2e-3));
    CHECK(s.t_hot() == doctest::Approx(2.5e-3));
    CHECK(s.ensemble == 500);
    CHECK(s.r_targets == std::vector<double>{0.0, 0.2, 0.4});
    CHECK(s.frequency_ratio.value() == 1.1);
    CHECK(s.z_anchor == doctest::Approx(1e-4));
    CHECK(s.require_seed() == 99);
}

TEST_CASE("invalid configurations are rejected")
{
    CHECK_THROWS_AS(parse_scenario("[trap]\nomega_ax_hz = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[nonsense]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[simulation]\nensemble = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[trap]\nomega_ax_2pi_khz = -36\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[baths]\nbeta_ratio = 1.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[simulation]\nensemble = 10\n"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.ini"), ConfigError);
    CHECK_THROWS_AS(Scenario{}.require_seed(), ConfigError);
    CHECK_NOTHROW(parse_scenario("[simulation]\n"));
}

TEST_CASE("configuration hash")
{
    const Scenario a = parse_scenario("[run]\nseed = 1\n");
    const Scenario b = parse_scenario("# comment\n[run]\nseed = 1\n[baths]\nbeta_ratio = 0.88\n");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    const Scenario c = parse_scenario("[run]\nseed = 2\n");
    CHECK(a.hash() != c.hash());
    const Scenario d = parse_scenario("[run]\nseed = 1\n[simulation]\nensemble = 1001\n");
    CHECK(a.hash() != d.hash());
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("output directory resolution")
{
    CHECK(resolve_output_dir(std::string("explicit")) == "explicit");
    setenv("SQOTTO_OUTPUT_DIR", "/tmp/from_env", 1);
    CHECK(resolve_output_dir(std::nullopt) == "/tmp/from_env");
    unsetenv("SQOTTO_OUTPUT_DIR");
    CHECK(resolve_output_dir(std::nullopt) == "sqotto_out");
}

TEST_CASE("files load from disk")
{
    const auto path = std::filesystem::temp_directory_path() / "sqotto_scenario_test.ini";
    std::ofstream(path) << "[run]\nseed = 5\n";
    CHECK(load_scenario(path.string()).require_seed() == 5);
    std::filesystem::remove(path);
}

}  // TEST_SUITE
