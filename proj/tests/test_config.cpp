#include <doctest.h>

#include "fbmc/config.hpp"

using namespace fbmc;

TEST_CASE("config parsing") {
    const Config cfg = Config::parse_string(R"(
# comment
top = 3
[waveform]
samples_per_symbol = 128
filter = phydyas   ; trailing comment
[sweep]
gamma_grid = 0, 0.5e-1, 1
[run]
seed = 42
)");
    CHECK(cfg.get_int("top", 0) == 3);
    CHECK(cfg.get_int("waveform.samples_per_symbol", 0) == 128);
    CHECK(cfg.get_string("waveform.filter", "") == "phydyas");
    CHECK(cfg.get_int("run.seed", 0) == 42);
    CHECK(cfg.get_int("run.missing", 17) == 17);

    const auto grid = cfg.get_double_list("sweep.gamma_grid", {});
    REQUIRE(grid.size() == 3);
    CHECK(grid[0] == 0.0);
    CHECK(grid[1] == 0.05);
    CHECK(grid[2] == 1.0);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(Config::parse_string("[oops\nk = v\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("novalue\n"), ConfigError);
    const Config cfg = Config::parse_string("[a]\nx = pear\nl = 1,,2\n");
    CHECK_THROWS_AS(cfg.get_int("a.x", 0), ConfigError);
    CHECK_THROWS_AS(cfg.get_double("a.x", 0.0), ConfigError);
    CHECK_THROWS_AS(cfg.get_double_list("a.l", {}), ConfigError);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent/file.ini"), IoError);
}

TEST_CASE("defaults reproduce the reference setup") {
    const ExperimentSetup s = ExperimentSetup::from_config(Config{});
    CHECK(s.burst.M == 256);
    CHECK(s.burst.eta == 4);
    CHECK(s.burst.N == 14);
    CHECK(s.burst.carriers.size() == 200);
    CHECK(s.burst.V == 6);
    CHECK(s.burst.gamma == 0.1);
    CHECK(s.qam_order == 64);
    CHECK(s.window_rolloff == 64);

    // boundaries: overhead M/4 past the half-symbol reference point
    CHECK(s.burst.burst_end == s.burst.last_center() + 128);
    CHECK(s.burst.burst_begin == s.burst.first_center() - 128);
    CHECK(s.burst.burst_end == 2304);
    CHECK(s.burst.burst_begin == 384);

    // centered band wraps around DC
    CHECK(s.burst.carriers.front() == 156);
    CHECK(s.burst.carriers.back() == 99);

    CHECK(s.filter.length() == 4 * 256 + 1);
}

TEST_CASE("overhead knob moves the boundaries") {
    const Config cfg = Config::parse_string("[shorten]\noverhead = 32\n");
    const ExperimentSetup s = ExperimentSetup::from_config(cfg);
    CHECK(s.burst.burst_end == s.burst.last_center() + 64 + 32);
    CHECK(s.burst.burst_begin == s.burst.first_center() - 64 - 32);
}
