#include <cmath>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "growup/error.hpp"
#include "growup/io.hpp"

using namespace growup;
using namespace growup::io;
namespace fs = std::filesystem;

TEST_SUITE("io") {

TEST_CASE("doubles round trip") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, M_PI}) CHECK(parse_double(format_double(v), "v") == v);
    CHECK(format_double(1.0) == "1");
    CHECK_THROWS_AS(parse_double("1.0x", "v"), InvalidInput);
    CHECK_THROWS_AS(parse_double("", "v"), InvalidInput);
}

TEST_CASE("config round trip") {
    ExperimentConfig c;
    c.params = {0.5, 0.75, 1.0, InitialData::power_tail(1.0)};
    c.grid = {4.01, 401, 1e5, 1.03};
    c.T_max = 1e6;
    c.u_cap = 1e9;
    c.probes = {0.0, 0.5, 2.0};
    c.scheme = pde::Scheme::Implicit;
    c.change_floor = 1e-4;
    c.check_domain = true;
    c.fit.window_lo = 1e4;
    c.fit.tol.power = 0.2;
    c.output = "runs/a b";
    const ExperimentConfig back = parse_config(format_config(c));
    CHECK(back == c);
    CHECK(format_config(back) == format_config(c));
}

TEST_CASE("config errors carry the line") {
    try {
        parse_config("[problem]\nm = 1\nq = 2\n");
        FAIL("expected an error");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[nosuch]\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("m = 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[run]\nreaction = maybe\n"), InvalidInput);
    const auto c = parse_config("# comment\n[problem]\nm = 2 # trailing\n");
    CHECK(c.params.m == 2.0);
}

TEST_CASE("validation happens before any run") {
    ExperimentConfig c;
    c.params.init = InitialData::plateau(1.0, 0.2, 0.1);
    CHECK_THROWS_AS(validate_config(c), InvalidInput);
    c = ExperimentConfig{};
    c.probes = {50.0};
    CHECK_THROWS_AS(validate_config(c), InvalidInput);
    c = ExperimentConfig{};
    c.u_cap = 10.0;
    CHECK_THROWS_AS(validate_config(c), InvalidInput);
    c = ExperimentConfig{};
    c.params.m = 0.0;
    CHECK_THROWS_AS(validate_config(c), InvalidInput);
    CHECK_NOTHROW(validate_config(ExperimentConfig{}));
}

TEST_CASE("series csv round trip") {
    pde::TimeSeries s;
    s.probes = {0.0, 2.0};
    s.t = {0.0, 0.5, 1.0 / 3.0};
    s.values = {{1.0, 0.1}, {1.25, 0.2}, {M_PI, 1e-20}};
    s.max_u = {1.0, 1.25, M_PI};
    s.energy = {-1.0, -2.0, -3.0 / 7.0};
    const pde::TimeSeries back = parse_series_csv(series_csv(s));
    CHECK(back.probes == s.probes);
    CHECK(back.t == s.t);
    CHECK(back.values == s.values);
    CHECK(back.max_u == s.max_u);
    CHECK(back.energy == s.energy);
    CHECK(plot_csv(s).find("log_t") != std::string::npos);
    CHECK_THROWS_AS(parse_series_csv("a,b\n"), InvalidInput);
}

TEST_CASE("output sessions remove partial files") {
    const fs::path dir = fs::temp_directory_path() / "growup_io_session";
    fs::remove_all(dir);
    {
        OutputSession s(dir);
        s.write("a.txt", "x");
        CHECK(fs::exists(dir / "a.txt"));
    }
    CHECK_FALSE(fs::exists(dir / "a.txt"));
    {
        OutputSession s(dir);
        s.write("b.txt", "y");
        s.commit();
    }
    CHECK(read_file(dir / "b.txt") == "y");
    fs::remove_all(dir);
}

}  // TEST_SUITE
