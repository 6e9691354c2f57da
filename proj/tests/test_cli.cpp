#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "growup/cli.hpp"
#include "growup/io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "growup");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = growup::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("growup_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exponents") {
    auto r = cli({"exponents", "--m", "1", "--p", "1", "--L", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("regime = GrowUpCritical/m=1") != std::string::npos);
    r = cli({"exponents", "--m", "3", "--p", "2", "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["p0"] == 2.0);
    CHECK(j["pF"] == 4.0);
    CHECK(j["regime"] == "GrowUpCritical/m>1");
    CHECK(cli({"exponents", "--m", "0", "--p", "1"}).code == 1);
    CHECK(cli({"exponents", "--m", "abc", "--p", "1"}).code == 1);
}

TEST_CASE("usage errors and help") {
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"simulate"}).code == 1);
}

TEST_CASE("eigen writes a profile") {
    const fs::path d = scratch("eigen");
    const auto r = cli({"eigen", "--L", "1.1107207345", "--out", d.string()});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("lambda0 = 0.4999999", 0) == 0);
    const auto j = nlohmann::json::parse(growup::io::read_file(d / "report.json"));
    CHECK(std::abs(j["lambda0"].get<double>() - 0.5) < 1e-9);
    CHECK(fs::exists(d / "profile.csv"));
    fs::remove_all(d);
}

TEST_CASE("shoot-beta prints a record") {
    const auto r = cli({"shoot-beta", "--m", "3"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["beta_star"].get<double>() == doctest::Approx(0.4566521645).epsilon(1e-5));
    CHECK(j["bracket"].get<double>() <= 1e-6);
    CHECK(cli({"shoot-beta", "--m", "0.5"}).code == 1);
}

TEST_CASE("profile kinds") {
    const fs::path d = scratch("profile");
    const std::vector<std::vector<std::string>> ok{
        {"--kind", "selfsim", "--m", "0.5", "--p", "0.75"},
        {"--kind", "selfsim", "--m", "0.5", "--alpha", "1", "--beta", "0.25"},
        {"--kind", "separable", "--m", "0.5", "--lambda", "0.2", "--L", "1"},
        {"--kind", "lambda-star", "--m", "0.5", "--L", "1"},
        {"--kind", "compact", "--m", "0.5", "--p", "1", "--L", "1"},
        {"--kind", "flux", "--m", "2", "--p", "1", "--K", "1", "--A", "3"},
        {"--kind", "subsolution", "--m", "2", "--p", "1", "--K", "1", "--A", "1"},
        {"--kind", "pk", "--m", "0.5", "--B", "2"},
    };
    for (auto args : ok) {
        args.insert(args.begin(), "profile");
        args.push_back("--out");
        args.push_back(d.string());
        CAPTURE(args[2]);
        const auto r = cli(args);
        CHECK(r.code == 0);
        CHECK(fs::exists(d / "report.json"));
    }
    CHECK(cli({"profile", "--kind", "nosuch"}).code == 1);
    CHECK(cli({"profile", "--kind", "compact", "--m", "0.5"}).code == 1);
    CHECK(cli({"profile", "--kind", "compact", "--m", "0.5", "--p", "0.5", "--L", "1"}).code == 1);
    fs::remove_all(d);
}

TEST_CASE("simulate and verdict: power grow-up for m = 2, p = 1") {
    const fs::path d = scratch("power");
    auto cfg = growup::io::read_config(CONFIG_DIR "/power.cfg");
    cfg.output = (d / "run").string();
    const fs::path cfg_path = d / "power.cfg";
    growup::io::write_file_atomic(cfg_path, growup::io::format_config(cfg));

    auto r = cli({"simulate", "--config", cfg_path.string(), "--plot-script"});
    REQUIRE(r.code == 0);
    for (const char* f : {"series.csv", "energy.csv", "plot.csv", "plot.gp", "report.json", "config.cfg"}) {
        CHECK(fs::exists(d / "run" / f));
    }
    const auto rep = nlohmann::json::parse(growup::io::read_file(d / "run" / "report.json"));
    CHECK(rep["run"]["status"] == "reached-T");
    CHECK(rep["run"]["energy_nonincreasing"] == true);
    CHECK(rep["run"]["flat_bound_ok"] == true);

    r = cli({"verdict", "--config", cfg_path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict = PASS") != std::string::npos);
    const auto v = nlohmann::json::parse(growup::io::read_file(d / "run" / "verdict.json"));
    CHECK(v["pass"] == true);
    CHECK(v["probes"].size() == 3);
    fs::remove_all(d);
}

TEST_CASE("failed runs leave no partial output") {
    const fs::path d = scratch("bad");
    growup::io::ExperimentConfig cfg;
    cfg.output = (d / "run").string();
    cfg.probes = {100.0};
    growup::io::write_file_atomic(d / "bad.cfg", growup::io::format_config(cfg));
    CHECK(cli({"simulate", "--config", (d / "bad.cfg").string()}).code == 1);
    CHECK_FALSE(fs::exists(d / "run" / "series.csv"));
    CHECK(cli({"simulate", "--config", (d / "missing.cfg").string()}).code == 1);
    cfg.probes = {0.0};
    growup::io::write_file_atomic(d / "good.cfg", growup::io::format_config(cfg));
    CHECK(cli({"verdict", "--config", (d / "good.cfg").string()}).code == 1);  // no series yet
    fs::remove_all(d);
}

TEST_CASE("sweep") {
    const fs::path d = scratch("sweep");
    auto r = cli({"sweep", "--m", "0.5,1,2", "--p", "0.5,1,1.5,2.5", "--L", "1", "--out", d.string()});
    CHECK(r.code == 0);
    const std::string csv = growup::io::read_file(d / "regime_map.csv");
    CHECK(count_lines(csv) == 13);
    CHECK(csv.rfind("m,p,p0,pF,regime,alpha,empirical,error\n", 0) == 0);
    CHECK(csv.find("1,1.5,1,2,BlowUpBand") != std::string::npos);

    r = cli({"sweep", "--m", "2", "--p", "1.4"});
    CHECK(r.out.find(",GrowUpSubcritical,") != std::string::npos);

    r = cli({"sweep"});
    CHECK(r.code == 0);
    CHECK(r.out == "m,p,p0,pF,regime,alpha,empirical,error\n");

    // Bad cells are recorded and the sweep continues.
    r = cli({"sweep", "--m", "-1,1", "--p", "1", "--confirm", "2", "--workers", "2"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 3);
    CHECK(r.out.find("m must be positive") != std::string::npos);
    CHECK(r.out.find("1,1,1,2,GrowUpCritical/m=1,exponential,growing,") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("identical invocations give identical bytes") {
    const fs::path d = scratch("det");
    auto cfg = growup::io::read_config(CONFIG_DIR "/fast.cfg");
    cfg.T_max = 5.0;
    cfg.fit.window_lo.reset();
    cfg.fit.window_hi.reset();
    cfg.output = (d / "run").string();
    growup::io::write_file_atomic(d / "c.cfg", growup::io::format_config(cfg));
    std::vector<std::string> first;
    for (int k = 0; k < 2; ++k) {
        REQUIRE(cli({"simulate", "--config", (d / "c.cfg").string()}).code == 0);
        std::string all;
        for (const char* f : {"series.csv", "energy.csv", "plot.csv", "report.json"}) {
            all += growup::io::read_file(d / "run" / f);
        }
        first.push_back(all);
    }
    CHECK(first[0] == first[1]);
    fs::remove_all(d);
}

}  // TEST_SUITE
