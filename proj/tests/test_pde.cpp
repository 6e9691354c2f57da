#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "growup/error.hpp"
#include "growup/pde_solver.hpp"
#include "growup/rates.hpp"
#include "oracles.hpp"

using namespace growup;
using namespace growup::pde;

namespace {

ProblemParams params(double m, double p, double L, InitialData init) { return {m, p, L, init}; }

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_SUITE("pde") {

TEST_CASE("grid layout") {
    const Grid g = make_grid(GridSpec::aligned(1.0, 4.0, 10), 1.0);
    CHECK(g.size() % 2 == 1);
    CHECK(g.dx == doctest::Approx(0.1));
    CHECK(g.x[g.center] == 0.0);
    CHECK(g.wall >= 4.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.x[i] == -g.x[g.size() - 1 - i]);
        const double ax = std::abs(g.x[i]);
        if (ax < 1.0 - 1e-9) CHECK(g.a[i] == 1.0);
        else if (ax > 1.0 + 1e-9) CHECK(g.a[i] == 0.0);
        else CHECK(g.a[i] == 0.5);
    }
    CHECK_THROWS_AS(make_grid(GridSpec{8.0, 320}, 1.0), InvalidInput);
    CHECK_THROWS_AS(make_grid(GridSpec{8.0, 321}, 0.33), InvalidInput);
    CHECK_THROWS_AS(make_grid(GridSpec{0.5, 11}, 1.0), InvalidInput);

    const Grid s = make_grid(GridSpec::aligned(1.0, 4.0, 10, 100.0, 1.05), 1.0);
    CHECK(s.wall >= 100.0);
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.x[i] > s.x[i - 1]);
    CHECK(GridSpec::aligned(1.0, 4.0, 10).doubled().n == 2 * GridSpec::aligned(1.0, 4.0, 10).n + 1);
    CHECK(s.interpolate(std::vector<double>(s.size(), 2.0), 0.37) == 2.0);
}

TEST_CASE("output times") {
    const auto t = output_times(1.0, 0.1, 2.0);
    REQUIRE(t.size() == 6);
    CHECK(t[0] == 0.0);
    CHECK(t[1] == 0.1);
    CHECK(t[4] == doctest::Approx(0.8));
    CHECK(t[5] == 1.0);
}

TEST_CASE("flat far field is unchanged by a step") {
    for (Scheme sc : {Scheme::Explicit, Scheme::Implicit}) {
        const auto prm = params(2.0, 0.5, 1.0, InitialData::plateau(1.0, 6.0, 1.0));
        const Grid g = make_grid(GridSpec::aligned(1.0, 8.0, 10), 1.0);
        StepControl c;
        c.scheme = sc;
        SolverState s = initial_state(prm, g, c);
        const std::size_t probe = g.center + 25;  // x = 2.5
        step(s, prm, g, c, 1e-3);
        CHECK(s.u[probe] == 1.0);
        CHECK(s.u[g.center] > 1.0);
    }
}

TEST_CASE("energy oracles") {
    const auto prm = params(2.0, 0.5, 1.0, InitialData::constant(1.0));
    const Grid g = make_grid(GridSpec::aligned(1.0, 4.0, 10), 1.0);
    CHECK(discrete_energy(std::vector<double>(g.size(), 0.0), prm, g) == 0.0);
    // Constant c: the only gradient sits on the two wall faces, half a cell from the centres.
    const double c = 1.7, m = prm.m, p = prm.p;
    const double expected = 2.0 * std::pow(c, 2.0 * m) / g.dx - m / (p + m) * std::pow(c, p + m) * 2.0;
    CHECK(discrete_energy(std::vector<double>(g.size(), c), prm, g) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gaussian heat kernel, second order") {
    const auto prm = params(1.0, 1.0, 1.0, InitialData::gaussian(1.0, 1.0));
    double prev = 0.0;
    for (std::size_t cpl : {5u, 10u, 20u}) {
        const Grid g = make_grid(GridSpec::aligned(1.0, 24.0, cpl), 1.0);
        const auto u = oracle::diffuse(prm, g, [](double x) { return oracle::gaussian(1.0, 1.0, x, 0.0); }, 0.0, 1.0);
        const double e = oracle::linf(g, u, [](double x) { return oracle::gaussian(1.0, 1.0, x, 1.0); },
                                      [](double v) { return v; });
        if (prev > 0.0) {
            CHECK(prev / e > 3.2);
            CHECK(prev / e < 4.8);
        }
        prev = e;
    }
}

TEST_CASE("barenblatt m = 2 in w = u^2") {
    const auto prm = params(2.0, 1.0, 1.0, InitialData::constant(1.0));
    std::vector<double> err;
    for (std::size_t cpl : {10u, 20u}) {
        const Grid g = make_grid(GridSpec::aligned(1.0, 8.0, cpl), 1.0);
        const auto u = oracle::diffuse(prm, g, [](double x) { return oracle::barenblatt_m2(x, 1.0); }, 1.0, 2.0);
        err.push_back(oracle::linf(g, u, [](double x) { return oracle::barenblatt_m2(x, 2.0); },
                                   [](double v) { return v * v; }));
        for (double v : u) CHECK(v >= 0.0);
    }
    CHECK(err[0] / err[1] > 3.2);
    CHECK(err[0] / err[1] < 4.8);
}

TEST_CASE("positivity, symmetry and monotone profiles") {
    for (Scheme sc : {Scheme::Explicit, Scheme::Implicit}) {
        for (auto [m, p] : {std::pair{0.5, 0.75}, std::pair{2.0, 1.0}, std::pair{1.0, 1.0}}) {
            CAPTURE(m);
            const auto prm = params(m, p, 1.0, InitialData::gaussian(1.0, 1.0));
            const Grid g = make_grid(GridSpec::aligned(1.0, 4.0, 10), 1.0);
            RunOptions o;
            o.T_max = 2.0;
            o.keep_profiles = true;
            o.control.scheme = sc;
            const RunResult r = run(prm, g, o);
            CHECK(r.final_state.status == Status::ReachedT);
            for (const auto& u : r.profiles) {
                for (std::size_t i = 0; i < g.size(); ++i) {
                    CHECK(u[i] >= 0.0);
                    CHECK(std::abs(u[i] - u[g.size() - 1 - i]) <= 1e-12 * max_of(u));
                }
                for (std::size_t i = g.center + 1; i < g.size(); ++i) CHECK(u[i] <= u[i - 1] + 1e-10);
            }
            CHECK(energy_nonincreasing(r.series));
            CHECK(rates::check_flat_bound(r.series, r.series.max_u.front(), p).ok);
        }
    }
}

TEST_CASE("explicit and implicit schemes agree") {
    const auto prm = params(2.0, 1.0, 1.0, InitialData::gaussian(1.0, 1.0));
    const Grid g = make_grid(GridSpec::aligned(1.0, 4.0, 10), 1.0);
    RunOptions o;
    o.T_max = 1.0;
    const double ue = run(prm, g, o).series.values.back()[0];
    o.control.scheme = Scheme::Implicit;
    o.control.target_change = 0.005;
    const double ui = run(prm, g, o).series.values.back()[0];
    CHECK(ui == doctest::Approx(ue).epsilon(0.01));
}

TEST_CASE("comparison principle") {
    const Grid g = make_grid(GridSpec::aligned(1.0, 4.0, 10), 1.0);
    RunOptions o;
    o.T_max = 2.0;
    o.keep_profiles = true;
    const RunResult a = run(params(1.0, 1.0, 1.0, InitialData::gaussian(0.5, 1.0)), g, o);
    const RunResult b = run(params(1.0, 1.0, 1.0, InitialData::gaussian(1.0, 1.0)), g, o);
    CHECK(comparison_probe(a, a));
    CHECK(comparison_probe(a, b));
    CHECK_FALSE(comparison_probe(b, a));
}

TEST_CASE("regime statuses") {
    const Grid g = make_grid(GridSpec::aligned(1.0, 8.0, 10), 1.0);
    RunOptions o;
    o.T_max = 50.0;
    const RunResult blow = run(params(1.0, 1.5, 1.0, InitialData::gaussian(1.0, 1.0)), g, o);
    CHECK(blow.final_state.status == Status::BlowUpDetected);
    REQUIRE(blow.cap_time);
    CHECK(*blow.cap_time < 50.0);
    CHECK(blow.series.max_u.back() >= o.u_cap);

    o.T_max = 100.0;
    const RunResult bounded = run(params(1.0, 3.0, 1.0, InitialData::gaussian(1e-2, 1.0)), g, o);
    CHECK(bounded.final_state.status == Status::ReachedT);
    CHECK(max_of(bounded.series.max_u) < 1.0);

    o.T_max = 20.0;
    o.control.scheme = Scheme::Implicit;
    const RunResult grow = run(params(1.0, 0.5, 1.0, InitialData::gaussian(1.0, 1.0)), g, o);
    CHECK(grow.final_state.status == Status::ReachedT);
    CHECK(grow.series.max_u.back() > 5.0);
    // Diffusion wins briefly before the reaction takes over.
    for (std::size_t k = 1; k < grow.series.rows(); ++k) {
        if (grow.series.t[k - 1] >= 5.0) CHECK(grow.series.max_u[k] >= grow.series.max_u[k - 1]);
    }
}

TEST_CASE("run preconditions") {
    const Grid g = make_grid(GridSpec::aligned(1.0, 4.0, 10), 1.0);
    RunOptions o;
    o.u_cap = 10.0;
    CHECK_THROWS_AS(run(params(1.0, 1.0, 1.0, InitialData::gaussian(1.0, 1.0)), g, o), InvalidInput);
    o.u_cap = 1e6;
    o.probes = {100.0};
    CHECK_THROWS_AS(run(params(1.0, 1.0, 1.0, InitialData::gaussian(1.0, 1.0)), g, o), InvalidInput);
    CHECK_THROWS_AS(run(params(1.0, 1.0, 1.0, InitialData::plateau(1.0, 0.2, 0.1)), g, RunOptions{}), InvalidInput);
}

}  // TEST_SUITE
