#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "growup/core.hpp"
#include "growup/error.hpp"

using namespace growup;

TEST_SUITE("core") {

TEST_CASE("p0 and pF on hand values") {
    CHECK(compute_p0(1.0) == 1.0);
    CHECK(compute_p0(3.0) == 2.0);
    CHECK(compute_p0(0.2) == 1.0);
    CHECK(compute_pF(1.0) == 2.0);
    CHECK(compute_pF(2.0) == 3.0);
    CHECK(compute_pF(1e-9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(compute_p0(0.0), InvalidInput);
    CHECK_THROWS_AS(compute_pF(-1.0), InvalidInput);
}

TEST_CASE("p0 < pF for every m") {
    for (double m : {1e-6, 0.1, 0.5, 1.0, 1.7, 3.0, 50.0}) CHECK(compute_p0(m) < compute_pF(m));
}

TEST_CASE("alpha branches") {
    CHECK(compute_alpha(2.0, 0.5).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(compute_alpha(0.5, 0.5).value == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(compute_alpha(0.5, 0.75).value == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_FALSE(compute_alpha(1.0, 1.0).is_power());
    CHECK_FALSE(compute_alpha(3.0, 2.0).is_power());
    CHECK_THROWS_AS(compute_alpha(1.0, 1.5), InvalidInput);
}

TEST_CASE("alpha is continuous across p = m and equals the min where both branches are positive") {
    for (double m : {0.3, 0.5, 0.8}) {
        const double below = compute_alpha(m, m - 1e-9).value;
        const double above = compute_alpha(m, m + 1e-9).value;
        CHECK(std::abs(below - above) < 1e-6);
    }
    for (double m : {0.5, 2.0}) {
        for (double p : {0.1, 0.3, 0.45}) {
            const double a = 1.0 / (1.0 - p), b = 1.0 / (m + 1.0 - 2.0 * p);
            CHECK(compute_alpha(m, p).value == doctest::Approx(std::min(a, b)).epsilon(1e-14));
        }
    }
}

TEST_CASE("closure choices: gamma = 0 above m, gamma = beta below m") {
    for (double m : {0.4, 0.7, 2.0}) {
        for (double p : {0.2, 0.5, 0.9}) {
            if (p >= compute_p0(m) || std::abs(p - m) < 1e-9) continue;
            const ExponentReport r = exponent_report(m, p, 1.0);
            REQUIRE(r.beta);
            REQUIRE(r.gamma);
            if (p > m) CHECK(std::abs(*r.gamma) < 1e-12);
            else CHECK(std::abs(*r.gamma - *r.beta) < 1e-12);
        }
    }
}

TEST_CASE("regimes") {
    CHECK(classify_regime(1.0, 1.0).name() == "GrowUpCritical/m=1");
    CHECK(classify_regime(3.0, 2.0).name() == "GrowUpCritical/m>1");
    CHECK(classify_regime(0.5, 1.0).name() == "GrowUpCritical/m<1");
    CHECK(classify_regime(1.0, 1.5).tag == RegimeTag::BlowUpBand);
    CHECK(classify_regime(1.0, 2.0).tag == RegimeTag::BlowUpBand);
    CHECK(classify_regime(1.0, 2.0 + 1e-9).tag == RegimeTag::Competitive);
    CHECK(classify_regime(2.0, 1.4).tag == RegimeTag::GrowUpSubcritical);
    CHECK(classify_regime(2.0, 1.5 + 5e-13).tag == RegimeTag::GrowUpCritical);
}

TEST_CASE("predicted rates") {
    const PredictedRates a = predicted_rates(2.0, 1.0, 1.0);
    CHECK(a.inside.form == RateForm::Power);
    CHECK(a.inside.value == doctest::Approx(1.0));
    CHECK(a.outside.value == doctest::Approx(1.0));

    const PredictedRates b = predicted_rates(0.5, 0.75, 1.0);
    CHECK(b.inside.value == doctest::Approx(4.0));
    CHECK(b.outside.form == RateForm::Power);
    CHECK(b.outside.value == doctest::Approx(2.0));

    const PredictedRates c = predicted_rates(1.0, 1.0, M_PI * std::sqrt(2.0) / 4.0);
    CHECK(c.inside.form != RateForm::Power);
    CHECK(c.inside.value == doctest::Approx(0.5).epsilon(1e-10));

    const PredictedRates d = predicted_rates(0.5, 1.0, 1.0);
    CHECK(d.inside.value == doctest::Approx(1.0));

    CHECK_THROWS_AS(predicted_rates(1.0, 1.5, 1.0), InvalidInput);
}

TEST_CASE("initial data") {
    ProblemParams prm;
    prm.init = InitialData::plateau(1.0, 1e300, 1.0);
    std::vector<double> x{-3.0, -1.0, 0.0, 2.0, 10.0};
    for (double v : build_initial_data(prm, x)) CHECK(v == 1.0);

    prm.m = 0.5;
    prm.p = 0.75;
    prm.init = InitialData::power_tail(1.0);
    for (double xq : {1e2, 1e3, 1e4}) {
        const double u = initial_value(prm.init, 0.5, xq);
        CHECK(u * std::pow(xq, 4.0) == doctest::Approx(1.0).epsilon(1e-3));
    }

    prm.m = 1.0;
    prm.init = InitialData::gaussian(2.5, 1.0);
    std::vector<double> grid;
    for (int i = -50; i <= 50; ++i) grid.push_back(0.1 * i);
    const auto g = build_initial_data(prm, grid);
    CHECK(*std::max_element(g.begin(), g.end()) == 2.5);
    for (double v : g) CHECK(v >= 0.0);

    prm.init = InitialData::plateau(1.0, 0.2, 0.1);
    CHECK_THROWS_AS(build_initial_data(prm, grid), InvalidInput);
}

}  // TEST_SUITE
