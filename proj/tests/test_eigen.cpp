#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "growup/eigen_linear.hpp"
#include "growup/error.hpp"

using namespace growup::eigen;

namespace {
const double kL = M_PI * std::sqrt(2.0) / 4.0;

// Independent form of the root condition: tan(L sqrt(1-lam)) = sqrt(lam/(1-lam)).
double tan_identity(double lam, double L) {
    return std::tan(L * std::sqrt(1.0 - lam)) - std::sqrt(lam / (1.0 - lam));
}
}  // namespace

TEST_SUITE("eigen") {

TEST_CASE("h on hand values") {
    CHECK(h(1.0, 3.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h(0.0, 1.0) == doctest::Approx(-std::sin(1.0)).epsilon(1e-15));
    CHECK(std::abs(h(0.5, kL)) < 1e-15);
    CHECK_THROWS_AS(h(-0.1, 1.0), growup::InvalidInput);
    CHECK_THROWS_AS(h(1.1, 1.0), growup::InvalidInput);
}

TEST_CASE("lambda0 at the closed-form point") {
    const double lam = lambda0(kL);
    CHECK(std::abs(lam - 0.5) < 1e-10);
    CHECK(std::abs(tan_identity(lam, kL)) < 1e-9);
}

TEST_CASE("lambda0 is increasing with the right limits") {
    double prev = 0.0;
    for (double L : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double lam = lambda0(L);
        CHECK(std::abs(h(lam, L)) <= 1e-12);
        CHECK(lam > prev);
        prev = lam;
    }
    CHECK(lambda0(0.25) < 0.2);
    CHECK(lambda0(8.0) > 0.9);
    CHECK(lambda0(8.0) < 1.0);
    CHECK(lambda0(1e-3) < 1e-5);
}

TEST_CASE("profile normalisation and C1 sign") {
    const EigenProfile at_root = eigen_profile(0.5, kL);
    CHECK(std::abs(at_root.C1) < 1e-14);
    CHECK(at_root(0.0) == 1.0);
    CHECK(at_root.derivative(0.0) == 0.0);

    const double lam = lambda0(2.0);
    const EigenProfile below = eigen_profile(lam - 1e-3, 2.0);
    CHECK(below.C1 < 0.0);
    REQUIRE(below.vanish_radius);
    CHECK(std::abs(below(*below.vanish_radius)) < 1e-9);

    const EigenProfile above = eigen_profile(lam + 1e-3, 2.0);
    CHECK(above.C1 > 0.0);
    CHECK_FALSE(above.vanish_radius);
    for (double r = 0.0; r <= 100.0; r += 0.5) CHECK(above(r) > 0.0);
    CHECK(above.derivative(50.0) > 0.0);
}

TEST_CASE("C1 matching at r = L") {
    for (double L : {0.5, 1.0, 3.0}) {
        const double lam = 0.5 * (window_lower(L) + 1.0);
        const EigenProfile e = eigen_profile(lam, L);
        const double s = std::sqrt(1.0 - lam), q = std::sqrt(lam);
        const double in_v = std::cos(s * L), in_d = -s * std::sin(s * L);
        const double out_v = e.C1 * std::exp(q * L) + e.C2 * std::exp(-q * L);
        const double out_d = q * (e.C1 * std::exp(q * L) - e.C2 * std::exp(-q * L));
        CHECK(std::abs(in_v - out_v) < 1e-10);
        CHECK(std::abs(in_d - out_d) < 1e-10);
    }
}

TEST_CASE("profile solves the piecewise linear ODE") {
    const double L = 1.3, lam = lambda0(L);
    const EigenProfile e = eigen_profile(lam, L);
    const double hh = 1e-4;
    for (double r : {0.3, 0.9, 2.0, 4.0}) {
        const double d2 = (e(r + hh) - 2.0 * e(r) + e(r - hh)) / (hh * hh);
        const double k = r < L ? -(1.0 - lam) : lam;
        CHECK(std::abs(d2 - k * e(r)) < 1e-6 * std::max(1.0, std::abs(e(r))));
    }
}

TEST_CASE("admissibility") {
    CHECK_THROWS_AS(eigen_profile(0.0, 1.0), growup::InvalidInput);
    CHECK_THROWS_AS(eigen_profile(0.01, 4.0), growup::InvalidInput);
    CHECK_THROWS_AS(lambda0(-1.0), growup::InvalidInput);
}

}  // TEST_SUITE
