#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "growup/error.hpp"
#include "growup/flux_profiles.hpp"

using namespace growup::flux;

TEST_SUITE("flux") {

TEST_CASE("flux condition and energy along integrated profiles") {
    for (double A : {0.3, 1.0, 3.0}) {
        const double m = 2.0, p = 1.0;
        const auto prof = integrate_F(m, p, flux_alpha(m, p), 1.0, A);
        CHECK(std::abs(prof.flux_residual()) <= 1e-10);
        CHECK(energy_nonincreasing(profile_energy(prof)));
    }
}

TEST_CASE("energy threshold decides the sign of E(0)") {
    const double m = 2.0, p = 1.0, K = 1.0, a = flux_alpha(m, p);
    const double thr = energy_threshold(m, p, a, K);
    CHECK(thr == doctest::Approx(std::pow(K * K * (m + 1.0) / (2.0 * a * m), 1.0 / (m + 1.0 - 2.0 * p))));
    for (double A : {0.9 * thr, 1.1 * thr}) {
        const auto prof = integrate_F(m, p, a, K, A);
        const double E0 = profile_energy(prof).front().E;
        const double oracle = 0.5 * K * K * std::pow(A, 2.0 * p) - a * m / (m + 1.0) * std::pow(A, m + 1.0);
        CHECK(E0 == doctest::Approx(oracle).epsilon(1e-10));
        CHECK((E0 < 0.0) == (A > thr));
    }
}

TEST_CASE("above the threshold: positive minimum obeying the lower bounds") {
    const double m = 2.0, p = 1.0, K = 1.0, a = flux_alpha(m, p);
    const double A = 3.0;
    const auto prof = integrate_F(m, p, a, K, A);
    CHECK(prof.classification == FluxClass::PositiveMinimumUnbounded);
    REQUIRE(prof.F_min);
    const double weak = A * std::pow(1.0 - 2.0 * K * K * (m + 1.0) / (a * m) * std::pow(A, 2.0 * p - m - 1.0),
                                     1.0 / (m + 1.0));
    CHECK(*prof.F_min >= weak);
    CHECK(*prof.F_min >= minimum_lower_bound(m, p, a, K, A, 0.5) * (1.0 - 1e-8));
    CHECK(minimum_lower_bound(m, p, a, K, A, 2.0) == doctest::Approx(weak));
}

TEST_CASE("no flux: minimum at the origin") {
    const auto prof = integrate_F(2.0, 1.0, 1.0, 0.0, 1.0);
    CHECK(prof.classification == FluxClass::PositiveMinimumUnbounded);
    CHECK(prof.samples.front().s == 0.0);
    REQUIRE(prof.xi_min);
    CHECK(*prof.xi_min < 1e-6);
}

TEST_CASE("constant profile energy") {
    FluxProfile flat;
    flat.m = 2.0;
    flat.p = 1.0;
    flat.rate = 1.0;
    flat.samples = {{0.0, 1.5, 0.0}, {1.0, 1.5, 0.0}};
    for (const auto& e : profile_energy(flat)) CHECK(e.E == doctest::Approx(-(2.0 / 3.0) * std::pow(1.5, 3.0)));
}

TEST_CASE("explicit subsolution") {
    for (double m : {0.5, 2.0, 3.0}) {
        const double p = 0.5 * m, K = 1.3, A = 0.05;
        const auto sub = explicit_subsolution(m, p, K, A);
        const double g = m <= 1.0 ? 2.0 / m : 1.0 / (m - 1.0);
        CHECK(sub.gamma == doctest::Approx(g));
        // -(F^m)'(0) = m g B A^(m g - 1) must equal K A^(p g).
        CHECK(sub.B == doctest::Approx(K * std::pow(A, p * g - m * g + 1.0) / (m * g)).epsilon(1e-14));
        CHECK(std::abs(sub.flux_residual) < 1e-10);
        CHECK(sub.satisfied);
        CHECK(sub.max_violation <= 0.0);
        CHECK(sub.F(sub.support_edge * 1.01) == 0.0);
    }
    // The construction needs A small against K.
    CHECK_FALSE(explicit_subsolution(2.0, 1.0, 0.3, 0.8).satisfied);
}

TEST_CASE("beta* shooting for m = 3") {
    const auto r = shoot_beta_star(3.0);
    CHECK(r.p == 2.0);
    CHECK(r.hi - r.lo <= 1e-6);
    CHECK(r.monotone);
    CHECK(r.beta_star == doctest::Approx(0.4566521645).epsilon(1e-5));
    CHECK(integrate_G(3.0, 2.0 * r.beta_star).classification == FluxClass::PositiveMinimumUnbounded);
    CHECK(integrate_G(3.0, 0.5 * r.beta_star).classification == FluxClass::CrossesZero);
    CHECK(r.critical_profile.classification == FluxClass::CompactSupport);
    CHECK(r.C_m == doctest::Approx(4.0 / 24.0));
    CHECK(r.gradient_bound_ratio >= 1.0);
    for (const auto& s : r.history) {
        const auto g = integrate_G(3.0, s.beta);
        CHECK(std::abs(g.flux_residual()) <= 1e-10);
        CHECK(energy_nonincreasing(profile_energy(g)));
    }
}

TEST_CASE("rescaling F(xi) = A G(K A^(p-m) xi)") {
    const double m = 3.0, p = 2.0, K = 1.5, A = 0.7;
    for (double beta : {0.3, 1.0}) {
        const FluxProfile G = integrate_G(m, beta);
        const FluxProfile F = integrate_F(m, p, beta * K * K, K, A);
        CHECK(F.classification == G.classification);
        const double k = K * std::pow(A, p - m);
        const double xi_end = std::min(F.xi_end, G.xi_end / k);
        for (int i = 0; i <= 50; ++i) {
            const double xi = 0.98 * xi_end * i / 50.0;
            const double g = A * G.at(k * xi).F;
            CHECK(std::abs(F.at(xi).F - g) <= 1e-6 * std::abs(g) + 1e-12);
        }
    }
}

TEST_CASE("matched w across x = L") {
    const double m = 2.0, p = 1.0, L = 1.0, A = 3.0, a = flux_alpha(m, p);
    for (double K : {0.5, 2.0}) {
        const FieldFn V = similarity_field(integrate_F(m, p, a, K, A));
        const auto d = matched_w_diagnostics(V, m, p, K, L, 10.0);
        const double scale = K * std::pow(V(0.0, 10.0), p);
        CHECK(d.jump_value <= 1e-12 * V(0.0, 10.0));
        CHECK(d.jump_slope <= 1e-5 * scale);
        const auto late = matched_w_diagnostics(V, m, p, K, L, 100.0);
        if (K < L) CHECK(late.max_residual <= 0.0);
        else CHECK(late.min_residual >= 0.0);
    }
}

TEST_CASE("pk subsolution") {
    CHECK(pk_subsolution_check(0.5, 2.0));
    CHECK_FALSE(pk_subsolution_check(0.5, 1e-3));
    CHECK_THROWS_AS(pk_subsolution_check(2.0, 1.0), growup::InvalidInput);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(integrate_F(1.0, 1.5, 1.0, 1.0, 1.0), growup::InvalidInput);
    CHECK_THROWS_AS(integrate_F(2.0, 1.0, -1.0, 1.0, 1.0), growup::InvalidInput);
    CHECK_THROWS_AS(shoot_beta_star(0.5), growup::InvalidInput);
}

}  // TEST_SUITE
