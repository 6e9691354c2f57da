#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "growup/error.hpp"
#include "growup/simd/kernels.hpp"

using namespace growup::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(std::abs(a), std::abs(b)); }

void compare(const Kernels& ref, const Kernels& k) {
    std::mt19937_64 rng(12345);
    // Odd sizes exercise the remainder loops.
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 17u, 321u, 1000u}) {
        const auto wp = random_vec(rng, n + 2, 0.0, 3.0);
        const auto cp = random_vec(rng, n + 2, 0.1, 3.0);
        const auto idc = random_vec(rng, n + 1, 1.0, 50.0);
        const auto iw = random_vec(rng, n, 1.0, 50.0);
        const auto u = random_vec(rng, n, 0.0, 2.0);
        const auto r = random_vec(rng, n, 0.0, 2.0);
        const auto a = random_vec(rng, n, 0.0, 1.0);
        const auto b = random_vec(rng, n, -1.0, 1.0);
        std::vector<double> o1(n), o2(n), l1(n), l2(n), d1(n), d2(n), u1(n), u2(n);

        ref.flux_divergence(wp.data(), idc.data(), iw.data(), o1.data(), n);
        k.flux_divergence(wp.data(), idc.data(), iw.data(), o2.data(), n);
        CHECK(bit_equal(o1, o2));

        ref.euler_update(u.data(), o1.data(), a.data(), r.data(), 1e-3, d1.data(), n);
        k.euler_update(u.data(), o1.data(), a.data(), r.data(), 1e-3, d2.data(), n);
        CHECK(bit_equal(d1, d2));

        ref.implicit_residual(u.data(), r.data(), o1.data(), 0.7, d1.data(), n);
        k.implicit_residual(u.data(), r.data(), o1.data(), 0.7, d2.data(), n);
        CHECK(bit_equal(d1, d2));

        ref.assemble_tridiag(u.data(), cp.data(), idc.data(), iw.data(), 0.3, l1.data(), d1.data(), u1.data(), n);
        k.assemble_tridiag(u.data(), cp.data(), idc.data(), iw.data(), 0.3, l2.data(), d2.data(), u2.data(), n);
        CHECK(bit_equal(l1, l2));
        CHECK(bit_equal(d1, d2));
        CHECK(bit_equal(u1, u2));

        CHECK(ref.max_value(b.data(), n) == k.max_value(b.data(), n));
        CHECK(ref.min_value(b.data(), n) == k.min_value(b.data(), n));
        CHECK(ref.max_abs(b.data(), n) == k.max_abs(b.data(), n));
        CHECK(ref.max_rel_change(u.data(), r.data(), 1e-6, n) == k.max_rel_change(u.data(), r.data(), 1e-6, n));
        CHECK(close(ref.gradient_energy(wp.data(), idc.data(), n), k.gradient_energy(wp.data(), idc.data(), n)));
        CHECK(close(ref.triple_dot(a.data(), u.data(), r.data(), n), k.triple_dot(a.data(), u.data(), r.data(), n)));
    }
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("scalar kernels on hand values") {
    const Kernels& s = scalar_kernels();
    // w = (0, 1, 4, 9, 0): unit spacing gives the second difference.
    const double wp[] = {0.0, 1.0, 4.0, 9.0, 0.0};
    const double idc[] = {1.0, 1.0, 1.0, 1.0};
    const double iw[] = {1.0, 1.0, 1.0};
    double out[3];
    s.flux_divergence(wp, idc, iw, out, 3);
    CHECK(out[0] == 2.0);
    CHECK(out[1] == 2.0);
    CHECK(out[2] == -14.0);
    CHECK(s.gradient_energy(wp, idc, 3) == 1.0 + 9.0 + 25.0 + 81.0);
    const double x[] = {-3.0, 2.0, 1.0};
    CHECK(s.max_value(x, 3) == 2.0);
    CHECK(s.min_value(x, 3) == -3.0);
    CHECK(s.max_abs(x, 3) == 3.0);
    CHECK(s.triple_dot(x, x, x, 3) == -27.0 + 8.0 + 1.0);
}

TEST_CASE("vector backends reproduce the scalar reference") {
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        if (!backend_available(b)) {
            CHECK_THROWS_AS(kernels_for(b), growup::InvalidInput);
            continue;
        }
        CAPTURE(to_string(b));
        compare(scalar_kernels(), kernels_for(b));
    }
}

TEST_CASE("backend names") {
    CHECK(backend_from_string("scalar") == Backend::Scalar);
    CHECK(backend_from_string("avx2") == Backend::Avx2);
    CHECK(to_string(Backend::Neon) == "neon");
    CHECK_THROWS_AS(backend_from_string("sse9"), growup::InvalidInput);
    CHECK(backend_available(active_kernels().backend));
}

}  // TEST_SUITE
