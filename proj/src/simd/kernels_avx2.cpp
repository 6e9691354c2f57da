// Built with -mavx2 -ffp-contract=off; only reached after a cpuid check.
#include "growup/simd/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace growup::simd {
namespace {

constexpr std::size_t W = 4;

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

inline double hmax(__m256d v) {
    alignas(32) double lane[W];
    _mm256_store_pd(lane, v);
    return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

inline double hmin(__m256d v) {
    alignas(32) double lane[W];
    _mm256_store_pd(lane, v);
    return std::min(std::min(lane[0], lane[1]), std::min(lane[2], lane[3]));
}

inline double hsum(__m256d v) {
    alignas(32) double lane[W];
    _mm256_store_pd(lane, v);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void flux_divergence(const double* wp, const double* inv_dc, const double* inv_w, double* out,
                     std::size_t n) {
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d w0 = _mm256_loadu_pd(wp + i);
        const __m256d w1 = _mm256_loadu_pd(wp + i + 1);
        const __m256d w2 = _mm256_loadu_pd(wp + i + 2);
        const __m256d right = _mm256_mul_pd(_mm256_sub_pd(w2, w1), _mm256_loadu_pd(inv_dc + i + 1));
        const __m256d left = _mm256_mul_pd(_mm256_sub_pd(w1, w0), _mm256_loadu_pd(inv_dc + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(right, left), _mm256_loadu_pd(inv_w + i)));
    }
    for (; i < n; ++i) {
        const double right = (wp[i + 2] - wp[i + 1]) * inv_dc[i + 1];
        const double left = (wp[i + 1] - wp[i]) * inv_dc[i];
        out[i] = (right - left) * inv_w[i];
    }
}

void euler_update(const double* u, const double* div, const double* a, const double* r, double dt,
                  double* out, std::size_t n) {
    const __m256d vdt = _mm256_set1_pd(dt);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d src = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(r + i));
        const __m256d inc = _mm256_mul_pd(vdt, _mm256_add_pd(_mm256_loadu_pd(div + i), src));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(u + i), inc));
    }
    for (; i < n; ++i) {
        out[i] = u[i] + dt * (div[i] + a[i] * r[i]);
    }
}

void implicit_residual(const double* u, const double* rhs, const double* div, double dt,
                       double* out, std::size_t n) {
    const __m256d vdt = _mm256_set1_pd(dt);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(rhs + i));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(d, _mm256_mul_pd(vdt, _mm256_loadu_pd(div + i))));
    }
    for (; i < n; ++i) {
        out[i] = (u[i] - rhs[i]) - dt * div[i];
    }
}

void assemble_tridiag(const double* d, const double* cp, const double* inv_dc, const double* inv_w,
                      double dt, double* lower, double* diag, double* upper, std::size_t n) {
    const __m256d vdt = _mm256_set1_pd(dt);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d s = _mm256_mul_pd(vdt, _mm256_loadu_pd(inv_w + i));
        const __m256d gl = _mm256_loadu_pd(inv_dc + i);
        const __m256d gr = _mm256_loadu_pd(inv_dc + i + 1);
        const __m256d lo = _mm256_xor_pd(_mm256_mul_pd(s, gl), sign);
        const __m256d up = _mm256_xor_pd(_mm256_mul_pd(s, gr), sign);
        _mm256_storeu_pd(lower + i, _mm256_mul_pd(lo, _mm256_loadu_pd(cp + i)));
        _mm256_storeu_pd(upper + i, _mm256_mul_pd(up, _mm256_loadu_pd(cp + i + 2)));
        const __m256d c = _mm256_mul_pd(_mm256_mul_pd(s, _mm256_add_pd(gl, gr)), _mm256_loadu_pd(cp + i + 1));
        _mm256_storeu_pd(diag + i, _mm256_add_pd(_mm256_loadu_pd(d + i), c));
    }
    for (; i < n; ++i) {
        const double s = dt * inv_w[i];
        lower[i] = -(s * inv_dc[i]) * cp[i];
        upper[i] = -(s * inv_dc[i + 1]) * cp[i + 2];
        diag[i] = d[i] + (s * (inv_dc[i] + inv_dc[i + 1])) * cp[i + 1];
    }
}

double max_value(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m = -INFINITY;
    if (n >= W) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = W; i + W <= n; i += W) {
            acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
        }
        m = hmax(acc);
    }
    for (; i < n; ++i) {
        m = std::max(m, x[i]);
    }
    return m;
}

double min_value(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m = INFINITY;
    if (n >= W) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = W; i + W <= n; i += W) {
            acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
        }
        m = hmin(acc);
    }
    for (; i < n; ++i) {
        m = std::min(m, x[i]);
    }
    return m;
}

double max_abs(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        m = std::max(m, std::abs(x[i]));
    }
    return m;
}

double max_rel_change(const double* a, const double* b, double floor, std::size_t n) {
    const __m256d vf = _mm256_set1_pd(floor);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d vb = _mm256_loadu_pd(b + i);
        const __m256d num = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), vb));
        acc = _mm256_max_pd(acc, _mm256_div_pd(num, _mm256_add_pd(abs_pd(vb), vf)));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        m = std::max(m, std::abs(a[i] - b[i]) / (std::abs(b[i]) + floor));
    }
    return m;
}

double gradient_energy(const double* wp, const double* inv_dc, std::size_t n) {
    const std::size_t faces = n + 1;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= faces; i += W) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(wp + i + 1), _mm256_loadu_pd(wp + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_mul_pd(d, d), _mm256_loadu_pd(inv_dc + i)));
    }
    double s = hsum(acc);
    for (; i < faces; ++i) {
        const double d = wp[i + 1] - wp[i];
        s += d * d * inv_dc[i];
    }
    return s;
}

double triple_dot(const double* a, const double* b, const double* c, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(ab, _mm256_loadu_pd(c + i)));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        s += a[i] * b[i] * c[i];
    }
    return s;
}

constexpr Kernels kAvx2{
    Backend::Avx2, flux_divergence, euler_update, implicit_residual, assemble_tridiag,
    max_value,     min_value,       max_abs,      max_rel_change,    gradient_energy,
    triple_dot,
};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace growup::simd

#else

namespace growup::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace growup::simd

#endif
