#include "growup/simd/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace growup::simd {
namespace {

constexpr std::size_t W = 2;

void flux_divergence(const double* wp, const double* inv_dc, const double* inv_w, double* out,
                     std::size_t n) {
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const float64x2_t w0 = vld1q_f64(wp + i);
        const float64x2_t w1 = vld1q_f64(wp + i + 1);
        const float64x2_t w2 = vld1q_f64(wp + i + 2);
        const float64x2_t right = vmulq_f64(vsubq_f64(w2, w1), vld1q_f64(inv_dc + i + 1));
        const float64x2_t left = vmulq_f64(vsubq_f64(w1, w0), vld1q_f64(inv_dc + i));
        vst1q_f64(out + i, vmulq_f64(vsubq_f64(right, left), vld1q_f64(inv_w + i)));
    }
    for (; i < n; ++i) {
        const double right = (wp[i + 2] - wp[i + 1]) * inv_dc[i + 1];
        const double left = (wp[i + 1] - wp[i]) * inv_dc[i];
        out[i] = (right - left) * inv_w[i];
    }
}

void euler_update(const double* u, const double* div, const double* a, const double* r, double dt,
                  double* out, std::size_t n) {
    const float64x2_t vdt = vdupq_n_f64(dt);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const float64x2_t src = vmulq_f64(vld1q_f64(a + i), vld1q_f64(r + i));
        const float64x2_t inc = vmulq_f64(vdt, vaddq_f64(vld1q_f64(div + i), src));
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(u + i), inc));
    }
    for (; i < n; ++i) {
        out[i] = u[i] + dt * (div[i] + a[i] * r[i]);
    }
}

void implicit_residual(const double* u, const double* rhs, const double* div, double dt,
                       double* out, std::size_t n) {
    const float64x2_t vdt = vdupq_n_f64(dt);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const float64x2_t d = vsubq_f64(vld1q_f64(u + i), vld1q_f64(rhs + i));
        vst1q_f64(out + i, vsubq_f64(d, vmulq_f64(vdt, vld1q_f64(div + i))));
    }
    for (; i < n; ++i) {
        out[i] = (u[i] - rhs[i]) - dt * div[i];
    }
}

void assemble_tridiag(const double* d, const double* cp, const double* inv_dc, const double* inv_w,
                      double dt, double* lower, double* diag, double* upper, std::size_t n) {
    const float64x2_t vdt = vdupq_n_f64(dt);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const float64x2_t s = vmulq_f64(vdt, vld1q_f64(inv_w + i));
        const float64x2_t gl = vld1q_f64(inv_dc + i);
        const float64x2_t gr = vld1q_f64(inv_dc + i + 1);
        vst1q_f64(lower + i, vmulq_f64(vnegq_f64(vmulq_f64(s, gl)), vld1q_f64(cp + i)));
        vst1q_f64(upper + i, vmulq_f64(vnegq_f64(vmulq_f64(s, gr)), vld1q_f64(cp + i + 2)));
        const float64x2_t c = vmulq_f64(vmulq_f64(s, vaddq_f64(gl, gr)), vld1q_f64(cp + i + 1));
        vst1q_f64(diag + i, vaddq_f64(vld1q_f64(d + i), c));
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
        float64x2_t acc = vld1q_f64(x);
        for (i = W; i + W <= n; i += W) {
            acc = vmaxq_f64(acc, vld1q_f64(x + i));
        }
        m = vmaxvq_f64(acc);
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
        float64x2_t acc = vld1q_f64(x);
        for (i = W; i + W <= n; i += W) {
            acc = vminq_f64(acc, vld1q_f64(x + i));
        }
        m = vminvq_f64(acc);
    }
    for (; i < n; ++i) {
        m = std::min(m, x[i]);
    }
    return m;
}

double max_abs(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    }
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        m = std::max(m, std::abs(x[i]));
    }
    return m;
}

double max_rel_change(const double* a, const double* b, double floor, std::size_t n) {
    const float64x2_t vf = vdupq_n_f64(floor);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const float64x2_t vb = vld1q_f64(b + i);
        const float64x2_t num = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vb));
        acc = vmaxq_f64(acc, vdivq_f64(num, vaddq_f64(vabsq_f64(vb), vf)));
    }
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        m = std::max(m, std::abs(a[i] - b[i]) / (std::abs(b[i]) + floor));
    }
    return m;
}

double gradient_energy(const double* wp, const double* inv_dc, std::size_t n) {
    const std::size_t faces = n + 1;
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + W <= faces; i += W) {
        const float64x2_t d = vsubq_f64(vld1q_f64(wp + i + 1), vld1q_f64(wp + i));
        acc = vaddq_f64(acc, vmulq_f64(vmulq_f64(d, d), vld1q_f64(inv_dc + i)));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < faces; ++i) {
        const double d = wp[i + 1] - wp[i];
        s += d * d * inv_dc[i];
    }
    return s;
}

double triple_dot(const double* a, const double* b, const double* c, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        const float64x2_t ab = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vaddq_f64(acc, vmulq_f64(ab, vld1q_f64(c + i)));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) {
        s += a[i] * b[i] * c[i];
    }
    return s;
}

constexpr Kernels kNeon{
    Backend::Neon, flux_divergence, euler_update, implicit_residual, assemble_tridiag,
    max_value,     min_value,       max_abs,      max_rel_change,    gradient_energy,
    triple_dot,
};

}  // namespace

const Kernels* neon_kernels() { return &kNeon; }

}  // namespace growup::simd

#else

namespace growup::simd {
const Kernels* neon_kernels() { return nullptr; }
}  // namespace growup::simd

#endif
