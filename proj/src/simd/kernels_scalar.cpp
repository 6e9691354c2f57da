#include <algorithm>
#include <cmath>

#include "growup/simd/kernels.hpp"

namespace growup::simd {
namespace {

void flux_divergence(const double* wp, const double* inv_dc, const double* inv_w, double* out,
                     std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double right = (wp[i + 2] - wp[i + 1]) * inv_dc[i + 1];
        const double left = (wp[i + 1] - wp[i]) * inv_dc[i];
        out[i] = (right - left) * inv_w[i];
    }
}

void euler_update(const double* u, const double* div, const double* a, const double* r, double dt,
                  double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = u[i] + dt * (div[i] + a[i] * r[i]);
    }
}

void implicit_residual(const double* u, const double* rhs, const double* div, double dt,
                       double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (u[i] - rhs[i]) - dt * div[i];
    }
}

void assemble_tridiag(const double* d, const double* cp, const double* inv_dc, const double* inv_w,
                      double dt, double* lower, double* diag, double* upper, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double s = dt * inv_w[i];
        lower[i] = -(s * inv_dc[i]) * cp[i];
        upper[i] = -(s * inv_dc[i + 1]) * cp[i + 2];
        diag[i] = d[i] + (s * (inv_dc[i] + inv_dc[i + 1])) * cp[i + 1];
    }
}

double max_value(const double* x, std::size_t n) {
    double m = -INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, x[i]);
    }
    return m;
}

double min_value(const double* x, std::size_t n) {
    double m = INFINITY;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::min(m, x[i]);
    }
    return m;
}

double max_abs(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(x[i]));
    }
    return m;
}

double max_rel_change(const double* a, const double* b, double floor, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(a[i] - b[i]) / (std::abs(b[i]) + floor));
    }
    return m;
}

double gradient_energy(const double* wp, const double* inv_dc, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double d = wp[i + 1] - wp[i];
        s += d * d * inv_dc[i];
    }
    return s;
}

double triple_dot(const double* a, const double* b, const double* c, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i] * b[i] * c[i];
    }
    return s;
}

constexpr Kernels kScalar{
    Backend::Scalar, flux_divergence, euler_update, implicit_residual, assemble_tridiag,
    max_value,       min_value,       max_abs,      max_rel_change,    gradient_energy,
    triple_dot,
};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace growup::simd
