#pragma once

#include <cstddef>
#include <string>

// Hot loops of the finite-volume solver. The scalar table is the reference;
// vector tables must reproduce it bit for bit on elementwise kernels and to
// rounding on reductions.
namespace growup::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& name);

struct Kernels {
    Backend backend = Backend::Scalar;

    // out[i] = ((wp[i+2] - wp[i+1]) inv_dc[i+1] - (wp[i+1] - wp[i]) inv_dc[i]) inv_w[i],
    // i < n. wp holds n + 2 values (zero walls at both ends), inv_dc n + 1.
    void (*flux_divergence)(const double* wp, const double* inv_dc, const double* inv_w,
                            double* out, std::size_t n);
    // out = u + dt (div + a r)
    void (*euler_update)(const double* u, const double* div, const double* a, const double* r,
                         double dt, double* out, std::size_t n);
    // out = u - rhs - dt div
    void (*implicit_residual)(const double* u, const double* rhs, const double* div, double dt,
                              double* out, std::size_t n);
    // Rows of d + dt * (-div)(c .) for the Newton systems; cp holds n + 2 values.
    //   lower[i] = -dt inv_w[i] inv_dc[i] cp[i]
    //   upper[i] = -dt inv_w[i] inv_dc[i+1] cp[i+2]
    //   diag[i]  = d[i] + dt inv_w[i] (inv_dc[i] + inv_dc[i+1]) cp[i+1]
    void (*assemble_tridiag)(const double* d, const double* cp, const double* inv_dc,
                             const double* inv_w, double dt, double* lower, double* diag,
                             double* upper, std::size_t n);
    double (*max_value)(const double* x, std::size_t n);
    double (*min_value)(const double* x, std::size_t n);
    double (*max_abs)(const double* x, std::size_t n);
    // max |a - b| / (|b| + floor)
    double (*max_rel_change)(const double* a, const double* b, double floor, std::size_t n);
    // sum (wp[i+1] - wp[i])^2 inv_dc[i] over the n + 1 faces
    double (*gradient_energy)(const double* wp, const double* inv_dc, std::size_t n);
    // sum a b c
    double (*triple_dot)(const double* a, const double* b, const double* c, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the backend was not compiled in.
const Kernels* avx2_kernels();
const Kernels* neon_kernels();

/// Compiled in and supported by the running CPU.
bool backend_available(Backend b);
/// Throws InvalidInput when the backend is unavailable.
const Kernels& kernels_for(Backend b);
/// Best available backend, overridable with GROWUP_SIMD=scalar|avx2|neon|auto.
/// Resolved once per process.
const Kernels& active_kernels();

}  // namespace growup::simd
