#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "growup/error.hpp"

namespace growup::roots {

struct RootResult {
    double root = 0.0;
    double value = 0.0;  // f(root)
    double lo = 0.0;     // final bracket
    double hi = 0.0;
    std::size_t iterations = 0;
};

/// Bracketed root of a continuous scalar function. Bisection keeps the
/// bracket; a secant candidate replaces the midpoint whenever it falls
/// strictly inside the bracket. Terminates when the bracket is narrower than
/// `x_tol` or |f| <= `f_tol`.
template <class F>
RootResult find_root(F&& f, double lo, double hi, double x_tol, double f_tol = 0.0,
                     std::size_t max_iter = 400) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) {
        return {lo, 0.0, lo, lo, 0};
    }
    if (f_hi == 0.0) {
        return {hi, 0.0, hi, hi, 0};
    }
    if (!(std::signbit(f_lo) != std::signbit(f_hi))) {
        throw NumericalFailure("find_root: no sign change on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
    }

    bool force_bisection = true;
    RootResult out{};
    for (std::size_t it = 1; it <= max_iter; ++it) {
        const double width = hi - lo;
        double x = 0.5 * (lo + hi);
        bool used_secant = false;
        if (!force_bisection) {
            const double secant = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (std::isfinite(secant) && secant > lo && secant < hi) {
                x = secant;
                used_secant = true;
            }
        }

        const double fx = f(x);
        out.iterations = it;
        if (fx == 0.0) {
            return {x, 0.0, x, x, it};
        }
        if (std::signbit(fx) == std::signbit(f_lo)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        // A secant step that fails to halve the bracket is followed by bisection.
        force_bisection = used_secant && (hi - lo) > 0.5 * width;

        const bool small_f = std::abs(fx) <= f_tol;
        if (hi - lo <= x_tol || small_f) {
            out.root = small_f ? x : (std::abs(f_lo) < std::abs(f_hi) ? lo : hi);
            out.value = small_f ? fx : (std::abs(f_lo) < std::abs(f_hi) ? f_lo : f_hi);
            out.lo = lo;
            out.hi = hi;
            return out;
        }
    }
    throw NumericalFailure("find_root: iteration limit reached");
}

}  // namespace growup::roots
