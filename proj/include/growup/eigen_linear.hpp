#pragma once

#include <optional>

namespace growup::eigen {

// Tolerance on lambda for the root of h(., L).
inline constexpr double kLambdaTol = 1e-12;

/// h(lambda, L) = sqrt(lambda) cos(L s) - s sin(L s), s = sqrt(1 - lambda).
/// Its root in lambda is the exponential grow-up rate for m = p = 1.
double h(double lambda, double L);

/// Lower end of the admissible window, max{0, 1 - (pi/(2L))^2}. When the
/// bound is positive it is padded by 1e-9 so that L sqrt(1 - lambda) < pi/2.
double window_lower(double L);

/// Unique root of h(., L) in the admissible window.
double lambda0(double L);

// Two-piece profile phi: cos(sqrt(1-lambda) r) for r < L and
// C1 e^{sqrt(lambda) r} + C2 e^{-sqrt(lambda) r} for r >= L.
struct EigenProfile {
    double lambda = 0.0;
    double L = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    std::optional<double> vanish_radius;  // first zero when C1 < 0

    double operator()(double r) const;
    double derivative(double r) const;
};

/// Requires 0 < lambda < 1 and L sqrt(1 - lambda) < pi/2.
EigenProfile eigen_profile(double lambda, double L);

}  // namespace growup::eigen
