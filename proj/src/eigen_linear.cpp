#include "growup/eigen_linear.hpp"

#include <cmath>
#include <numbers>

#include "growup/error.hpp"
#include "growup/roots.hpp"

namespace growup::eigen {

double h(double lambda, double L) {
    require(lambda >= 0.0 && lambda <= 1.0, "h: lambda must lie in [0, 1]");
    require(L > 0.0 && std::isfinite(L), "h: L must be positive");
    const double s = std::sqrt(1.0 - lambda);
    return std::sqrt(lambda) * std::cos(L * s) - s * std::sin(L * s);
}

double window_lower(double L) {
    require(L > 0.0 && std::isfinite(L), "L must be positive");
    const double q = std::numbers::pi / (2.0 * L);
    const double bound = 1.0 - q * q;
    // h(0, L) = -sin L < 0 already holds on the other branch (L <= pi/2).
    return bound > 0.0 ? bound + 1e-9 : 0.0;
}

double lambda0(double L) {
    const double lo = window_lower(L);
    auto f = [L](double lam) { return h(lam, L); };
    if (!(f(lo) < 0.0)) {
        throw NumericalFailure("lambda0: h is not negative at the bottom of the window");
    }
    return roots::find_root(f, lo, 1.0, kLambdaTol).root;
}

double EigenProfile::operator()(double r) const {
    r = std::abs(r);
    if (r < L) {
        return std::cos(std::sqrt(1.0 - lambda) * r);
    }
    const double k = std::sqrt(lambda);
    return C1 * std::exp(k * r) + C2 * std::exp(-k * r);
}

double EigenProfile::derivative(double r) const {
    const double sign = r < 0.0 ? -1.0 : 1.0;
    r = std::abs(r);
    if (r < L) {
        const double s = std::sqrt(1.0 - lambda);
        return -sign * s * std::sin(s * r);
    }
    const double k = std::sqrt(lambda);
    return sign * k * (C1 * std::exp(k * r) - C2 * std::exp(-k * r));
}

EigenProfile eigen_profile(double lambda, double L) {
    require(lambda > 0.0 && lambda < 1.0, "eigen_profile: lambda must lie in (0, 1)");
    require(L > 0.0 && std::isfinite(L), "eigen_profile: L must be positive");
    const double s = std::sqrt(1.0 - lambda);
    if (!(L * s < 0.5 * std::numbers::pi)) {
        throw InvalidInput("eigen_profile: L sqrt(1 - lambda) must be below pi/2");
    }
    const double k = std::sqrt(lambda);
    const double c = std::cos(L * s);
    const double sn = std::sin(L * s);

    EigenProfile prof;
    prof.lambda = lambda;
    prof.L = L;
    prof.C1 = std::exp(-k * L) / (2.0 * k) * (k * c - s * sn);
    prof.C2 = std::exp(k * L) / (2.0 * k) * (k * c + s * sn);
    if (prof.C1 < 0.0) {
        prof.vanish_radius = std::log(-prof.C2 / prof.C1) / (2.0 * k);
    }
    return prof;
}

}  // namespace growup::eigen
