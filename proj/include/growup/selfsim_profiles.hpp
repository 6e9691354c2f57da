#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "growup/dopri5.hpp"

namespace growup::selfsim {

// (1-m) alpha = 2 beta + 1 (p < 1) or (1-m) alpha = 2 beta (p = 1).
enum class Closure { PowerSubcritical, PowerCritical };

std::string to_string(Closure c);

struct SimilarityExponents {
    double alpha = 0.0;
    double beta = 0.0;
    double m = 0.0;
    Closure closure = Closure::PowerSubcritical;

    /// Validates m in (0,1), alpha, beta > 0 and one of the closures to 1e-12.
    static SimilarityExponents from_alpha_beta(double alpha, double beta, double m);
    /// Outer-region exponents for m < p <= 1: alpha = 1/(1-p) or 1 at p = 1,
    /// beta = (p - m) alpha / 2.
    static SimilarityExponents from_problem(double m, double p);
};

struct PhasePoint {
    double eta = 0.0;  // log xi
    double X = 0.0;    // xi f'/f
    double Y = 0.0;    // xi^2 f^(1-m) / m
};

/// Autonomous field (dX/deta, dY/deta).
std::array<double, 2> phase_field(double X, double Y, double alpha, double beta, double m);

// Critical points; C exists only for the subcritical closure.
PhasePoint point_A();
PhasePoint point_B(double m);
PhasePoint point_C(double m);

struct SeparatrixOptions {
    double launch_offset = 1e-8;  // distance from C along its stable direction
    double launch_rel = 2e-3;     // PowerCritical: launch where |X/X* - 1| is about this
    double y_stop = 1e-10;        // integration stops once Y drops below this
    double rtol = 1e-10;
    double atol = 1e-14;
};

/// Orbit from A to C (or to X = -2/(1-m), Y = inf). The orbit is computed
/// backward in eta from the far end, where it is the unique stable branch,
/// down to Y = y_stop near A. Evaluation outside the integrated range uses
/// the linearisation at A and at the far end.
class PhasePath {
public:
    SimilarityExponents exponents;
    double eta_near_A = 0.0;  // smallest integrated eta
    double eta_launch = 0.0;  // largest integrated eta
    std::vector<PhasePoint> points;  // accepted steps, increasing eta

    PhasePoint at(double eta) const;
    PhasePoint terminal() const { return points.back(); }
    PhasePoint initial() const { return points.front(); }
    /// log of lim_{eta -> -inf} m Y e^{-2 eta}, i.e. (1-m) log f(0) of the
    /// raw orbit.
    double log_origin_limit() const;

private:
    friend PhasePath separatrix(const SimilarityExponents&, double, const SeparatrixOptions&);
    std::shared_ptr<const ode::DenseTrajectory<2>> traj_;
    // Far-end extension data.
    double eta_max_ = 0.0;
    double mu_s_ = 0.0;                 // stable eigenvalue at C
    std::array<double, 2> launch_{};   // (X, Y) at eta_launch
    std::array<double, 2> dev_{};      // launch minus C (subcritical)
};

/// `eta_max` bounds how far past the launch point the path may be queried;
/// evaluation beyond eta_launch + eta_max throws.
PhasePath separatrix(const SimilarityExponents& ex, double eta_max = 200.0,
                     const SeparatrixOptions& opts = {});

enum class AsymptoticClass { PurePower, LogCorrected };

struct ProfileSample {
    double xi = 0.0;
    double f = 0.0;
    double X = 0.0;
};

struct SimilarityProfile {
    SimilarityExponents exponents;
    double f0 = 1.0;
    double log_shift = 0.0;  // normalized eta = raw eta - log_shift
    AsymptoticClass asymptotic_class = AsymptoticClass::PurePower;
    std::vector<ProfileSample> samples;
    std::shared_ptr<const PhasePath> path;

    double f(double xi) const;
    double X(double xi) const;
    /// f'(xi) = f X / xi.
    double df(double xi) const;
};

struct ReconstructOptions {
    double xi_min = 1e-3;
    double xi_max = 1e4;
    std::size_t samples = 1401;
};

/// f(xi) = (m Y / xi^2)^(1/(1-m)) along the path, shifted in eta so that
/// f(0+) = f0. Throws NumericalFailure if the samples are not decreasing.
SimilarityProfile reconstruct_profile(const PhasePath& path, double f0 = 1.0,
                                      const ReconstructOptions& opts = {});

/// min over samples of alpha f + beta xi f' = f (alpha + beta X).
double supersolution_residual(const SimilarityProfile& profile);
double supersolution_residual(double alpha, double beta, std::span<const double> f,
                              std::span<const double> X);

// ---------------------------------------------------------------------------
// Separable profiles for p = m < 1:
//   (phi^m)'' + a(r) phi^m - lambda phi = 0, phi(0) = 1, (phi^m)'(0) = 0,
// with a = 1 on (0, L) and 0 beyond.

enum class SeparableClass { CrossesZero, PositiveUnbounded };

std::string to_string(SeparableClass c);

struct SeparableResult {
    SeparableClass classification = SeparableClass::CrossesZero;
    std::optional<double> R;  // first zero of phi
    double r_end = 0.0;       // where the integration stopped
    double w_at_L = 0.0;      // phi^m and (phi^m)' at r = L
    double s_at_L = 0.0;
    std::vector<std::array<double, 3>> samples;  // (r, phi, (phi^m)')
};

inline constexpr double kSeparableCap = 1e8;   // phi^m above this counts as unbounded
inline constexpr double kRadiusCap = 1e6;      // R beyond this counts as infinite

SeparableResult separable_profile_pm(double m, double lambda, double L);

struct LambdaStarStep {
    double lambda = 0.0;
    SeparableClass classification = SeparableClass::CrossesZero;
    double R = 0.0;  // +inf when unbounded
};

struct LambdaStarResult {
    double lambda_star = 0.0;
    double lo = 0.0;  // crosses zero
    double hi = 0.0;  // unbounded
    std::vector<LambdaStarStep> history;
};

LambdaStarResult lambda_star(double m, double L, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Compact reaction profile for m < p <= 1: (phi^m)'' + phi^p = 0 with
// phi(0) = 1, phi'(0) = 0 vanishes first at R0; the rescaled
// A phi(A^{(p-m)/2} x), A = (R0/L)^{2/(p-m)}, vanishes at x = L.

struct CompactProfile {
    double m = 0.0;
    double p = 0.0;
    double L = 0.0;
    double R0 = 0.0;
    double A = 0.0;
    std::vector<std::array<double, 2>> samples;  // (x, phi_L(x)) on [0, L]
};

CompactProfile compact_reaction_profile(double m, double p, double L, std::size_t n_samples = 201);

/// psi' = (psi^p - psi^m) / A^(1-p) integrated to t_end, returned as (t, psi).
std::vector<std::array<double, 2>> integrate_psi(double m, double p, double A, double psi0,
                                                 double t_end, std::size_t n_samples = 101);

}  // namespace growup::selfsim
