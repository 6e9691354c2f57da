#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "growup/dopri5.hpp"

namespace growup::flux {

// Profiles of V = t^alpha F(x t^{-(m-p) alpha}) (power) or
// V = e^{lambda t} F(x e^{-(m-p) lambda t}) (exponential) solving
//   (F^m)'' - rate F + (m-p) rate xi F' = 0,  -(F^m)'(0) = K F(0)^p.

enum class ProfileKind { Power, Exponential };
enum class FluxClass { CrossesZero, PositiveMinimumUnbounded, CompactSupport };

std::string to_string(ProfileKind k);
std::string to_string(FluxClass c);

inline constexpr double kUnboundedCap = 1e8;  // F above this (with F' > 0) is unbounded
inline constexpr double kZeroFloor = 1e-9;    // F below kZeroFloor * A ends the integration (m <= 1)
inline constexpr double kSwitchFraction = 1e-2;  // m > 1: F below this * A uses F as the variable
inline constexpr std::size_t kGrowthStepBudget = 200'000;

struct FluxSample {
    double xi = 0.0;
    double F = 0.0;
    double s = 0.0;  // (F^m)'
};

struct FluxProfile {
    ProfileKind kind = ProfileKind::Power;
    double m = 0.0;
    double p = 0.0;
    double rate = 0.0;  // alpha (power) or lambda (exponential)
    double K = 0.0;
    double A = 0.0;     // F(0)
    FluxClass classification = FluxClass::CrossesZero;
    std::vector<FluxSample> samples;
    double xi_end = 0.0;
    std::optional<double> support_edge;  // extrapolated zero of F
    std::optional<double> xi_min;        // location of the positive minimum
    std::optional<double> F_min;
    bool reached_cap = false;  // F exceeded kUnboundedCap during the growth run

    /// Dense evaluation of (F, s) on [0, xi_end].
    FluxSample at(double xi) const;
    /// -(F^m)'(0) - K F(0)^p.
    double flux_residual() const;

private:
    friend FluxProfile integrate_F(double, double, double, double, double, ProfileKind);
    std::shared_ptr<const ode::DenseTrajectory<2>> traj_;    // (F, s) against xi
    std::shared_ptr<const ode::DenseTrajectory<2>> tail_;    // (xi, s) against F, small F
    std::shared_ptr<const ode::DenseTrajectory<2>> growth_;  // (F, s) against xi after tail_
    double xi_switch_ = 0.0;
    double resume_xi_ = 0.0;
};

/// Integrates the profile ODE from xi = 0 in the variables (F, (F^m)') and
/// classifies the result. Requires p < m and rate, K, A > 0 (K = 0 allowed).
FluxProfile integrate_F(double m, double p, double rate, double K, double A,
                        ProfileKind kind = ProfileKind::Power);

/// Grow-up exponent 1/(m+1-2p) used by the power construction.
double flux_alpha(double m, double p);

/// A above this value gives E(0) < 0: (K^2 (m+1) / (2 rate m))^{1/(m+1-2p)}.
double energy_threshold(double m, double p, double rate, double K);

/// Lower bounds for the positive minimum, from E(xi0) <= E(0):
/// F(xi0)^{m+1} >= A^{m+1} (1 - c (m+1) K^2 A^{2p-m-1} / (rate m)),
/// with c = 1/2 (sharp) or c = 2 (the weaker constant also in use).
double minimum_lower_bound(double m, double p, double rate, double K, double A, double c);

struct EnergyPoint {
    double xi = 0.0;
    double E = 0.0;
};

/// E = (1/2) s^2 - (rate m / (m+1)) F^{m+1} at every sample.
std::vector<EnergyPoint> profile_energy(const FluxProfile& profile);
/// Along solutions E' = -(m-p) rate m xi F^{m-1} F'^2.
bool energy_nonincreasing(const std::vector<EnergyPoint>& series, double rel_slack = 1e-6);

// Explicit compact subsolution F = (A - B xi)_+^gamma, gamma = 2/m (m <= 1)
// or 1/(m-1) (m > 1), with B fixed by the flux condition.
struct ExplicitSubsolution {
    double m = 0.0;
    double p = 0.0;
    double K = 0.0;
    double A = 0.0;
    double alpha = 0.0;
    double gamma = 0.0;
    double B = 0.0;
    double support_edge = 0.0;     // A / B
    double flux_residual = 0.0;
    double max_violation = 0.0;    // max of (lhs - rhs) / scale over samples, <= 0 when valid
    bool satisfied = false;

    double F(double xi) const;
};

double subsolution_gamma(double m);
double subsolution_B(double m, double p, double K, double A);

ExplicitSubsolution explicit_subsolution(double m, double p, double K, double A,
                                         std::size_t n_samples = 2001);

// ---------------------------------------------------------------------------
// Critical shooting for p = (m+1)/2 > 1: G(0) = 1, -(G^m)'(0) = 1.

struct BetaStep {
    double beta = 0.0;
    FluxClass classification = FluxClass::CrossesZero;
};

struct BetaStarResult {
    double m = 0.0;
    double p = 0.0;
    double beta_star = 0.0;
    double lo = 0.0;  // crosses zero
    double hi = 0.0;  // positive minimum, unbounded
    std::size_t iterations = 0;
    std::vector<BetaStep> history;
    bool monotone = true;
    double C_m = 0.0;               // (m-1)^2 / (2 m (m+1))
    double gradient_bound_ratio = 0.0;  // min |(G^{(m-1)/2})'|^2 / (C_m beta) on the lo profile
    FluxProfile critical_profile;       // profile at lo, tagged CompactSupport
};

FluxProfile integrate_G(double m, double beta);

BetaStarResult shoot_beta_star(double m, double tol = 1e-6);

// ---------------------------------------------------------------------------
// Matched function w: parabola inside (-L, L), shifted V outside.

using FieldFn = std::function<double(double x, double t)>;

/// V(x, t) from a flux profile (x >= 0).
FieldFn similarity_field(const FluxProfile& profile);
FieldFn similarity_field(const ExplicitSubsolution& sub);

double matched_w(const FieldFn& V, double m, double p, double K, double L, double x, double t);

struct MatchedDiagnostics {
    double jump_value = 0.0;   // |w(L-) - w(L+)|
    double jump_slope = 0.0;   // |(w^m)_x(L-) - (w^m)_x(L+)|
    std::vector<std::array<double, 2>> residual;  // (x, w_t - (w^m)_xx - w^p) on [0, L]
    double max_residual = 0.0;
    double min_residual = 0.0;
};

MatchedDiagnostics matched_w_diagnostics(const FieldFn& V, double m, double p, double K, double L,
                                         double t, std::size_t n_samples = 41);

// ---------------------------------------------------------------------------
// F^m = (1 - B sqrt(xi))_+ against (F^m)'' + xi F' / 2 >= 0.

struct PkCheck {
    bool ok = false;
    double min_value = 0.0;  // min of ((F^m)'' + xi F'/2) / (F^m)'' over the support
};

PkCheck pk_subsolution_details(double m, double B, std::size_t n_samples = 4001);
bool pk_subsolution_check(double m, double B);

}  // namespace growup::flux
