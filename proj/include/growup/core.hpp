#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace growup {

// Absolute tolerance used for every comparison against p0 and pF.
inline constexpr double kExponentTol = 1e-12;

enum class InitialKind { ConstantPlateau, GaussianBump, PowerTail, LogTail, ExpTail };

/// Initial datum u0 on the real line.
///
///  - ConstantPlateau: amplitude on |x| <= width, then a linear ramp down to
///    zero over `ramp`. width = +inf gives a constant field.
///  - GaussianBump: amplitude * exp(-(x/width)^2).
///  - PowerTail (m < 1): (amplitude^(m-1) + x^2)^(-1/(1-m)), so that
///    |x|^2 u0^(1-m) -> 1.
///  - LogTail (m < 1): (log(e + x^2) / (amplitude^(m-1) + x^2))^(1/(1-m)), so
///    that |x|^2 u0^(1-m) ~ 2 log|x|.
///  - ExpTail: amplitude / cosh(sqrt(decay) x), i.e. ~ exp(-sqrt(decay)|x|).
struct InitialData {
    InitialKind kind = InitialKind::ConstantPlateau;
    double amplitude = 1.0;
    double width = 1.0;
    double ramp = 1.0;
    double decay = 1.0;

    static InitialData plateau(double amplitude, double width, double ramp);
    static InitialData constant(double amplitude);
    static InitialData gaussian(double amplitude, double width);
    static InitialData power_tail(double amplitude);
    static InitialData log_tail(double amplitude);
    static InitialData exp_tail(double amplitude, double decay);

    bool operator==(const InitialData&) const = default;
};

std::string to_string(InitialKind kind);
InitialKind initial_kind_from_string(const std::string& name);

struct ProblemParams {
    double m = 1.0;
    double p = 1.0;
    double L = 1.0;
    InitialData init{};

    /// Throws InvalidInput unless m, p, L > 0 and u0 > 0 on [-L, L].
    void validate() const;

    bool operator==(const ProblemParams&) const = default;
};

/// Evaluates u0 at x; `m` enters the tail kinds.
double initial_value(const InitialData& init, double m, double x);

/// Samples u0 on the given nodes. Rejects data that vanish somewhere in
/// [-L, L].
std::vector<double> build_initial_data(const ProblemParams& params, std::span<const double> nodes);

double compute_p0(double m);
double compute_pF(double m);

enum class AlphaKind { Power, Exponential };

// Grow-up exponent alpha, or the tag for the exponential regime at p = p0.
struct Alpha {
    AlphaKind kind = AlphaKind::Power;
    double value = 0.0;  // meaningful for Power only

    bool is_power() const { return kind == AlphaKind::Power; }
};

Alpha compute_alpha(double m, double p);

enum class RegimeTag { GrowUpSubcritical, GrowUpCritical, BlowUpBand, Competitive };
enum class CriticalSubtag { None, MBelowOne, MEqualsOne, MAboveOne };

struct Regime {
    RegimeTag tag = RegimeTag::GrowUpSubcritical;
    CriticalSubtag sub = CriticalSubtag::None;

    std::string name() const;
    bool operator==(const Regime&) const = default;
};

Regime classify_regime(double m, double p);

enum class RateForm { Power, Exponential, LogExponential, Unspecified };

// Asymptotic law: t^value, e^{value t}, or lim log u / t = value.
struct RateLaw {
    RateForm form = RateForm::Unspecified;
    double value = 0.0;

    std::string describe() const;
};

std::string to_string(RateForm form);

struct PredictedRates {
    RateLaw inside;
    RateLaw outside;
};

/// Grow-up laws inside and outside the reaction interval. Requires p <= p0.
/// The critical cases m = 1 and m > 1 solve the eigenvalue problem and the
/// beta* shooting problem respectively.
PredictedRates predicted_rates(double m, double p, double L);

struct ExponentReport {
    double m = 0.0;
    double p = 0.0;
    double L = 0.0;
    double p0 = 0.0;
    double pF = 0.0;
    Alpha alpha;
    std::optional<double> beta;   // rescaling exponents, finite alpha only
    std::optional<double> gamma;
    Regime regime;
    std::optional<PredictedRates> rates;  // grow-up regimes only
};

ExponentReport exponent_report(double m, double p, double L);

}  // namespace growup
