#include "growup/core.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "growup/eigen_linear.hpp"
#include "growup/error.hpp"
#include "growup/flux_profiles.hpp"

namespace growup {

InitialData InitialData::plateau(double amplitude, double width, double ramp) {
    InitialData d;
    d.kind = InitialKind::ConstantPlateau;
    d.amplitude = amplitude;
    d.width = width;
    d.ramp = ramp;
    return d;
}

InitialData InitialData::constant(double amplitude) {
    return plateau(amplitude, std::numeric_limits<double>::infinity(), 1.0);
}

InitialData InitialData::gaussian(double amplitude, double width) {
    InitialData d;
    d.kind = InitialKind::GaussianBump;
    d.amplitude = amplitude;
    d.width = width;
    return d;
}

InitialData InitialData::power_tail(double amplitude) {
    InitialData d;
    d.kind = InitialKind::PowerTail;
    d.amplitude = amplitude;
    return d;
}

InitialData InitialData::log_tail(double amplitude) {
    InitialData d;
    d.kind = InitialKind::LogTail;
    d.amplitude = amplitude;
    return d;
}

InitialData InitialData::exp_tail(double amplitude, double decay) {
    InitialData d;
    d.kind = InitialKind::ExpTail;
    d.amplitude = amplitude;
    d.decay = decay;
    return d;
}

std::string to_string(InitialKind kind) {
    switch (kind) {
        case InitialKind::ConstantPlateau: return "constant-plateau";
        case InitialKind::GaussianBump: return "gaussian-bump";
        case InitialKind::PowerTail: return "power-tail";
        case InitialKind::LogTail: return "log-tail";
        case InitialKind::ExpTail: return "exp-tail";
    }
    return "unknown";
}

InitialKind initial_kind_from_string(const std::string& name) {
    for (auto k : {InitialKind::ConstantPlateau, InitialKind::GaussianBump, InitialKind::PowerTail,
                   InitialKind::LogTail, InitialKind::ExpTail}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw InvalidInput("unknown initial-data kind '" + name + "'");
}

double initial_value(const InitialData& init, double m, double x) {
    const double a = init.amplitude;
    const double ax = std::abs(x);
    switch (init.kind) {
        case InitialKind::ConstantPlateau:
            if (ax <= init.width) {
                return a;
            }
            return a * std::max(0.0, 1.0 - (ax - init.width) / init.ramp);
        case InitialKind::GaussianBump: {
            const double s = x / init.width;
            return a * std::exp(-s * s);
        }
        case InitialKind::PowerTail:
            return std::pow(std::pow(a, m - 1.0) + x * x, -1.0 / (1.0 - m));
        case InitialKind::LogTail:
            return std::pow(std::log(std::exp(1.0) + x * x) / (std::pow(a, m - 1.0) + x * x),
                            1.0 / (1.0 - m));
        case InitialKind::ExpTail:
            return a / std::cosh(std::sqrt(init.decay) * x);
    }
    return 0.0;
}

void ProblemParams::validate() const {
    require(std::isfinite(m) && m > 0.0, "m must be positive");
    require(std::isfinite(p) && p > 0.0, "p must be positive");
    require(std::isfinite(L) && L > 0.0, "L must be positive");
    require(std::isfinite(init.amplitude) && init.amplitude > 0.0,
            "initial amplitude must be positive");
    switch (init.kind) {
        case InitialKind::ConstantPlateau:
            require(init.width > 0.0 && init.ramp > 0.0 && std::isfinite(init.ramp),
                    "plateau width and ramp must be positive");
            break;
        case InitialKind::GaussianBump:
            require(init.width > 0.0 && std::isfinite(init.width), "gaussian width must be positive");
            break;
        case InitialKind::PowerTail:
        case InitialKind::LogTail:
            require(m < 1.0, to_string(init.kind) + " initial data requires m < 1");
            break;
        case InitialKind::ExpTail:
            require(init.decay > 0.0 && std::isfinite(init.decay), "exp-tail decay must be positive");
            break;
    }
    // u0 must be strictly positive on the closed reaction interval.
    constexpr int samples = 2000;
    for (int i = 0; i <= samples; ++i) {
        const double x = -L + 2.0 * L * i / samples;
        const double v = initial_value(init, m, x);
        if (!(v > 0.0) || !std::isfinite(v)) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "initial data is not strictly positive at x=%.6g in [-L, L]", x);
            throw InvalidInput(buf);
        }
    }
}

std::vector<double> build_initial_data(const ProblemParams& params, std::span<const double> nodes) {
    params.validate();
    std::vector<double> u(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        u[i] = initial_value(params.init, params.m, nodes[i]);
        if (std::abs(nodes[i]) <= params.L && !(u[i] > 0.0)) {
            throw InvalidInput("initial data vanishes at a node inside [-L, L]");
        }
    }
    return u;
}

double compute_p0(double m) {
    require(std::isfinite(m) && m > 0.0, "m must be positive");
    return std::max(1.0, 0.5 * (m + 1.0));
}

double compute_pF(double m) {
    require(std::isfinite(m) && m > 0.0, "m must be positive");
    return m + 1.0;
}

Alpha compute_alpha(double m, double p) {
    require(std::isfinite(p) && p > 0.0, "p must be positive");
    const double p0 = compute_p0(m);
    if (p > p0 + kExponentTol) {
        throw InvalidInput("no grow-up rate for p > p0");
    }
    if (std::abs(p - p0) <= kExponentTol) {
        return {AlphaKind::Exponential, 0.0};
    }
    // Piecewise by sign(p - m): avoids the negative denominator m + 1 - 2p
    // of the other branch.
    if (p >= m) {
        return {AlphaKind::Power, 1.0 / (1.0 - p)};
    }
    return {AlphaKind::Power, 1.0 / (m + 1.0 - 2.0 * p)};
}

std::string Regime::name() const {
    switch (tag) {
        case RegimeTag::GrowUpSubcritical: return "GrowUpSubcritical";
        case RegimeTag::BlowUpBand: return "BlowUpBand";
        case RegimeTag::Competitive: return "Competitive";
        case RegimeTag::GrowUpCritical:
            switch (sub) {
                case CriticalSubtag::MBelowOne: return "GrowUpCritical/m<1";
                case CriticalSubtag::MEqualsOne: return "GrowUpCritical/m=1";
                case CriticalSubtag::MAboveOne: return "GrowUpCritical/m>1";
                default: return "GrowUpCritical";
            }
    }
    return "unknown";
}

Regime classify_regime(double m, double p) {
    require(std::isfinite(p) && p > 0.0, "p must be positive");
    const double p0 = compute_p0(m);
    const double pF = compute_pF(m);
    if (std::abs(p - p0) <= kExponentTol) {
        CriticalSubtag sub = CriticalSubtag::MEqualsOne;
        if (m < 1.0 - kExponentTol) {
            sub = CriticalSubtag::MBelowOne;
        } else if (m > 1.0 + kExponentTol) {
            sub = CriticalSubtag::MAboveOne;
        }
        return {RegimeTag::GrowUpCritical, sub};
    }
    if (p < p0) {
        return {RegimeTag::GrowUpSubcritical, CriticalSubtag::None};
    }
    if (p <= pF + kExponentTol) {
        return {RegimeTag::BlowUpBand, CriticalSubtag::None};
    }
    return {RegimeTag::Competitive, CriticalSubtag::None};
}

std::string to_string(RateForm form) {
    switch (form) {
        case RateForm::Power: return "power";
        case RateForm::Exponential: return "exponential";
        case RateForm::LogExponential: return "log-exponential";
        case RateForm::Unspecified: return "unspecified";
    }
    return "unknown";
}

std::string RateLaw::describe() const {
    char buf[96];
    switch (form) {
        case RateForm::Power: std::snprintf(buf, sizeof buf, "t^%.10g", value); break;
        case RateForm::Exponential: std::snprintf(buf, sizeof buf, "e^(%.10g t)", value); break;
        case RateForm::LogExponential:
            std::snprintf(buf, sizeof buf, "log u / t -> %.10g", value);
            break;
        default: return "unspecified";
    }
    return buf;
}

PredictedRates predicted_rates(double m, double p, double L) {
    require(std::isfinite(L) && L > 0.0, "L must be positive");
    const Alpha alpha = compute_alpha(m, p);  // rejects p > p0
    PredictedRates r;
    if (!alpha.is_power()) {
        const Regime regime = classify_regime(m, p);
        switch (regime.sub) {
            case CriticalSubtag::MBelowOne:
                r.inside = {RateForm::Exponential, 1.0};
                r.outside = {RateForm::Power, 1.0 / (1.0 - m)};
                break;
            case CriticalSubtag::MEqualsOne: {
                const double lam = eigen::lambda0(L);
                r.inside = {RateForm::LogExponential, lam};
                r.outside = r.inside;
                break;
            }
            default: {
                const double bs = flux::shoot_beta_star(m).beta_star;
                r.inside = {RateForm::LogExponential, bs * L * L};
                r.outside = r.inside;
                break;
            }
        }
        return r;
    }
    r.inside = {RateForm::Power, alpha.value};
    if (p <= m + kExponentTol) {
        r.outside = {RateForm::Power, 1.0 / (m + 1.0 - 2.0 * p)};
    } else {
        r.outside = {RateForm::Power, 1.0 / (1.0 - m)};
    }
    return r;
}

ExponentReport exponent_report(double m, double p, double L) {
    require(std::isfinite(L) && L > 0.0, "L must be positive");
    ExponentReport rep;
    rep.m = m;
    rep.p = p;
    rep.L = L;
    rep.p0 = compute_p0(m);
    rep.pF = compute_pF(m);
    rep.regime = classify_regime(m, p);
    if (p <= rep.p0 + kExponentTol) {
        rep.alpha = compute_alpha(m, p);
        if (rep.alpha.is_power()) {
            rep.beta = 0.5 * (rep.alpha.value * (m - 1.0) + 1.0);
            rep.gamma = rep.alpha.value * (p - 1.0) + 1.0;
        }
        rep.rates = predicted_rates(m, p, L);
    } else {
        rep.alpha = {AlphaKind::Power, std::numeric_limits<double>::quiet_NaN()};
    }
    return rep;
}

}  // namespace growup
