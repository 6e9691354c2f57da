#include "growup/selfsim_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "growup/error.hpp"
#include "growup/roots.hpp"

namespace growup::selfsim {

namespace {

constexpr double kClosureTol = 1e-12;
constexpr double kRegionSlack = 1e-6;

double x_star(double m) { return -2.0 / (1.0 - m); }

void check_m(double m) {
    require(std::isfinite(m) && m > 0.0 && m < 1.0, "similarity profiles require 0 < m < 1");
}

}  // namespace

std::string to_string(Closure c) {
    return c == Closure::PowerSubcritical ? "(1-m)alpha=2beta+1" : "(1-m)alpha=2beta";
}

SimilarityExponents SimilarityExponents::from_alpha_beta(double alpha, double beta, double m) {
    check_m(m);
    require(alpha > 0.0 && beta > 0.0, "similarity exponents must be positive");
    const double gap = (1.0 - m) * alpha - 2.0 * beta;
    SimilarityExponents ex{alpha, beta, m, Closure::PowerSubcritical};
    if (std::abs(gap - 1.0) <= kClosureTol) {
        ex.closure = Closure::PowerSubcritical;
    } else if (std::abs(gap) <= kClosureTol) {
        ex.closure = Closure::PowerCritical;
    } else {
        throw InvalidInput("(1-m) alpha - 2 beta must equal 0 or 1");
    }
    return ex;
}

SimilarityExponents SimilarityExponents::from_problem(double m, double p) {
    check_m(m);
    require(p > m && p <= 1.0 + kClosureTol, "outer similarity exponents need m < p <= 1");
    const bool critical = std::abs(p - 1.0) <= kClosureTol;
    const double alpha = critical ? 1.0 : 1.0 / (1.0 - p);
    const double beta = 0.5 * (p - m) * alpha;
    return {alpha, beta, m, critical ? Closure::PowerCritical : Closure::PowerSubcritical};
}

std::array<double, 2> phase_field(double X, double Y, double alpha, double beta, double m) {
    return {X - m * X * X + Y * (alpha + beta * X), (2.0 + (1.0 - m) * X) * Y};
}

PhasePoint point_A() { return {0.0, 0.0, 0.0}; }
PhasePoint point_B(double m) { return {0.0, 1.0 / m, 0.0}; }
PhasePoint point_C(double m) { return {0.0, x_star(m), 2.0 * (1.0 + m) / (1.0 - m)}; }

PhasePoint PhasePath::at(double eta) const {
    const double m = exponents.m;
    if (eta < eta_near_A) {
        // Linearisation at A: X ~ e^eta and f ~ f(0) e^X, so that
        // Y = xi^2 f^{1-m} / m ~ e^{2 eta + (1-m) X}.
        const PhasePoint& p0 = points.front();
        const double d = eta - p0.eta;
        const double X = p0.X * std::exp(d);
        return {eta, X, p0.Y * std::exp(2.0 * d + (1.0 - m) * (X - p0.X))};
    }
    if (eta > eta_launch) {
        if (eta > eta_launch + eta_max_) {
            throw InvalidInput("separatrix queried beyond eta_max");
        }
        const double d = eta - eta_launch;
        if (exponents.closure == Closure::PowerSubcritical) {
            const PhasePoint c = point_C(m);
            const double e = std::exp(mu_s_ * d);
            return {eta, c.X + dev_[0] * e, c.Y + dev_[1] * e};
        }
        // Slow manifold X = X* + d1/Y + d2/Y^2 with Y' = (1-m)(X - X*) Y.
        const double q = 2.0 * (1.0 + m) / ((1.0 - m) * (1.0 - m));
        const double d1 = q / exponents.beta;
        const double d2 = -(1.0 + 3.0 * m) / (1.0 - m) * d1 / exponents.beta;
        const double Y = launch_[1] + (1.0 - m) * d1 * d;
        return {eta, x_star(m) + d1 / Y + d2 / (Y * Y), Y};
    }
    const auto s = traj_->at(eta);
    return {eta, s[0], s[1]};
}

double PhasePath::log_origin_limit() const {
    const PhasePoint& p0 = points.front();
    const double m = exponents.m;
    return std::log(m) + std::log(p0.Y) - 2.0 * p0.eta - (1.0 - m) * p0.X;
}

PhasePath separatrix(const SimilarityExponents& ex, double eta_max, const SeparatrixOptions& opts) {
    const double m = ex.m;
    const double alpha = ex.alpha;
    const double beta = ex.beta;
    check_m(m);
    require(eta_max >= 0.0, "eta_max must be non-negative");
    const double xs = x_star(m);

    PhasePath path;
    path.exponents = ex;
    path.eta_max_ = eta_max;

    ode::State<2> y0{};
    if (ex.closure == Closure::PowerSubcritical) {
        const PhasePoint c = point_C(m);
        const double a11 = 1.0 - 2.0 * m * c.X + beta * c.Y;
        const double a12 = alpha + beta * c.X;
        const double a21 = (1.0 - m) * c.Y;
        // a22 = 2 + (1-m) X_C = 0, so det J = -a12 a21 < 0: a saddle.
        const double mu_s = 0.5 * (a11 - std::sqrt(a11 * a11 + 4.0 * a12 * a21));
        double vx = -mu_s;
        double vy = -a21;
        const double nv = std::hypot(vx, vy);
        vx /= nv;
        vy /= nv;
        path.mu_s_ = mu_s;
        path.dev_ = {opts.launch_offset * vx, opts.launch_offset * vy};
        y0 = {c.X + path.dev_[0], c.Y + path.dev_[1]};
    } else {
        const double q = 2.0 * (1.0 + m) / ((1.0 - m) * (1.0 - m));
        const double d1 = q / beta;
        const double d2 = -(1.0 + 3.0 * m) / (1.0 - m) * d1 / beta;
        // X - X* ~ d1 / Y on the slow manifold.
        const double YL = std::max(1e3, d1 / (opts.launch_rel * std::abs(xs)));
        y0 = {xs + d1 / YL + d2 / (YL * YL), YL};
    }
    path.launch_ = y0;

    auto rhs = [&](double, const ode::State<2>& y) -> ode::State<2> {
        const auto f = phase_field(y[0], y[1], alpha, beta, m);
        return {f[0], f[1]};
    };
    auto stop = [&](double eta, const ode::State<2>& y) {
        if (y[0] < xs - kRegionSlack || y[0] > kRegionSlack || y[1] < -1e-12) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "separatrix left the invariant region at eta=%.6g (X=%.6g, Y=%.6g)", eta,
                          y[0], y[1]);
            throw NumericalFailure(buf);
        }
        return y[1] < opts.y_stop;
    };
    ode::Tolerances tol;
    tol.rtol = opts.rtol;
    tol.atol = opts.atol;
    tol.h_max = 0.5;
    auto sol = ode::integrate<2>(rhs, 0.0, y0, -1e6, tol, {}, stop);
    if (sol.reason != ode::StopReason::Predicate) {
        throw NumericalFailure("separatrix: backward integration did not reach A");
    }

    const auto& segs = sol.trajectory.segments();
    path.points.reserve(segs.size() + 1);
    path.points.push_back({sol.t, sol.y[0], sol.y[1]});
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
        const auto& s = it->coef[0];
        path.points.push_back({it->t0, s[0], s[1]});
    }
    path.eta_near_A = sol.t;
    path.eta_launch = 0.0;
    path.traj_ = std::make_shared<ode::DenseTrajectory<2>>(std::move(sol.trajectory));
    return path;
}

double SimilarityProfile::X(double xi) const {
    return path->at(std::log(xi) + log_shift).X;
}

double SimilarityProfile::f(double xi) const {
    const double m = exponents.m;
    const PhasePoint pt = path->at(std::log(xi) + log_shift);
    return std::exp((std::log(m) + std::log(pt.Y) - 2.0 * std::log(xi)) / (1.0 - m));
}

double SimilarityProfile::df(double xi) const { return f(xi) * X(xi) / xi; }

SimilarityProfile reconstruct_profile(const PhasePath& path, double f0, const ReconstructOptions& opts) {
    require(f0 > 0.0 && std::isfinite(f0), "f0 must be positive");
    require(opts.xi_min > 0.0 && opts.xi_max > opts.xi_min && opts.samples >= 2,
            "invalid reconstruction grid");
    const double m = path.exponents.m;

    SimilarityProfile prof;
    prof.exponents = path.exponents;
    prof.f0 = f0;
    prof.asymptotic_class = path.exponents.closure == Closure::PowerSubcritical
                                ? AsymptoticClass::PurePower
                                : AsymptoticClass::LogCorrected;
    // f_lambda(xi) = lambda^{2/(1-m)} f(lambda xi) has f_lambda(0) = f0.
    prof.log_shift = 0.5 * ((1.0 - m) * std::log(f0) - path.log_origin_limit());
    prof.path = std::make_shared<const PhasePath>(path);

    const double lmin = std::log(opts.xi_min);
    const double lmax = std::log(opts.xi_max);
    prof.samples.reserve(opts.samples);
    for (std::size_t i = 0; i < opts.samples; ++i) {
        const double le = lmin + (lmax - lmin) * static_cast<double>(i) / (opts.samples - 1);
        const double xi = std::exp(le);
        const PhasePoint pt = prof.path->at(le + prof.log_shift);
        const double f = std::exp((std::log(m) + std::log(pt.Y) - 2.0 * le) / (1.0 - m));
        if (!prof.samples.empty() && !(f < prof.samples.back().f)) {
            throw NumericalFailure("reconstructed profile is not decreasing");
        }
        prof.samples.push_back({xi, f, pt.X});
    }
    return prof;
}

double supersolution_residual(double alpha, double beta, std::span<const double> f,
                              std::span<const double> X) {
    require(f.size() == X.size(), "supersolution_residual: size mismatch");
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.size(); ++i) {
        r = std::min(r, f[i] * (alpha + beta * X[i]));
    }
    return r;
}

double supersolution_residual(const SimilarityProfile& profile) {
    std::vector<double> f, X;
    f.reserve(profile.samples.size());
    X.reserve(profile.samples.size());
    for (const auto& s : profile.samples) {
        f.push_back(s.f);
        X.push_back(s.X);
    }
    return supersolution_residual(profile.exponents.alpha, profile.exponents.beta, f, X);
}

// ---------------------------------------------------------------------------

std::string to_string(SeparableClass c) {
    return c == SeparableClass::CrossesZero ? "crosses-zero" : "positive-unbounded";
}

SeparableResult separable_profile_pm(double m, double lambda, double L) {
    check_m(m);
    require(lambda >= 0.0 && std::isfinite(lambda), "lambda must be non-negative");
    require(L > 0.0 && std::isfinite(L), "L must be positive");
    const double inv_m = 1.0 / m;

    SeparableResult res;
    ode::Tolerances tol;
    tol.rtol = 1e-10;
    tol.atol = 1e-13;

    auto record = [&](const ode::Solution<2>& sol) {
        for (const auto& seg : sol.trajectory.segments()) {
            const double w = seg.coef[0][0];
            res.samples.push_back({seg.t0, std::pow(std::max(w, 0.0), inv_m), seg.coef[0][1]});
        }
    };

    // (phi^m)'' = lambda phi - a(r) phi^m, written for w = phi^m.
    auto inside = [&](double, const ode::State<2>& y) -> ode::State<2> {
        const double w = std::max(y[0], 0.0);
        return {y[1], lambda * std::pow(w, inv_m) - w};
    };
    auto outside = [&](double, const ode::State<2>& y) -> ode::State<2> {
        const double w = std::max(y[0], 0.0);
        return {y[1], lambda * std::pow(w, inv_m)};
    };
    const ode::Event<2> zero{[](double, const ode::State<2>& y) { return y[0]; },
                             ode::Crossing::Falling};

    {
        const std::array<ode::Event<2>, 1> ev{zero};
        auto sol = ode::integrate<2>(inside, 0.0, {1.0, 0.0}, L, tol, ev);
        record(sol);
        if (sol.reason == ode::StopReason::Event) {
            res.classification = SeparableClass::CrossesZero;
            res.R = sol.t;
            res.r_end = sol.t;
            res.samples.push_back({sol.t, 0.0, sol.y[1]});
            return res;
        }
        if (sol.reason != ode::StopReason::ReachedEnd) {
            throw NumericalFailure("separable profile: integration failed inside the interval");
        }
        res.w_at_L = sol.y[0];
        res.s_at_L = sol.y[1];
    }

    const ode::Event<2> cap{[](double, const ode::State<2>& y) { return y[0] - kSeparableCap; },
                            ode::Crossing::Rising};
    const std::array<ode::Event<2>, 2> ev{zero, cap};
    // Beyond L, s' >= 0: once s > 0 the profile grows without bound.
    auto stop = [](double, const ode::State<2>& y) { return y[1] > 0.0; };
    auto sol = ode::integrate<2>(outside, L, {res.w_at_L, res.s_at_L}, kRadiusCap, tol, ev, stop);
    record(sol);
    res.r_end = sol.t;
    res.samples.push_back({sol.t, std::pow(std::max(sol.y[0], 0.0), inv_m), sol.y[1]});
    if (sol.reason == ode::StopReason::Event && sol.event_index == 0) {
        res.classification = SeparableClass::CrossesZero;
        res.R = sol.t;
        return res;
    }
    if (sol.reason == ode::StopReason::StepUnderflow || sol.reason == ode::StopReason::MaxSteps) {
        throw NumericalFailure("separable profile: integration failed beyond L");
    }
    // Cap crossing, turning point, or R > 1e6 (read as R = infinity).
    res.classification = SeparableClass::PositiveUnbounded;
    return res;
}

LambdaStarResult lambda_star(double m, double L, double tol) {
    require(tol > 0.0, "tolerance must be positive");
    LambdaStarResult out;
    auto classify = [&](double lam) {
        const auto r = separable_profile_pm(m, lam, L);
        out.history.push_back(
            {lam, r.classification, r.R.value_or(std::numeric_limits<double>::infinity())});
        return r.classification;
    };
    double lo = 0.0;
    double hi = 1.0;
    if (classify(lo) != SeparableClass::CrossesZero) {
        throw NumericalFailure("lambda_star: lambda = 0 does not cross zero");
    }
    if (classify(hi) != SeparableClass::PositiveUnbounded) {
        throw NumericalFailure("lambda_star: lambda = 1 is not unbounded");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (classify(mid) == SeparableClass::CrossesZero) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.lo = lo;
    out.hi = hi;
    out.lambda_star = 0.5 * (lo + hi);
    return out;
}

// ---------------------------------------------------------------------------

CompactProfile compact_reaction_profile(double m, double p, double L, std::size_t n_samples) {
    require(m > 0.0 && std::isfinite(m), "m must be positive");
    require(p > m, "compact reaction profile requires p > m");
    require(p <= 1.0 + kClosureTol, "compact reaction profile requires p <= 1");
    require(L > 0.0 && std::isfinite(L), "L must be positive");
    require(n_samples >= 2, "need at least two samples");
    const double q = p / m;

    auto rhs = [q](double, const ode::State<2>& y) -> ode::State<2> {
        return {y[1], -std::pow(std::max(y[0], 0.0), q)};
    };
    const std::array<ode::Event<2>, 1> ev{
        ode::Event<2>{[](double, const ode::State<2>& y) { return y[0]; }, ode::Crossing::Falling}};
    ode::Tolerances tol;
    tol.rtol = 1e-12;
    tol.atol = 1e-14;
    auto sol = ode::integrate<2>(rhs, 0.0, {1.0, 0.0}, 1e3, tol, ev);
    if (sol.reason != ode::StopReason::Event) {
        throw NumericalFailure("compact reaction profile: no zero found");
    }

    CompactProfile out;
    out.m = m;
    out.p = p;
    out.L = L;
    out.R0 = sol.t;
    out.A = std::pow(out.R0 / L, 2.0 / (p - m));
    const double k = std::pow(out.A, 0.5 * (p - m));
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = L * static_cast<double>(i) / (n_samples - 1);
        double phi = 0.0;
        if (i + 1 < n_samples) {
            const double w = sol.trajectory.at(k * x)[0];
            phi = out.A * std::pow(std::max(w, 0.0), 1.0 / m);
        }
        out.samples.push_back({x, phi});
    }
    return out;
}

std::vector<std::array<double, 2>> integrate_psi(double m, double p, double A, double psi0,
                                                 double t_end, std::size_t n_samples) {
    require(psi0 > 1.0, "psi(0) must exceed 1");
    require(A > 0.0 && t_end > 0.0 && n_samples >= 2, "invalid psi integration request");
    const double scale = std::pow(A, 1.0 - p);
    auto rhs = [&](double, const ode::State<1>& y) -> ode::State<1> {
        return {(std::pow(y[0], p) - std::pow(y[0], m)) / scale};
    };
    ode::Tolerances tol;
    tol.rtol = 1e-11;
    tol.atol = 1e-14;
    auto sol = ode::integrate<1>(rhs, 0.0, {psi0}, t_end, tol);
    if (sol.reason != ode::StopReason::ReachedEnd) {
        throw NumericalFailure("psi integration failed");
    }
    std::vector<std::array<double, 2>> out;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = t_end * static_cast<double>(i) / (n_samples - 1);
        out.push_back({t, i == 0 ? psi0 : sol.trajectory.at(t)[0]});
    }
    return out;
}

}  // namespace growup::selfsim
