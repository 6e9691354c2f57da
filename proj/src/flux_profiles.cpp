#include "growup/flux_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growup/error.hpp"

namespace growup::flux {

std::string to_string(ProfileKind k) { return k == ProfileKind::Power ? "power" : "exponential"; }

std::string to_string(FluxClass c) {
    switch (c) {
        case FluxClass::CrossesZero: return "crosses-zero";
        case FluxClass::PositiveMinimumUnbounded: return "positive-minimum-then-unbounded";
        case FluxClass::CompactSupport: return "nonnegative-compact-support";
    }
    return "unknown";
}

FluxSample FluxProfile::at(double xi) const {
    require(xi >= 0.0 && xi <= xi_end, "flux profile evaluated outside [0, xi_end]");
    if (!tail_ || xi <= xi_switch_) {
        if (traj_->empty()) {
            return samples.front();
        }
        const auto y = traj_->at(xi);
        return {xi, y[0], y[1]};
    }
    if (growth_ && xi >= resume_xi_) {
        const auto y = growth_->at(xi);
        return {xi, y[0], y[1]};
    }
    // Invert the monotone map F -> xi of the small-F segment.
    double lo = tail_->t_end();
    double hi = tail_->t_begin();
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tail_->at(mid)[0] > xi) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double F = 0.5 * (lo + hi);
    return {xi, F, tail_->at(F)[1]};
}

double FluxProfile::flux_residual() const {
    return -samples.front().s - K * std::pow(samples.front().F, p);
}

double flux_alpha(double m, double p) {
    require(m > 0.0 && p > 0.0, "m and p must be positive");
    require(p < m, "flux construction requires p < m");
    require(m + 1.0 - 2.0 * p > 0.0, "flux construction requires p < (m+1)/2");
    return 1.0 / (m + 1.0 - 2.0 * p);
}

double energy_threshold(double m, double p, double rate, double K) {
    require(m + 1.0 - 2.0 * p > 0.0, "energy threshold requires p < (m+1)/2");
    require(rate > 0.0, "rate must be positive");
    return std::pow(K * K * (m + 1.0) / (2.0 * rate * m), 1.0 / (m + 1.0 - 2.0 * p));
}

double minimum_lower_bound(double m, double p, double rate, double K, double A, double c) {
    const double factor = 1.0 - c * (m + 1.0) * K * K * std::pow(A, 2.0 * p - m - 1.0) / (rate * m);
    if (factor <= 0.0) {
        return 0.0;
    }
    return A * std::pow(factor, 1.0 / (m + 1.0));
}

FluxProfile integrate_F(double m, double p, double rate, double K, double A, ProfileKind kind) {
    require(m > 0.0 && std::isfinite(m), "m must be positive");
    require(p > 0.0 && p < m, "flux profiles require 0 < p < m");
    require(rate > 0.0 && std::isfinite(rate), "rate must be positive");
    require(K >= 0.0 && std::isfinite(K), "K must be non-negative");
    require(A > 0.0 && std::isfinite(A), "A must be positive");

    FluxProfile prof;
    prof.kind = kind;
    prof.m = m;
    prof.p = p;
    prof.rate = rate;
    prof.K = K;
    prof.A = A;

    // For m > 1 the xi-form is singular at F = 0 (F' ~ F^{1-m}); below
    // F_switch the integration continues with F as the independent variable.
    const double floor_F = m > 1.0 ? kSwitchFraction * A : kZeroFloor * A;
    auto rhs = [=](double xi, const ode::State<2>& y) -> ode::State<2> {
        const double F = y[0] > 0.0 ? y[0] : 1e-6 * kZeroFloor * A;
        const double dF = y[1] * std::pow(F, 1.0 - m) / m;
        return {dF, rate * y[0] - (m - p) * rate * xi * dF};
    };
    ode::Tolerances tol;
    tol.rtol = 1e-10;
    tol.atol = 1e-14 * A;
    const double xi_max = 1e15;

    auto traj = std::make_shared<ode::DenseTrajectory<2>>();
    auto merge = [&](const ode::Solution<2>& sol) {
        for (const auto& seg : sol.trajectory.segments()) {
            prof.samples.push_back({seg.t0, seg.coef[0][0], seg.coef[0][1]});
            traj->push(seg);
        }
        traj->set_t_end(sol.t);
    };

    ode::State<2> y{A, -K * std::pow(A, p)};
    double xi = 0.0;

    const ode::Event<2> hits_floor{[=](double, const ode::State<2>& s) { return s[0] - floor_F; },
                                   ode::Crossing::Falling};
    const ode::Event<2> turns{[](double, const ode::State<2>& s) { return s[1]; },
                              ode::Crossing::Rising};
    const ode::Event<2> hits_cap{[](double, const ode::State<2>& s) { return s[0] - kUnboundedCap; },
                                 ode::Crossing::Rising};

    bool found_min = false;
    if (y[1] >= 0.0) {
        found_min = true;
        prof.xi_min = 0.0;
        prof.F_min = A;
    } else {
        const std::array<ode::Event<2>, 2> ev{hits_floor, turns};
        auto sol = ode::integrate<2>(rhs, 0.0, y, xi_max, tol, ev);
        merge(sol);
        xi = sol.t;
        y = sol.y;
        if (sol.reason != ode::StopReason::Event) {
            throw NumericalFailure("flux profile: integration ended without classification");
        }
        if (sol.event_index == 1) {
            found_min = true;
            prof.xi_min = xi;
            prof.F_min = y[0];
        } else if (m <= 1.0) {
            prof.classification = FluxClass::CrossesZero;
            // (F^m)' is finite at the zero, so F^m vanishes about F^m / |s| further on.
            prof.support_edge = xi + std::pow(y[0], m) / std::abs(y[1]);
        } else {
            // State (xi, s) against F, from F_switch down to 0:
            //   dxi/dF = m F^{m-1} / s,  ds/dF = rate m F^m / s - (m-p) rate xi.
            auto rhs_F = [=](double F, const ode::State<2>& z) -> ode::State<2> {
                const double Fp = std::max(F, 0.0);
                return {m * std::pow(Fp, m - 1.0) / z[1],
                        rate * m * std::pow(Fp, m) / z[1] - (m - p) * rate * z[0]};
            };
            const std::array<ode::Event<2>, 1> ev_s{ode::Event<2>{
                [](double, const ode::State<2>& z) { return z[1]; }, ode::Crossing::Rising}};
            ode::Tolerances tol_F;
            tol_F.rtol = 1e-10;
            tol_F.atol = 1e-14 * std::max(1.0, xi);
            auto solF = ode::integrate<2>(rhs_F, y[0], {xi, y[1]}, 0.0, tol_F, ev_s);
            auto tail = std::make_shared<ode::DenseTrajectory<2>>();
            for (const auto& seg : solF.trajectory.segments()) {
                prof.samples.push_back({seg.coef[0][0], seg.t0, seg.coef[0][1]});
                tail->push(seg);
            }
            tail->set_t_end(solF.t);
            prof.xi_switch_ = xi;
            prof.tail_ = tail;
            xi = solF.y[0];
            if (solF.reason == ode::StopReason::ReachedEnd) {
                prof.classification = FluxClass::CrossesZero;
                prof.support_edge = xi;
                y = {0.0, solF.y[1]};
            } else {
                // (F^m)' reached zero above F = 0: a positive minimum.
                found_min = true;
                y = {solF.t, std::max(solF.y[1], 0.0)};
                prof.xi_min = xi;
                prof.F_min = solF.t;
                prof.samples.push_back({xi, y[0], y[1]});
                prof.resume_xi_ = xi;
            }
        }
    }

    if (found_min) {
        // Past a minimum F cannot turn down again: at (F^m)' = 0 the equation
        // gives (F^m)'' = rate F > 0. The growth run only has to demonstrate
        // the cap crossing; near-critical profiles (tiny F_min) make it stiff,
        // so it runs on a step budget.
        prof.classification = FluxClass::PositiveMinimumUnbounded;
        const std::array<ode::Event<2>, 1> ev{hits_cap};
        ode::Tolerances tol_g = tol;
        tol_g.max_steps = kGrowthStepBudget;
        auto sol = ode::integrate<2>(rhs, xi, y, xi_max, tol_g, ev);
        if (prof.tail_) {
            prof.growth_ = std::make_shared<ode::DenseTrajectory<2>>(std::move(sol.trajectory));
            for (const auto& seg : prof.growth_->segments()) {
                prof.samples.push_back({seg.t0, seg.coef[0][0], seg.coef[0][1]});
            }
        } else {
            merge(sol);
        }
        xi = sol.t;
        y = sol.y;
        prof.reached_cap = sol.reason == ode::StopReason::Event;
        if (!prof.reached_cap && sol.reason != ode::StopReason::MaxSteps) {
            throw NumericalFailure("flux profile: integration failed past the minimum");
        }
    }
    if (prof.samples.empty() || prof.samples.back().xi != xi) {
        prof.samples.push_back({xi, y[0], y[1]});
    }
    prof.xi_end = xi;
    prof.traj_ = traj;
    return prof;
}

std::vector<EnergyPoint> profile_energy(const FluxProfile& profile) {
    const double c = profile.rate * profile.m / (profile.m + 1.0);
    std::vector<EnergyPoint> out;
    out.reserve(profile.samples.size());
    for (const auto& s : profile.samples) {
        out.push_back({s.xi, 0.5 * s.s * s.s - c * std::pow(std::max(s.F, 0.0), profile.m + 1.0)});
    }
    return out;
}

bool energy_nonincreasing(const std::vector<EnergyPoint>& series, double rel_slack) {
    double scale = 0.0;
    for (const auto& e : series) {
        scale = std::max(scale, std::abs(e.E));
    }
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i].E > series[i - 1].E + rel_slack * scale) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

double subsolution_gamma(double m) {
    require(m > 0.0, "m must be positive");
    return m <= 1.0 ? 2.0 / m : 1.0 / (m - 1.0);
}

double subsolution_B(double m, double p, double K, double A) {
    const double g = subsolution_gamma(m);
    // -(F^m)'(0) = g m B A^{g m - 1} must equal K F(0)^p = K A^{g p}.
    return K / (g * m) * std::pow(A, g * (p - m) + 1.0);
}

double ExplicitSubsolution::F(double xi) const {
    return std::pow(std::max(A - B * xi, 0.0), gamma);
}

ExplicitSubsolution explicit_subsolution(double m, double p, double K, double A,
                                         std::size_t n_samples) {
    require(K > 0.0 && A > 0.0, "K and A must be positive");
    require(n_samples >= 3, "need at least three samples");
    ExplicitSubsolution sub;
    sub.m = m;
    sub.p = p;
    sub.K = K;
    sub.A = A;
    sub.alpha = flux_alpha(m, p);
    sub.gamma = subsolution_gamma(m);
    sub.B = subsolution_B(m, p, K, A);
    sub.support_edge = A / sub.B;

    const double g = sub.gamma;
    const double B = sub.B;
    const double gm = g * m;
    const double flux = g * m * B * std::pow(A, gm - 1.0);
    const double target = K * std::pow(A, g * p);
    sub.flux_residual = (flux - target) / target;

    // lhs / rhs with rhs = (F^m)'' = g m (g m - 1) B^2 z^{g m - 2} > 0 and
    // lhs = alpha (F - (m-p) xi F') = alpha z^{g-1} (z + (m-p) g B xi).
    sub.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < n_samples; ++i) {
        const double xi = sub.support_edge * static_cast<double>(i) / (n_samples - 1);
        const double z = A - B * xi;
        const double ratio = sub.alpha * std::pow(z, g * (1.0 - m) + 1.0) *
                             (z + (m - p) * g * B * xi) / (gm * (gm - 1.0) * B * B);
        sub.max_violation = std::max(sub.max_violation, ratio - 1.0);
    }
    sub.satisfied = sub.max_violation <= 0.0 && std::abs(sub.flux_residual) <= 1e-12;
    return sub;
}

// ---------------------------------------------------------------------------

FluxProfile integrate_G(double m, double beta) {
    require(m > 1.0, "critical shooting requires m > 1");
    require(beta > 0.0, "beta must be positive");
    return integrate_F(m, 0.5 * (m + 1.0), beta, 1.0, 1.0, ProfileKind::Exponential);
}

BetaStarResult shoot_beta_star(double m, double tol) {
    require(m > 1.0 && std::isfinite(m), "beta* shooting requires m > 1");
    require(tol > 0.0, "tolerance must be positive");
    BetaStarResult res;
    res.m = m;
    res.p = 0.5 * (m + 1.0);
    res.C_m = (m - 1.0) * (m - 1.0) / (2.0 * m * (m + 1.0));

    auto unbounded = [&](double beta) {
        const FluxClass c = integrate_G(m, beta).classification;
        res.history.push_back({beta, c});
        return c == FluxClass::PositiveMinimumUnbounded;
    };

    double lo = 0.0;
    double hi = 0.0;
    constexpr int kMaxDoublings = 60;
    const double seed = 1.0;
    if (unbounded(seed)) {
        hi = seed;
        lo = seed;
        int k = 0;
        while (unbounded(lo *= 0.5)) {
            hi = lo;
            if (++k > kMaxDoublings) {
                throw NumericalFailure("beta* bracket failure: unbounded for beta down to " +
                                       std::to_string(lo));
            }
        }
    } else {
        lo = seed;
        hi = seed;
        int k = 0;
        while (!unbounded(hi *= 2.0)) {
            lo = hi;
            if (++k > kMaxDoublings) {
                throw NumericalFailure("beta* bracket failure: crosses zero for beta up to " +
                                       std::to_string(hi));
            }
        }
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (unbounded(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        ++res.iterations;
    }
    res.lo = lo;
    res.hi = hi;
    res.beta_star = 0.5 * (lo + hi);

    double max_cross = -std::numeric_limits<double>::infinity();
    double min_unb = std::numeric_limits<double>::infinity();
    for (const auto& st : res.history) {
        if (st.classification == FluxClass::PositiveMinimumUnbounded) {
            min_unb = std::min(min_unb, st.beta);
        } else {
            max_cross = std::max(max_cross, st.beta);
        }
    }
    res.monotone = max_cross < min_unb;

    res.critical_profile = integrate_G(m, lo);
    res.critical_profile.classification = FluxClass::CompactSupport;
    double ratio = std::numeric_limits<double>::infinity();
    for (const auto& s : res.critical_profile.samples) {
        if (!(s.F > 0.0)) {
            continue;
        }
        const double dG = s.s * std::pow(s.F, 1.0 - m) / m;
        const double d = 0.5 * (m - 1.0) * std::pow(s.F, 0.5 * (m - 3.0)) * dG;
        ratio = std::min(ratio, d * d / (res.C_m * lo));
    }
    res.gradient_bound_ratio = ratio;
    return res;
}

// ---------------------------------------------------------------------------

namespace {

double profile_value(const FluxProfile& prof, double xi) {
    if (xi <= prof.xi_end) {
        return std::max(prof.at(xi).F, 0.0);
    }
    if (prof.classification == FluxClass::PositiveMinimumUnbounded) {
        // Large-xi growth F ~ xi^{1/(m-p)}.
        const auto& last = prof.samples.back();
        return last.F * std::pow(xi / last.xi, 1.0 / (prof.m - prof.p));
    }
    return 0.0;
}

}  // namespace

FieldFn similarity_field(const FluxProfile& profile) {
    const double r = profile.rate;
    const double mp = profile.m - profile.p;
    if (profile.kind == ProfileKind::Power) {
        return [profile, r, mp](double x, double t) {
            return std::pow(t, r) * profile_value(profile, std::abs(x) * std::pow(t, -mp * r));
        };
    }
    return [profile, r, mp](double x, double t) {
        return std::exp(r * t) * profile_value(profile, std::abs(x) * std::exp(-mp * r * t));
    };
}

FieldFn similarity_field(const ExplicitSubsolution& sub) {
    return [sub](double x, double t) {
        return std::pow(t, sub.alpha) * sub.F(std::abs(x) * std::pow(t, -(sub.m - sub.p) * sub.alpha));
    };
}

double matched_w(const FieldFn& V, double m, double p, double K, double L, double x, double t) {
    const double ax = std::abs(x);
    if (ax <= L) {
        const double v0 = V(0.0, t);
        return std::pow(std::pow(v0, m) + K / (2.0 * L) * std::pow(v0, p) * (L * L - ax * ax),
                        1.0 / m);
    }
    return V(ax - L, t);
}

MatchedDiagnostics matched_w_diagnostics(const FieldFn& V, double m, double p, double K, double L,
                                         double t, std::size_t n_samples) {
    require(K > 0.0 && L > 0.0 && t > 0.0, "matched_w needs K, L, t > 0");
    require(n_samples >= 2, "need at least two samples");
    MatchedDiagnostics d;
    const double v0 = V(0.0, t);
    d.jump_value = std::abs(matched_w(V, m, p, K, L, L, t) - V(0.0, t));

    // Left slope of w^m at L is -K V0^p; right slope from a one-sided
    // second-order difference of V^m at 0+.
    const double h = 1e-6 * L;
    auto vm = [&](double x) { return std::pow(V(x, t), m); };
    const double right = (-3.0 * vm(0.0) + 4.0 * vm(h) - vm(2.0 * h)) / (2.0 * h);
    const double left = -K * std::pow(v0, p);
    d.jump_slope = std::abs(left - right);

    const double dt = 1e-5 * t;
    const double wmxx = -(K / L) * std::pow(v0, p);
    d.max_residual = -std::numeric_limits<double>::infinity();
    d.min_residual = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double x = L * static_cast<double>(i) / (n_samples - 1);
        const double w = matched_w(V, m, p, K, L, x, t);
        const double wt = (matched_w(V, m, p, K, L, x, t + dt) - matched_w(V, m, p, K, L, x, t - dt)) /
                          (2.0 * dt);
        const double r = wt - wmxx - std::pow(w, p);
        d.residual.push_back({x, r});
        d.max_residual = std::max(d.max_residual, r);
        d.min_residual = std::min(d.min_residual, r);
    }
    return d;
}

// ---------------------------------------------------------------------------

PkCheck pk_subsolution_details(double m, double B, std::size_t n_samples) {
    require(m > 0.0 && m < 1.0, "pk_subsolution_check requires 0 < m < 1");
    require(B > 0.0 && std::isfinite(B), "B must be positive");
    require(n_samples >= 3, "need at least three samples");
    PkCheck out;
    out.min_value = std::numeric_limits<double>::infinity();
    const double edge = 1.0 / (B * B);
    for (std::size_t i = 1; i + 1 < n_samples; ++i) {
        const double xi = edge * static_cast<double>(i) / (n_samples - 1);
        const double g = 1.0 - B * std::sqrt(xi);  // F^m
        const double gpp = 0.25 * B * std::pow(xi, -1.5);
        const double dF = -(B / (m * std::sqrt(xi))) * std::pow(g, 2.0 / m - 1.0);
        out.min_value = std::min(out.min_value, (gpp + 0.5 * xi * dF) / gpp);
    }
    out.ok = out.min_value >= 0.0;
    return out;
}

bool pk_subsolution_check(double m, double B) { return pk_subsolution_details(m, B).ok; }

}  // namespace growup::flux
