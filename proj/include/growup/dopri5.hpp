#pragma once

// Dormand-Prince 5(4) with Hairer's continuous extension, event location on
// the dense output, and a trajectory object that can be evaluated anywhere
// inside the integrated range. Integration runs forward or backward
// depending on the sign of (t_end - t0).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "growup/error.hpp"

namespace growup::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Tolerances {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_init = 0.0;  // 0 selects an automatic initial step
    double h_max = std::numeric_limits<double>::infinity();
    double h_min = 1e-14;  // relative to max(1, |t|)
    std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    std::array<State<N>, 5> coef{};

    State<N> eval(double t) const {
        const double theta = (t - t0) / h;
        const double theta1 = 1.0 - theta;
        State<N> y{};
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = coef[0][i] +
                   theta * (coef[1][i] +
                            theta1 * (coef[2][i] + theta * (coef[3][i] + theta1 * coef[4][i])));
        }
        return y;
    }
};

template <std::size_t N>
class DenseTrajectory {
public:
    void push(const DenseSegment<N>& seg) { segments_.push_back(seg); }

    bool empty() const { return segments_.empty(); }
    double t_begin() const { return segments_.front().t0; }
    double t_end() const { return t_end_; }
    void set_t_end(double t) { t_end_ = t; }
    std::size_t size() const { return segments_.size(); }
    const std::vector<DenseSegment<N>>& segments() const { return segments_; }

    bool contains(double t) const {
        const double a = std::min(t_begin(), t_end_);
        const double b = std::max(t_begin(), t_end_);
        return t >= a && t <= b;
    }

    State<N> at(double t) const {
        if (segments_.empty()) {
            throw NumericalFailure("DenseTrajectory::at on empty trajectory");
        }
        const bool forward = segments_.front().h > 0.0;
        // Segments are ordered along the integration direction.
        auto it = std::partition_point(segments_.begin(), segments_.end(),
                                       [&](const DenseSegment<N>& s) {
                                           const double end = s.t0 + s.h;
                                           return forward ? end < t : end > t;
                                       });
        if (it == segments_.end()) {
            --it;
        }
        return it->eval(t);
    }

private:
    std::vector<DenseSegment<N>> segments_;
    double t_end_ = 0.0;
};

enum class Crossing { Any, Rising, Falling };

// Terminal event: integration stops at the first zero of g in the
// requested direction, located by bisection on the dense output.
template <std::size_t N>
struct Event {
    std::function<double(double, const State<N>&)> g;
    Crossing crossing = Crossing::Any;
};

enum class StopReason { ReachedEnd, Event, Predicate, StepUnderflow, MaxSteps };

template <std::size_t N>
struct Solution {
    DenseTrajectory<N> trajectory;
    double t = 0.0;
    State<N> y{};
    StopReason reason = StopReason::ReachedEnd;
    int event_index = -1;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

namespace detail {

template <std::size_t N>
bool all_finite(const State<N>& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N>
double error_norm(const State<N>& y0, const State<N>& y1, const State<N>& err,
                  const Tolerances& tol) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sk = tol.atol + tol.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = err[i] / sk;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(N));
}

inline bool crossed(double g0, double g1, Crossing c) {
    if (!std::isfinite(g0) || !std::isfinite(g1)) {
        return false;
    }
    const bool rising = g0 < 0.0 && g1 >= 0.0;
    const bool falling = g0 > 0.0 && g1 <= 0.0;
    switch (c) {
        case Crossing::Rising: return rising;
        case Crossing::Falling: return falling;
        default: return rising || falling;
    }
}

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t_end. `stop` is consulted after every
/// accepted step; returning true ends the integration with
/// StopReason::Predicate at the step end.
template <std::size_t N, class Rhs>
Solution<N> integrate(Rhs&& f, double t0, const State<N>& y0, double t_end,
                      const Tolerances& tol, std::span<const Event<N>> events = {},
                      const std::function<bool(double, const State<N>&)>& stop = {}) {
    // Butcher tableau (Dormand & Prince 1980).
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                     a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    Solution<N> sol;
    sol.t = t0;
    sol.y = y0;
    sol.trajectory.set_t_end(t0);
    if (t_end == t0) {
        return sol;
    }
    const double dir = t_end > t0 ? 1.0 : -1.0;
    const double span_len = std::abs(t_end - t0);

    State<N> k1 = f(t0, y0);
    if (!detail::all_finite(k1)) {
        throw NumericalFailure("dopri5: non-finite derivative at initial point");
    }

    double h = tol.h_init;
    if (h <= 0.0) {
        // Hairer's heuristic for the starting step.
        double d0 = 0.0, d1n = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = tol.atol + tol.rtol * std::abs(y0[i]);
            d0 += (y0[i] / sk) * (y0[i] / sk);
            d1n += (k1[i] / sk) * (k1[i] / sk);
        }
        d0 = std::sqrt(d0 / N);
        d1n = std::sqrt(d1n / N);
        h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
        h = std::min({h, span_len, tol.h_max});
    }
    h = std::min(h, tol.h_max);

    std::vector<double> g_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) {
        g_prev[e] = events[e].g(t0, y0);
    }

    double t = t0;
    State<N> y = y0;
    State<N> yt{}, k2{}, k3{}, k4{}, k5{}, k6{}, k7{}, y1{}, err{};
    while (true) {
        if (sol.accepted_steps + sol.rejected_steps >= tol.max_steps) {
            sol.reason = StopReason::MaxSteps;
            break;
        }
        const double h_floor = tol.h_min * std::max(1.0, std::abs(t));
        if (h < h_floor) {
            sol.reason = StopReason::StepUnderflow;
            break;
        }
        bool last = false;
        if (h >= std::abs(t_end - t)) {
            h = std::abs(t_end - t);
            last = true;
        }
        const double hs = dir * h;

        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * a21 * k1[i];
        k2 = f(t + c2 * hs, yt);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(t + c3 * hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(t + c4 * hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(t + c5 * hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] +
                    hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = f(t + hs, yt);
        for (std::size_t i = 0; i < N; ++i)
            y1[i] = y[i] +
                    hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = f(t + hs, y1);
        for (std::size_t i = 0; i < N; ++i)
            err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                           e7 * k7[i]);

        double en = detail::error_norm(y, y1, err, tol);
        if (!std::isfinite(en) || !detail::all_finite(y1) || !detail::all_finite(k7)) {
            en = std::numeric_limits<double>::infinity();
        }
        if (en > 1.0) {
            ++sol.rejected_steps;
            const double fac = std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.1;
            h *= fac;
            continue;
        }

        DenseSegment<N> seg;
        seg.t0 = t;
        seg.h = hs;
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = y1[i] - y[i];
            const double bspl = hs * k1[i] - ydiff;
            seg.coef[0][i] = y[i];
            seg.coef[1][i] = ydiff;
            seg.coef[2][i] = bspl;
            seg.coef[3][i] = ydiff - hs * k7[i] - bspl;
            seg.coef[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                   d6 * k6[i] + d7 * k7[i]);
        }
        const double t_new = last ? t_end : t + hs;
        sol.trajectory.push(seg);
        sol.trajectory.set_t_end(t_new);
        ++sol.accepted_steps;

        // Earliest event inside this step wins.
        int fired = -1;
        double t_fire = t_new;
        for (std::size_t e = 0; e < events.size(); ++e) {
            const double g_new = events[e].g(t_new, y1);
            if (detail::crossed(g_prev[e], g_new, events[e].crossing)) {
                double lo = t, hi = t_new;
                double g_lo = g_prev[e];
                for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(t)); ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = events[e].g(mid, seg.eval(mid));
                    if ((gm < 0.0) == (g_lo < 0.0) && gm != 0.0) {
                        lo = mid;
                        g_lo = gm;
                    } else {
                        hi = mid;
                    }
                }
                const bool earlier = dir > 0 ? hi < t_fire : hi > t_fire;
                if (fired < 0 || earlier) {
                    fired = static_cast<int>(e);
                    t_fire = hi;
                }
            }
            g_prev[e] = g_new;
        }
        if (fired >= 0) {
            sol.t = t_fire;
            sol.y = seg.eval(t_fire);
            sol.trajectory.set_t_end(t_fire);
            sol.reason = StopReason::Event;
            sol.event_index = fired;
            return sol;
        }

        t = t_new;
        y = y1;
        k1 = k7;
        sol.t = t;
        sol.y = y;

        if (stop && stop(t, y)) {
            sol.reason = StopReason::Predicate;
            return sol;
        }
        if (last) {
            sol.reason = StopReason::ReachedEnd;
            return sol;
        }
        const double fac = en > 0.0 ? std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0) : 5.0;
        h = std::min(h * fac, tol.h_max);
    }
    return sol;
}

}  // namespace growup::ode
