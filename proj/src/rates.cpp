#include "growup/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growup/error.hpp"
#include "json.hpp"

namespace growup::rates {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

// Least squares about the means, so exact data give exact slopes.
LineFit least_squares(const std::vector<double>& X, const std::vector<double>& Y) {
    const auto n = static_cast<double>(X.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        mx += X[i];
        my += Y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        sxx += (X[i] - mx) * (X[i] - mx);
        sxy += (X[i] - mx) * (Y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw InvalidInput("fit: window holds a single distinct time");
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double r = Y[i] - (f.intercept + f.slope * X[i]);
        ss += r * r;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

RateFit fit(std::span<const double> t, std::span<const double> u, Window window, double probe,
            RateForm form) {
    require(t.size() == u.size(), "fit: time and value columns differ in length");
    require(window.t_lo < window.t_hi, "fit: empty window");
    std::vector<double> X, Y;
    double t_first = 0.0, t_last = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < window.t_lo || t[i] > window.t_hi) continue;
        if (!(u[i] > 0.0) || !std::isfinite(u[i])) {
            throw InvalidInput("fit: non-positive value in the window at t = " + std::to_string(t[i]));
        }
        if (X.empty()) t_first = t[i];
        t_last = t[i];
        if (form == RateForm::Power) {
            require(t[i] > 0.0, "fit: power fits need t > 0");
            X.push_back(std::log(t[i]));
        } else {
            X.push_back(t[i]);
        }
        Y.push_back(std::log(u[i]));
    }
    if (X.size() < 3) {
        throw InvalidInput("fit: fewer than three recorded times in the window");
    }
    if (form == RateForm::Power && t_last < 10.0 * t_first * (1.0 - 1e-12)) {
        throw InvalidInput("fit: power fits need a window spanning a decade");
    }
    const LineFit lf = least_squares(X, Y);
    RateFit r;
    r.law = RateLaw{form, lf.slope};
    r.fitted = lf.slope;
    r.intercept = lf.intercept;
    r.window = {t_first, t_last};
    r.residual = lf.residual;
    r.probe = probe;
    r.points = X.size();
    if (form == RateForm::Exponential) {
        r.pointwise = Y.back() / t_last;
    }
    return r;
}

}  // namespace

Window default_window(const pde::TimeSeries& series, double decades) {
    require(series.rows() > 0, "fit: empty time series");
    require(decades > 0.0, "fit: window must span a positive number of decades");
    const double t_end = series.t.back();
    return {t_end * std::pow(10.0, -decades), t_end};
}

RateFit fit_power(std::span<const double> t, std::span<const double> u, Window window, double probe) {
    return fit(t, u, window, probe, RateForm::Power);
}

RateFit fit_exponential(std::span<const double> t, std::span<const double> u, Window window,
                        double probe) {
    return fit(t, u, window, probe, RateForm::Exponential);
}

RateFit fit_power(const pde::TimeSeries& series, std::size_t probe, Window window) {
    const auto col = series.column(probe);
    return fit_power(series.t, col, window, series.probes[probe]);
}

RateFit fit_exponential(const pde::TimeSeries& series, std::size_t probe, Window window) {
    const auto col = series.column(probe);
    return fit_exponential(series.t, col, window, series.probes[probe]);
}

RateFit fit_for(const RateLaw& predicted, const pde::TimeSeries& series, std::size_t probe,
                Window window) {
    if (predicted.form == RateForm::Power) {
        return fit_power(series, probe, window);
    }
    return fit_exponential(series, probe, window);
}

double flat_bound(double M, double p, double t) {
    require(M > 0.0 && p > 0.0 && t >= 0.0, "flat bound: need M, p > 0 and t >= 0");
    if (std::abs(p - 1.0) <= kExponentTol) {
        return M * std::exp(t);
    }
    const double base = std::pow(M, 1.0 - p) + (1.0 - p) * t;
    if (!(base > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::pow(base, 1.0 / (1.0 - p));
}

FlatBoundCheck check_flat_bound(const pde::TimeSeries& series, double M, double p, double rel_slack) {
    FlatBoundCheck c;
    for (std::size_t k = 0; k < series.rows(); ++k) {
        const double b = flat_bound(M, p, series.t[k]);
        const double ratio = series.max_u[k] / b;
        if (ratio > c.worst_ratio) {
            c.worst_ratio = ratio;
            c.t_worst = series.t[k];
        }
    }
    c.ok = c.worst_ratio <= 1.0 + rel_slack;
    return c;
}

Verdict verdict(const ExponentReport& report, const std::vector<RateFit>& fits, const Tolerances& tol) {
    if (!report.rates) {
        throw InvalidInput("verdict: no grow-up law is predicted for regime " + report.regime.name());
    }
    Verdict v;
    v.m = report.m;
    v.p = report.p;
    v.L = report.L;
    v.regime = report.regime.name();
    for (const RateFit& f : fits) {
        ProbeVerdict pv;
        pv.x = f.probe;
        const bool inside = std::abs(f.probe) < report.L;
        pv.region = inside ? "inside" : "outside";
        pv.predicted = inside ? report.rates->inside : report.rates->outside;
        pv.fit = f;
        if (pv.predicted.form != RateForm::Unspecified) {
            pv.evaluated = true;
            const bool power = pv.predicted.form == RateForm::Power;
            pv.tolerance = power ? tol.power : tol.exponential;
            if ((f.law.form == RateForm::Power) != power) {
                throw InvalidInput("verdict: fit form does not match the predicted law at x = " +
                                   std::to_string(f.probe));
            }
            pv.rel_error = std::abs(f.fitted - pv.predicted.value) / std::abs(pv.predicted.value);
            pv.pass = pv.rel_error <= pv.tolerance;
        }
        v.probes.push_back(pv);
    }
    finalize(v);
    return v;
}

void finalize(Verdict& v) {
    const auto& ps = v.probes;
    const bool any = std::any_of(ps.begin(), ps.end(), [](const auto& pv) { return pv.evaluated; });
    const bool all = std::all_of(ps.begin(), ps.end(),
                                 [](const auto& pv) { return !pv.evaluated || pv.pass; });
    v.pass = any && all && v.energy_ok.value_or(true) && (!v.flat_bound || v.flat_bound->ok);
}

std::string verdict_json(const Verdict& v) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["m"] = v.m;
    j["p"] = v.p;
    j["L"] = v.L;
    j["regime"] = v.regime;
    j["pass"] = v.pass;
    ordered_json probes = ordered_json::array();
    for (const auto& pv : v.probes) {
        ordered_json e;
        e["x"] = pv.x;
        e["region"] = pv.region;
        e["predicted"] = pv.predicted.describe();
        e["predicted_form"] = to_string(pv.predicted.form);
        e["predicted_value"] = pv.predicted.value;
        e["fitted"] = pv.fit.fitted;
        e["fit_form"] = to_string(pv.fit.law.form);
        e["window"] = {pv.fit.window.t_lo, pv.fit.window.t_hi};
        e["points"] = pv.fit.points;
        e["residual"] = pv.fit.residual;
        if (pv.fit.pointwise) e["pointwise_log_ratio"] = *pv.fit.pointwise;
        e["evaluated"] = pv.evaluated;
        if (pv.evaluated) {
            e["delta"] = pv.fit.fitted - pv.predicted.value;
            e["rel_error"] = pv.rel_error;
            e["tolerance"] = pv.tolerance;
        }
        e["pass"] = pv.pass;
        probes.push_back(e);
    }
    j["probes"] = probes;
    if (v.energy_ok) j["energy_nonincreasing"] = *v.energy_ok;
    if (v.flat_bound) {
        j["flat_bound"] = {{"ok", v.flat_bound->ok},
                           {"worst_ratio", v.flat_bound->worst_ratio},
                           {"t_worst", v.flat_bound->t_worst}};
    }
    return j.dump(2) + "\n";
}

}  // namespace growup::rates
