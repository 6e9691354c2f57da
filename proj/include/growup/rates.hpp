#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "growup/core.hpp"
#include "growup/pde_solver.hpp"

namespace growup::rates {

struct Window {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

/// [t_end 10^-decades, t_end] with t_end the last recorded time.
Window default_window(const pde::TimeSeries& series, double decades = 1.5);

struct RateFit {
    RateLaw law;               // Power (slope of log u against log t) or Exponential (against t)
    double fitted = 0.0;
    double intercept = 0.0;
    Window window;             // recorded times actually used
    double residual = 0.0;     // RMS of log u about the fitted line
    double probe = 0.0;
    std::size_t points = 0;
    std::optional<double> pointwise;  // log u / t at the window end (exponential fits)
};

// Both fits need at least three points in the window and positive values
// there; power fits also need the window to span a decade.
RateFit fit_power(std::span<const double> t, std::span<const double> u, Window window,
                  double probe = 0.0);
RateFit fit_exponential(std::span<const double> t, std::span<const double> u, Window window,
                        double probe = 0.0);
RateFit fit_power(const pde::TimeSeries& series, std::size_t probe, Window window);
RateFit fit_exponential(const pde::TimeSeries& series, std::size_t probe, Window window);

/// Power fit for power predictions, exponential fit otherwise.
RateFit fit_for(const RateLaw& predicted, const pde::TimeSeries& series, std::size_t probe,
                Window window);

/// Space-free supersolution: (M^(1-p) + (1-p) t)^(1/(1-p)), M e^t at p = 1,
/// and the blow-up branch for p > 1 (+inf past the blow-up time).
double flat_bound(double M, double p, double t);

struct FlatBoundCheck {
    bool ok = true;
    double worst_ratio = 0.0;  // max over rows of max u / bound
    double t_worst = 0.0;
};

/// Compares the recorded max u against flat_bound; rel_slack absorbs rounding.
FlatBoundCheck check_flat_bound(const pde::TimeSeries& series, double M, double p,
                                double rel_slack = 1e-12);

struct Tolerances {
    double power = 0.15;
    double exponential = 0.10;

    bool operator==(const Tolerances&) const = default;
};

struct ProbeVerdict {
    double x = 0.0;
    std::string region;  // "inside" or "outside"
    RateLaw predicted;
    RateFit fit;
    double rel_error = 0.0;
    double tolerance = 0.0;
    bool evaluated = false;  // false when no law is predicted there
    bool pass = false;
};

struct Verdict {
    double m = 0.0;
    double p = 0.0;
    double L = 0.0;
    std::string regime;
    std::vector<ProbeVerdict> probes;
    std::optional<bool> energy_ok;
    std::optional<FlatBoundCheck> flat_bound;
    bool pass = false;
};

/// Confronts each fit with the law predicted for its region. Requires a
/// grow-up regime.
Verdict verdict(const ExponentReport& report, const std::vector<RateFit>& fits,
                const Tolerances& tol = {});

/// Recomputes the overall flag after energy or flat-bound results are attached.
void finalize(Verdict& v);

std::string verdict_json(const Verdict& v);

}  // namespace growup::rates
