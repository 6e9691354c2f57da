#include "growup/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "growup/error.hpp"
#include "growup/simd/kernels.hpp"

namespace growup::pde {

namespace {

constexpr double kUnitTol = 1e-12;

bool is_one(double v) { return std::abs(v - 1.0) <= kUnitTol; }

// Tridiagonal solve with lower[0] and upper[n-1] ignored; rhs is overwritten
// with the solution.
void thomas(const std::vector<double>& lower, const std::vector<double>& diag,
            const std::vector<double>& upper, std::vector<double>& rhs, std::vector<double>& work) {
    const std::size_t n = diag.size();
    work.resize(n);
    double denom = diag[0];
    work[0] = upper[0] / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag[i] - lower[i] * work[i - 1];
        work[i] = upper[i] / denom;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= work[i] * rhs[i + 1];
    }
}

// Source term for the step u0 -> u: the mean of v^p for which
// u - u0 = tau S reproduces the exact flow of v' = v^p. Returns (S, dS/du).
std::pair<double, double> secant_source(double u0, double u, double p) {
    if (u0 <= 0.0) return {0.0, 0.0};
    const double h = (u - u0) / u0;
    const double base = std::pow(u0, p);
    if (std::abs(h) < 1e-4) {
        const double c2 = 0.25 * p * p - p * (p + 1.0) / 6.0;
        return {base * (1.0 + (0.5 * p + c2 * h) * h), base / u0 * (0.5 * p + 2.0 * c2 * h)};
    }
    if (u <= 0.0) return {0.0, 0.0};
    const double delta = u - u0;
    const double G = is_one(p) ? std::log(u / u0)
                               : (std::pow(u, 1.0 - p) - std::pow(u0, 1.0 - p)) / (1.0 - p);
    const double S = delta / G;
    return {S, (G - delta * std::pow(u, -p)) / (G * G)};
}

}  // namespace

GridSpec GridSpec::aligned(double L, double R_min, std::size_t cells_per_L, double outer,
                           double stretch) {
    require(L > 0.0 && std::isfinite(L), "grid: L must be positive");
    require(cells_per_L >= 1, "grid: cells_per_L must be at least 1");
    require(R_min > L, "grid: R must exceed L");
    const double dx = L / static_cast<double>(cells_per_L);
    auto half = static_cast<std::size_t>(std::ceil(R_min / dx - 0.5 - 1e-9));
    GridSpec spec;
    spec.n = 2 * half + 1;
    spec.R = 0.5 * static_cast<double>(spec.n) * dx;
    spec.outer = outer;
    spec.stretch = stretch;
    return spec;
}

GridSpec GridSpec::doubled() const {
    GridSpec s = *this;
    if (outer > R) {
        s.outer = 2.0 * outer;
    } else {
        const double dx = 2.0 * R / static_cast<double>(n);
        s.n = 2 * n + 1;
        s.R = 0.5 * static_cast<double>(s.n) * dx;
    }
    return s;
}

double Grid::interpolate(const std::vector<double>& u, double xq) const {
    require(u.size() == x.size(), "interpolate: field size does not match the grid");
    if (xq <= x.front()) return u.front();
    if (xq >= x.back()) return u.back();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const std::size_t i = j - 1;
    if (xq == x[i]) return u[i];
    const double s = (xq - x[i]) / (x[j] - x[i]);
    return (1.0 - s) * u[i] + s * u[j];
}

Grid make_grid(const GridSpec& spec, double L) {
    require(spec.n >= 3 && spec.n % 2 == 1, "grid: n must be odd and at least 3");
    require(spec.R > 0.0 && std::isfinite(spec.R), "grid: R must be positive");
    require(L > 0.0 && L < spec.R, "grid: need 0 < L < R");
    const double dx = 2.0 * spec.R / static_cast<double>(spec.n);
    const double ratio = L / dx;
    const double J = std::round(ratio);
    if (std::abs(ratio - J) > 1e-9 * std::max(1.0, ratio) || J < 1.0) {
        throw InvalidInput("grid: L / dx must be a positive integer (L / dx = " +
                           std::to_string(ratio) + ")");
    }
    const bool stretched = spec.outer > spec.R;
    if (stretched) {
        require(spec.stretch > 1.0 && spec.stretch < 2.0, "grid: stretch must lie in (1, 2)");
    }

    // Right half including the centre cell.
    const std::size_t N = (spec.n - 1) / 2;
    const auto Ji = static_cast<std::size_t>(J);
    std::vector<double> xr, wr, ar;
    for (std::size_t k = 0; k <= N; ++k) {
        xr.push_back(static_cast<double>(k) * dx);
        wr.push_back(dx);
        ar.push_back(k < Ji ? 1.0 : (k == Ji ? 0.5 : 0.0));
    }
    double edge = spec.R;
    if (stretched) {
        double w = dx;
        while (edge < spec.outer) {
            w *= spec.stretch;
            xr.push_back(edge + 0.5 * w);
            wr.push_back(w);
            ar.push_back(0.0);
            edge += w;
        }
    }

    Grid g;
    g.spec = spec;
    g.L = L;
    g.dx = dx;
    g.wall = edge;
    const std::size_t half = xr.size();
    const std::size_t n = 2 * half - 1;
    g.x.resize(n);
    g.width.resize(n);
    g.a.resize(n);
    g.center = half - 1;
    for (std::size_t k = 0; k < half; ++k) {
        g.x[g.center + k] = xr[k];
        g.x[g.center - k] = -xr[k];
        g.width[g.center + k] = g.width[g.center - k] = wr[k];
        g.a[g.center + k] = g.a[g.center - k] = ar[k];
    }
    g.inv_width.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.inv_width[i] = 1.0 / g.width[i];
    }
    // Face f sits between cells f-1 and f; faces 0 and n are the walls.
    g.inv_dc.assign(n + 1, 0.0);
    std::vector<double> face_r(half + 1);
    for (std::size_t k = 1; k < half; ++k) {
        face_r[k] = 1.0 / (xr[k] - xr[k - 1]);
    }
    face_r[half] = 2.0 / wr[half - 1];
    for (std::size_t k = 1; k <= half; ++k) {
        g.inv_dc[g.center + k] = face_r[k];
        g.inv_dc[g.center + 1 - k] = face_r[k];
    }
    return g;
}

std::string to_string(Scheme s) { return s == Scheme::Explicit ? "explicit" : "implicit"; }

Scheme scheme_from_string(const std::string& name) {
    if (name == "explicit") return Scheme::Explicit;
    if (name == "implicit") return Scheme::Implicit;
    throw InvalidInput("unknown scheme '" + name + "' (expected explicit or implicit)");
}

std::string to_string(Status s) {
    switch (s) {
        case Status::Running: return "running";
        case Status::ReachedT: return "reached-T";
        case Status::BlowUpDetected: return "blow-up-detected";
        case Status::Underflow: return "underflow";
    }
    return "running";
}

SolverState initial_state(const ProblemParams& params, const Grid& grid, const StepControl& control) {
    params.validate();
    SolverState s;
    s.u = build_initial_data(params, grid.x);
    s.dt = control.dt_initial;
    return s;
}

Stepper::Stepper(const ProblemParams& params, const Grid& grid, const StepControl& control)
    : params_(params), grid_(grid), control_(control) {
    const std::size_t n = grid.size();
    next_.resize(n);
    wp_.assign(n + 2, 0.0);
    cp_.assign(n + 2, 0.0);
    d_.resize(n);
    div_.resize(n);
    res_.resize(n);
    lower_.resize(n);
    diag_.resize(n);
    upper_.resize(n);
    var_.resize(n);
    scratch_.resize(n);
}

double Stepper::explicit_dt(const std::vector<double>& u) const {
    const double m = params_.m;
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double D = is_one(m) ? 1.0 : m * std::pow(std::max(u[i], control_.diffusivity_floor), m - 1.0);
        const double k = grid_.inv_width[i] * (grid_.inv_dc[i] + grid_.inv_dc[i + 1]);
        dt = std::min(dt, 2.0 * control_.cfl / (D * k));
    }
    if (control_.reaction) {
        const double umax = simd::active_kernels().max_value(u.data(), u.size());
        if (umax > 0.0) {
            dt = std::min(dt, control_.reaction_cap * std::pow(umax, 1.0 - params_.p));
        }
    }
    return dt;
}

bool Stepper::explicit_step(const SolverState& state, double dt) {
    const auto& K = simd::active_kernels();
    const std::size_t n = state.u.size();
    const double m = params_.m;
    for (std::size_t i = 0; i < n; ++i) {
        wp_[i + 1] = std::pow(state.u[i], m);
        scratch_[i] = control_.reaction ? std::pow(state.u[i], params_.p) : 0.0;
    }
    K.flux_divergence(wp_.data(), grid_.inv_dc.data(), grid_.inv_width.data(), div_.data(), n);
    K.euler_update(state.u.data(), div_.data(), grid_.a.data(), scratch_.data(), dt, next_.data(), n);
    if (K.min_value(next_.data(), n) < -control_.clamp) {
        return false;
    }
    for (double& v : next_) {
        v = std::max(v, 0.0);
    }
    return true;
}

// Backward Euler u - tau ((w(u))_xx + a S) = rhs by Newton, with S the
// secant source above, so a flat state follows v' = v^p exactly. m >= 1
// iterates on u, m < 1 on w = u^m so that the Jacobian stays finite where u
// vanishes.
bool Stepper::implicit_step(const std::vector<double>& rhs, double tau) {
    const auto& K = simd::active_kernels();
    const std::size_t n = rhs.size();
    const double m = params_.m;
    const double p = params_.p;
    const bool w_form = m < 1.0 - kUnitTol;
    const double inv_m = 1.0 / m;
    const bool react = control_.reaction;

    if (w_form) {
        for (std::size_t i = 0; i < n; ++i) var_[i] = std::pow(rhs[i], m);
        for (std::size_t i = 1; i <= n; ++i) cp_[i] = 1.0;
    } else {
        var_ = rhs;
    }

    for (int it = 0; it < control_.newton_max; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            const double v = var_[i];
            double u, du;  // u and du/dvar
            if (w_form) {
                wp_[i + 1] = v;
                u = std::pow(v, inv_m);
                du = v > 0.0 ? inv_m * u / v : 0.0;
            } else if (is_one(m)) {
                wp_[i + 1] = v;
                cp_[i + 1] = 1.0;
                u = v;
                du = 1.0;
            } else {
                const double pm1 = std::pow(v, m - 1.0);
                wp_[i + 1] = pm1 * v;
                cp_[i + 1] = m * pm1;
                u = v;
                du = 1.0;
            }
            scratch_[i] = u;
            d_[i] = du;
            if (react && grid_.a[i] > 0.0) {
                const auto [S, dS] = secant_source(rhs[i], u, p);
                lower_[i] = grid_.a[i] * S;  // source, overwritten by the assembly
                d_[i] -= tau * grid_.a[i] * dS * du;
            } else {
                lower_[i] = 0.0;
            }
        }
        K.flux_divergence(wp_.data(), grid_.inv_dc.data(), grid_.inv_width.data(), div_.data(), n);
        for (std::size_t i = 0; i < n; ++i) div_[i] += lower_[i];
        K.implicit_residual(scratch_.data(), rhs.data(), div_.data(), tau, res_.data(), n);
        K.assemble_tridiag(d_.data(), cp_.data(), grid_.inv_dc.data(), grid_.inv_width.data(), tau,
                           lower_.data(), diag_.data(), upper_.data(), n);
        thomas(lower_, diag_, upper_, res_, next_);
        for (std::size_t i = 0; i < n; ++i) {
            var_[i] = std::max(var_[i] - res_[i], 0.0);
        }
        const double change = K.max_abs(res_.data(), n);
        const double scale = K.max_abs(var_.data(), n);
        if (!std::isfinite(change) || !std::isfinite(scale)) return false;
        if (change <= control_.newton_tol * scale || scale == 0.0) {
            if (w_form) {
                for (std::size_t i = 0; i < n; ++i) next_[i] = std::pow(var_[i], inv_m);
            } else {
                next_ = var_;
            }
            return true;
        }
    }
    return false;
}

void Stepper::advance(SolverState& state, double dt_limit) {
    if (state.status != Status::Running) {
        throw InvalidInput("step: solver is not running (status " + to_string(state.status) + ")");
    }
    require(state.u.size() == grid_.size(), "step: state does not match the grid");
    require(dt_limit > 0.0, "step: dt limit must be positive");
    const auto& K = simd::active_kernels();
    const double t_scale = std::max(state.t, 1.0);

    auto underflow = [&](double dt) {
        if (dt < control_.underflow * t_scale) {
            state.status = Status::Underflow;
            throw NumericalFailure("step: dt underflow (dt = " + std::to_string(dt) +
                                   " at t = " + std::to_string(state.t) + ")");
        }
    };

    if (control_.scheme == Scheme::Explicit) {
        double dt = std::min(explicit_dt(state.u), dt_limit);
        while (!explicit_step(state, dt)) {
            ++state.rejected;
            dt *= 0.5;
            underflow(dt);
        }
        state.u.swap(next_);
        state.t += dt;
        state.dt = dt;
        ++state.steps;
        return;
    }

    const double proposal = std::min(state.dt > 0.0 ? state.dt : control_.dt_initial, control_.dt_max);
    double dt = std::min(proposal, dt_limit);
    const double floor = control_.change_floor * K.max_value(state.u.data(), state.u.size());
    for (;;) {
        underflow(dt);
        if (!implicit_step(state.u, dt)) {
            ++state.rejected;
            dt *= 0.25;
            continue;
        }
        const double change = K.max_rel_change(next_.data(), state.u.data(), floor, state.u.size());
        if (change > 2.0 * control_.target_change) {
            ++state.rejected;
            dt *= std::max(0.2, 0.9 * control_.target_change / change);
            continue;
        }
        const double estimate = change > 0.0 ? dt * 0.9 * control_.target_change / change
                                             : std::numeric_limits<double>::infinity();
        // A step clipped by dt_limit says little about the next one, so the
        // previous proposal survives unless the change estimate forbids it.
        const double next = dt < proposal ? std::min(proposal, estimate)
                                          : std::clamp(estimate, 0.2 * dt, 2.0 * dt);
        state.dt = std::min(next, control_.dt_max);
        break;
    }
    state.u.swap(next_);
    state.t += dt;
    ++state.steps;
}

void step(SolverState& state, const ProblemParams& params, const Grid& grid,
          const StepControl& control, double dt_limit) {
    Stepper s(params, grid, control);
    s.advance(state, dt_limit);
}

double discrete_energy(const std::vector<double>& u, const ProblemParams& params, const Grid& grid) {
    require(u.size() == grid.size(), "energy: field size does not match the grid");
    const auto& K = simd::active_kernels();
    const std::size_t n = u.size();
    std::vector<double> wp(n + 2, 0.0);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        wp[i + 1] = std::pow(u[i], params.m);
        r[i] = std::pow(u[i], params.p + params.m);
    }
    const double grad = 0.5 * K.gradient_energy(wp.data(), grid.inv_dc.data(), n);
    const double react = params.m / (params.p + params.m) * K.triple_dot(grid.a.data(), r.data(), grid.width.data(), n);
    return grad - react;
}

std::vector<double> TimeSeries::column(std::size_t probe) const {
    require(probe < probes.size(), "time series: probe index out of range");
    std::vector<double> c;
    c.reserve(values.size());
    for (const auto& row : values) c.push_back(row[probe]);
    return c;
}

std::vector<double> output_times(double T_max, double t0, double ratio) {
    require(T_max > 0.0 && std::isfinite(T_max), "run: T_max must be positive");
    require(t0 > 0.0, "run: t0 must be positive");
    require(ratio > 1.0, "run: output ratio must exceed 1");
    std::vector<double> times{0.0};
    for (int k = 0;; ++k) {
        const double t = t0 * std::pow(ratio, k);
        if (t >= T_max * (1.0 - 1e-12)) break;
        times.push_back(t);
    }
    times.push_back(T_max);
    return times;
}

RunResult run(const ProblemParams& params, const Grid& grid, const RunOptions& options) {
    params.validate();
    const auto& K = simd::active_kernels();
    for (double x : options.probes) {
        require(std::abs(x) <= grid.wall, "run: probe outside the computational domain");
    }
    const std::vector<double> times = output_times(options.T_max, options.t0, options.ratio);

    RunResult out;
    SolverState& state = out.final_state;
    state = initial_state(params, grid, options.control);
    const double M = K.max_value(state.u.data(), state.u.size());
    if (!(options.u_cap >= 1e3 * M)) {
        throw InvalidInput("run: u_cap must be at least 1e3 max u0");
    }
    out.series.probes = options.probes;

    auto record = [&]() {
        std::vector<double> row;
        row.reserve(options.probes.size());
        for (double x : options.probes) row.push_back(grid.interpolate(state.u, x));
        out.series.t.push_back(state.t);
        out.series.values.push_back(std::move(row));
        out.series.energy.push_back(discrete_energy(state.u, params, grid));
        out.series.max_u.push_back(K.max_value(state.u.data(), state.u.size()));
        if (options.keep_profiles) out.profiles.push_back(state.u);
    };

    record();
    Stepper stepper(params, grid, options.control);
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double target = times[k];
        while (state.t < target) {
            stepper.advance(state, target - state.t);
            if (std::abs(state.t - target) <= 1e-12 * target) state.t = target;
            if (K.max_value(state.u.data(), state.u.size()) >= options.u_cap) {
                state.status = Status::BlowUpDetected;
                out.cap_time = state.t;
                record();
                return out;
            }
        }
        record();
    }
    state.status = Status::ReachedT;
    return out;
}

bool energy_nonincreasing(const TimeSeries& series, double rel_slack) {
    for (std::size_t k = 1; k < series.energy.size(); ++k) {
        const double E0 = series.energy[k - 1];
        const double dt = series.t[k] - series.t[k - 1];
        if (series.energy[k] > E0 + rel_slack * std::abs(E0) * dt + 1e-12) return false;
    }
    return true;
}

bool comparison_probe(const RunResult& a, const RunResult& b) {
    require(!a.profiles.empty() && !b.profiles.empty(), "comparison: runs must keep profiles");
    const std::size_t rows = std::min(a.profiles.size(), b.profiles.size());
    for (std::size_t k = 0; k < rows; ++k) {
        if (a.series.t[k] != b.series.t[k]) {
            throw InvalidInput("comparison: runs use different output schedules");
        }
        const auto& ua = a.profiles[k];
        const auto& ub = b.profiles[k];
        require(ua.size() == ub.size(), "comparison: runs use different grids");
        const double tol = 1e-8 * simd::active_kernels().max_value(ub.data(), ub.size());
        for (std::size_t i = 0; i < ua.size(); ++i) {
            if (ua[i] > ub[i] + tol) return false;
        }
    }
    return true;
}

double probe_sensitivity(const RunResult& base, const RunResult& wide) {
    require(base.series.probes == wide.series.probes, "sensitivity: runs use different probes");
    const std::size_t rows = std::min(base.series.rows(), wide.series.rows());
    require(rows > 0, "sensitivity: empty series");
    std::size_t k = rows - 1;
    while (k > 0 && base.series.t[k] != wide.series.t[k]) --k;
    double worst = 0.0;
    for (std::size_t j = 0; j < base.series.probes.size(); ++j) {
        const double a = base.series.values[k][j];
        const double b = wide.series.values[k][j];
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale > 0.0) worst = std::max(worst, std::abs(a - b) / scale);
    }
    return worst;
}

}  // namespace growup::pde
