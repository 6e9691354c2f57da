#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "growup/core.hpp"

namespace growup::pde {

// Cell-centred finite volumes. The uniform block has n cells of width
// dx = 2R/n centred at k dx (n odd), walls at +-R. Beyond R the cells may
// keep growing geometrically by `stretch` until the wall passes `outer`.
// Homogeneous Dirichlet data for w = u^m sit on the outer walls.
struct GridSpec {
    double R = 8.025;  // dx = 0.05
    std::size_t n = 321;
    double outer = 0.0;    // <= R: no stretched cells
    double stretch = 1.05;

    /// Smallest odd n with dx = L / cells_per_L and R >= R_min.
    static GridSpec aligned(double L, double R_min, std::size_t cells_per_L, double outer = 0.0,
                            double stretch = 1.05);
    /// Same cell width, domain twice as wide (outer wall, or R without stretching).
    GridSpec doubled() const;

    bool operator==(const GridSpec&) const = default;
};

struct Grid {
    GridSpec spec;
    double L = 0.0;
    double dx = 0.0;
    double wall = 0.0;                // outer wall position
    std::vector<double> x;            // cell centres, increasing
    std::vector<double> width;
    std::vector<double> inv_width;
    std::vector<double> inv_dc;       // n + 1 faces; 1 / centre spacing (wall faces use half widths)
    std::vector<double> a;            // fraction of each cell inside (-L, L)
    std::size_t center = 0;           // index of x = 0

    std::size_t size() const { return x.size(); }
    /// Linear interpolation of nodal values at position xq.
    double interpolate(const std::vector<double>& u, double xq) const;
};

/// Throws InvalidInput unless n is odd, 0 < L < R and L / dx is an integer.
Grid make_grid(const GridSpec& spec, double L);

enum class Scheme {
    Explicit,  // forward Euler with the parabolic CFL and reaction caps
    Implicit,  // backward Euler diffusion with a reaction term exact for flat states, Newton per step
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

enum class Status { Running, ReachedT, BlowUpDetected, Underflow };

std::string to_string(Status s);

struct StepControl {
    Scheme scheme = Scheme::Explicit;
    bool reaction = true;              // false: pure diffusion
    double cfl = 0.4;
    double reaction_cap = 0.1;         // dt <= reaction_cap * (max u)^(1-p)
    double diffusivity_floor = 1e-8;   // u floor inside m u^(m-1)
    double clamp = 1e-14;              // negatives above -clamp are set to 0
    double underflow = 1e-14;          // dt below underflow * max(t, 1) aborts
    // Implicit scheme.
    double target_change = 0.02;       // max |du| / (|u| + change_floor * max u) per step
    double change_floor = 1e-6;
    double dt_initial = 1e-4;
    double dt_max = std::numeric_limits<double>::infinity();
    double newton_tol = 1e-11;
    int newton_max = 50;
};

struct SolverState {
    double t = 0.0;
    std::vector<double> u;
    double dt = 0.0;
    Status status = Status::Running;
    std::size_t steps = 0;
    std::size_t rejected = 0;
};

SolverState initial_state(const ProblemParams& params, const Grid& grid, const StepControl& control = {});

/// Advances by one accepted step no longer than dt_limit. On dt underflow
/// sets status Underflow and throws NumericalFailure.
void step(SolverState& state, const ProblemParams& params, const Grid& grid,
          const StepControl& control = {},
          double dt_limit = std::numeric_limits<double>::infinity());

/// Reusable stepper holding the work arrays; step() builds one per call.
class Stepper {
public:
    Stepper(const ProblemParams& params, const Grid& grid, const StepControl& control);
    void advance(SolverState& state, double dt_limit);

private:
    bool explicit_step(const SolverState& state, double dt);
    bool implicit_step(const std::vector<double>& rhs, double tau);
    double explicit_dt(const std::vector<double>& u) const;

    const ProblemParams& params_;
    const Grid& grid_;
    StepControl control_;
    std::vector<double> next_, wp_, cp_, d_, div_, res_, lower_, diag_, upper_, var_, scratch_;
};

/// Midpoint-rule energy: (1/2) sum over faces of (dw)^2 / dc minus
/// m/(p+m) sum a u^(p+m) width, with w = u^m.
double discrete_energy(const std::vector<double>& u, const ProblemParams& params, const Grid& grid);

struct TimeSeries {
    std::vector<double> probes;
    std::vector<double> t;
    std::vector<std::vector<double>> values;  // values[row][probe]
    std::vector<double> energy;
    std::vector<double> max_u;

    std::size_t rows() const { return t.size(); }
    std::vector<double> column(std::size_t probe) const;
};

struct RunOptions {
    double T_max = 1.0;
    double u_cap = 1e6;
    double t0 = 1e-2;       // first output time after t = 0
    double ratio = 1.2;     // geometric output spacing
    std::vector<double> probes{0.0};
    bool keep_profiles = false;
    StepControl control{};
};

struct RunResult {
    TimeSeries series;
    SolverState final_state;
    std::vector<std::vector<double>> profiles;  // one per row when keep_profiles
    std::optional<double> cap_time;
};

/// Output times t = 0, t0 r^k < T_max, and T_max.
std::vector<double> output_times(double T_max, double t0, double ratio);

/// Requires u_cap >= 1e3 max u0.
RunResult run(const ProblemParams& params, const Grid& grid, const RunOptions& options);

/// E(t_{k+1}) <= E(t_k) + rel_slack |E(t_k)| (t_{k+1} - t_k) for every row pair.
bool energy_nonincreasing(const TimeSeries& series, double rel_slack = 1e-4);

/// u_a <= u_b + 1e-8 max u_b at every recorded time. Requires kept profiles
/// on one grid and schedule.
bool comparison_probe(const RunResult& a, const RunResult& b);

/// Largest relative probe difference at the last time both runs recorded.
double probe_sensitivity(const RunResult& base, const RunResult& wide);

}  // namespace growup::pde
