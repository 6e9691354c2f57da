#pragma once

// Closed-form solutions of pure diffusion and a driver that evolves a given
// field with the solver to a fixed time.

#include <algorithm>
#include <cmath>
#include <vector>

#include "growup/pde_solver.hpp"

namespace oracle {

// Heat kernel acting on A exp(-(x/w)^2): amplitude and width at time t.
inline double gaussian(double A, double w, double x, double t) {
    const double s2 = w * w + 4.0 * t;
    return A * w / std::sqrt(s2) * std::exp(-x * x / s2);
}

// Barenblatt profile of u_t = (u^2)_xx: t^(-1/3) (1 - x^2 / (12 t^(2/3)))_+.
inline double barenblatt_m2(double x, double t) {
    const double k = 1.0 / 3.0;
    return std::pow(t, -k) * std::max(0.0, 1.0 - x * x / (12.0 * std::pow(t, 2.0 * k)));
}

// Evolves u from t0 to t1 without reaction, landing exactly on t1.
template <class Init>
std::vector<double> diffuse(const growup::ProblemParams& params, const growup::pde::Grid& grid, Init u0,
                            double t0, double t1, growup::pde::StepControl control = {}) {
    control.reaction = false;
    growup::pde::SolverState s = growup::pde::initial_state(params, grid, control);
    for (std::size_t i = 0; i < grid.size(); ++i) s.u[i] = u0(grid.x[i]);
    s.t = t0;
    growup::pde::Stepper stepper(params, grid, control);
    while (s.t < t1) {
        stepper.advance(s, t1 - s.t);
        if (std::abs(s.t - t1) <= 1e-12 * t1) s.t = t1;
    }
    return s.u;
}

// max_i |g(u_i) - g(exact(x_i))|
template <class Exact, class G>
double linf(const growup::pde::Grid& grid, const std::vector<double>& u, Exact exact, G g) {
    double e = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) e = std::max(e, std::abs(g(u[i]) - g(exact(grid.x[i]))));
    return e;
}

}  // namespace oracle
