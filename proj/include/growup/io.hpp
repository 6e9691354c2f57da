#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "growup/core.hpp"
#include "growup/pde_solver.hpp"
#include "growup/rates.hpp"

namespace growup::io {

/// Shortest round-trip-safe text for a double ("%.17g").
std::string format_double(double v);
double parse_double(const std::string& text, const std::string& what);

struct FitConfig {
    std::optional<double> window_lo;  // default: last `decades` of recorded times
    std::optional<double> window_hi;
    double decades = 1.5;
    rates::Tolerances tol{};

    bool operator==(const FitConfig&) const = default;
};

struct ExperimentConfig {
    ProblemParams params{};
    pde::GridSpec grid{};
    double T_max = 1.0;
    double u_cap = 1e6;
    double t0 = 1e-2;
    double ratio = 1.2;
    std::vector<double> probes{0.0};
    pde::Scheme scheme = pde::Scheme::Explicit;
    double target_change = 0.02;
    double change_floor = 1e-6;
    bool reaction = true;
    bool check_domain = false;  // rerun on GridSpec::doubled() and report the probe change
    FitConfig fit{};
    std::string output = "out";

    pde::RunOptions run_options() const;
    bool operator==(const ExperimentConfig&) const = default;
};

// Line-oriented "key = value" text under [problem], [initial], [grid],
// [run], [fit] and [output]; '#' starts a comment.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig read_config(const std::filesystem::path& path);
std::string format_config(const ExperimentConfig& cfg);

/// Checks every precondition of the run (parameters, grid, cap, probes)
/// before anything is written. Returns the grid.
pde::Grid validate_config(const ExperimentConfig& cfg);

/// cfg.output, below $GROWUP_OUT when that is set and the path is relative.
std::filesystem::path output_dir(const std::string& configured);

// CSV: t, one u(x=...) column per probe, max_u, E_u.
std::string series_csv(const pde::TimeSeries& series);
pde::TimeSeries parse_series_csv(const std::string& text);
std::string energy_csv(const pde::TimeSeries& series);
/// t, log t and log u per probe for rows with t > 0.
std::string plot_csv(const pde::TimeSeries& series);
std::string fits_csv(const std::vector<rates::RateFit>& fits);

std::string exponent_report_json(const ExponentReport& report);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Collects written files and removes them unless commit() is reached.
class OutputSession {
public:
    explicit OutputSession(std::filesystem::path dir);
    ~OutputSession();
    OutputSession(const OutputSession&) = delete;
    OutputSession& operator=(const OutputSession&) = delete;

    const std::filesystem::path& dir() const { return dir_; }
    void write(const std::string& name, const std::string& content);
    void commit() { committed_ = true; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

}  // namespace growup::io
