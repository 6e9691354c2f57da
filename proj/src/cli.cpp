#include "growup/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "growup/core.hpp"
#include "growup/eigen_linear.hpp"
#include "growup/error.hpp"
#include "growup/flux_profiles.hpp"
#include "growup/io.hpp"
#include "growup/pde_solver.hpp"
#include "growup/rates.hpp"
#include "growup/selfsim_profiles.hpp"
#include "growup/simd/kernels.hpp"
#include "json.hpp"

namespace growup::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using io::format_double;

std::string csv_rows(const std::string& header, const std::vector<std::vector<double>>& rows) {
    std::string out = header + "\n";
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out += ",";
            out += format_double(r[j]);
        }
        out += "\n";
    }
    return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// Writes report.json (and profile.csv when given) below --out, if set.
void emit(const std::string& out_dir, const json& report, const std::string& profile_csv) {
    if (out_dir.empty()) return;
    io::OutputSession session(io::output_dir(out_dir));
    if (!profile_csv.empty()) session.write("profile.csv", profile_csv);
    session.write("report.json", report.dump(2) + "\n");
    session.commit();
}

// ---------------------------------------------------------------------------

struct ExponentsArgs {
    double m = 0.0, p = 0.0, L = 1.0;
    bool json_only = false;
    std::string out;
};

int cmd_exponents(const ExponentsArgs& a, std::ostream& out) {
    const ExponentReport r = exponent_report(a.m, a.p, a.L);
    const std::string js = io::exponent_report_json(r);
    if (a.json_only) {
        out << js;
    } else {
        out << "m = " << format_double(r.m) << ", p = " << format_double(r.p) << ", L = " << format_double(r.L) << "\n"
            << "p0 = " << format_double(r.p0) << "\n"
            << "pF = " << format_double(r.pF) << "\n"
            << "regime = " << r.regime.name() << "\n";
        if (!r.alpha.is_power()) out << "alpha = exponential regime\n";
        else if (std::isfinite(r.alpha.value)) out << "alpha = " << format_double(r.alpha.value) << "\n";
        if (r.beta) out << "beta = " << format_double(*r.beta) << "\n";
        if (r.gamma) out << "gamma = " << format_double(*r.gamma) << "\n";
        if (r.rates) {
            out << "rate inside = " << r.rates->inside.describe() << "\n"
                << "rate outside = " << r.rates->outside.describe() << "\n";
        }
    }
    emit(a.out, json::parse(js), "");
    return 0;
}

// ---------------------------------------------------------------------------

struct EigenArgs {
    double L = 0.0;
    std::size_t samples = 401;
    double r_max = 0.0;
    std::string out;
};

int cmd_eigen(const EigenArgs& a, std::ostream& out) {
    const double lam = eigen::lambda0(a.L);
    const eigen::EigenProfile prof = eigen::eigen_profile(lam, a.L);
    out << "lambda0 = " << format_double(lam) << "\n"
        << "C1 = " << format_double(prof.C1) << "\n"
        << "C2 = " << format_double(prof.C2) << "\n";
    if (prof.vanish_radius) out << "vanish_radius = " << format_double(*prof.vanish_radius) << "\n";

    json j;
    j["L"] = a.L;
    j["lambda0"] = lam;
    j["h_residual"] = eigen::h(lam, a.L);
    j["C1"] = prof.C1;
    j["C2"] = prof.C2;
    j["vanish_radius"] = optional_number(prof.vanish_radius);
    std::vector<std::vector<double>> rows;
    const double r_max = a.r_max > 0.0 ? a.r_max : 4.0 * a.L;
    require(a.samples >= 2, "eigen: need at least two samples");
    for (std::size_t i = 0; i < a.samples; ++i) {
        const double r = r_max * static_cast<double>(i) / static_cast<double>(a.samples - 1);
        rows.push_back({r, prof(r), prof.derivative(r)});
    }
    emit(a.out, j, csv_rows("r,phi,dphi", rows));
    return 0;
}

// ---------------------------------------------------------------------------

struct ProfileArgs {
    std::string kind;
    std::optional<double> m, p, L, alpha, beta, lambda, K, A, B, rate;
    double f0 = 1.0;
    bool exponential = false;
    std::string out;
};

double need(const std::optional<double>& v, const char* name, const std::string& kind) {
    if (!v) throw InvalidInput("profile --kind " + kind + " needs --" + name);
    return *v;
}

int cmd_profile(const ProfileArgs& a, std::ostream& out) {
    const std::string& k = a.kind;
    json j;
    j["kind"] = k;
    std::vector<std::vector<double>> rows;
    std::string header;

    if (k == "selfsim") {
        const double m = need(a.m, "m", k);
        const selfsim::SimilarityExponents ex =
            a.alpha || a.beta ? selfsim::SimilarityExponents::from_alpha_beta(need(a.alpha, "alpha", k),
                                                                              need(a.beta, "beta", k), m)
                              : selfsim::SimilarityExponents::from_problem(m, need(a.p, "p", k));
        const selfsim::PhasePath path = selfsim::separatrix(ex);
        const selfsim::SimilarityProfile prof = selfsim::reconstruct_profile(path, a.f0);
        j["m"] = m;
        j["alpha"] = ex.alpha;
        j["beta"] = ex.beta;
        j["closure"] = selfsim::to_string(ex.closure);
        j["terminal_X"] = path.terminal().X;
        j["limit_X"] = -2.0 / (1.0 - m);
        j["asymptotic_class"] =
            prof.asymptotic_class == selfsim::AsymptoticClass::PurePower ? "pure-power" : "log-corrected";
        j["min_supersolution_residual"] = selfsim::supersolution_residual(prof);
        header = "xi,f,X";
        for (const auto& s : prof.samples) rows.push_back({s.xi, s.f, s.X});
        out << "terminal X = " << format_double(path.terminal().X) << " (limit "
            << format_double(-2.0 / (1.0 - m)) << ")\n";
    } else if (k == "separable") {
        const double m = need(a.m, "m", k), lam = need(a.lambda, "lambda", k), L = need(a.L, "L", k);
        const auto res = selfsim::separable_profile_pm(m, lam, L);
        j["m"] = m;
        j["lambda"] = lam;
        j["L"] = L;
        j["classification"] = selfsim::to_string(res.classification);
        j["R"] = optional_number(res.R);
        header = "r,phi,dw";
        for (const auto& s : res.samples) rows.push_back({s[0], s[1], s[2]});
        out << "classification = " << selfsim::to_string(res.classification) << "\n";
    } else if (k == "lambda-star") {
        const double m = need(a.m, "m", k), L = need(a.L, "L", k);
        const auto res = selfsim::lambda_star(m, L);
        j["m"] = m;
        j["L"] = L;
        j["lambda_star"] = res.lambda_star;
        j["lo"] = res.lo;
        j["hi"] = res.hi;
        header = "lambda,unbounded,R";
        for (const auto& s : res.history) {
            rows.push_back({s.lambda, s.classification == selfsim::SeparableClass::PositiveUnbounded ? 1.0 : 0.0, s.R});
        }
        out << "lambda_star = " << format_double(res.lambda_star) << "\n";
    } else if (k == "compact") {
        const double m = need(a.m, "m", k), p = need(a.p, "p", k), L = need(a.L, "L", k);
        const auto res = selfsim::compact_reaction_profile(m, p, L);
        j["m"] = m;
        j["p"] = p;
        j["L"] = L;
        j["R0"] = res.R0;
        j["A"] = res.A;
        header = "x,phi";
        for (const auto& s : res.samples) rows.push_back({s[0], s[1]});
        out << "R0 = " << format_double(res.R0) << ", A = " << format_double(res.A) << "\n";
    } else if (k == "flux") {
        const double m = need(a.m, "m", k), p = need(a.p, "p", k);
        const double K = need(a.K, "K", k), A = need(a.A, "A", k);
        const double rate = a.rate ? *a.rate : flux::flux_alpha(m, p);
        const auto kind = a.exponential ? flux::ProfileKind::Exponential : flux::ProfileKind::Power;
        const auto prof = flux::integrate_F(m, p, rate, K, A, kind);
        j["m"] = m;
        j["p"] = p;
        j["rate"] = rate;
        j["K"] = K;
        j["A"] = A;
        j["profile_kind"] = flux::to_string(kind);
        j["classification"] = flux::to_string(prof.classification);
        j["energy_threshold"] = flux::energy_threshold(m, p, rate, K);
        j["support_edge"] = optional_number(prof.support_edge);
        j["xi_min"] = optional_number(prof.xi_min);
        j["F_min"] = optional_number(prof.F_min);
        j["energy_nonincreasing"] = flux::energy_nonincreasing(flux::profile_energy(prof));
        header = "xi,F,s";
        for (const auto& s : prof.samples) rows.push_back({s.xi, s.F, s.s});
        out << "classification = " << flux::to_string(prof.classification) << "\n";
    } else if (k == "subsolution") {
        const double m = need(a.m, "m", k), p = need(a.p, "p", k);
        const double K = need(a.K, "K", k), A = need(a.A, "A", k);
        const auto sub = flux::explicit_subsolution(m, p, K, A);
        j["m"] = m;
        j["p"] = p;
        j["K"] = K;
        j["A"] = A;
        j["gamma"] = sub.gamma;
        j["B"] = sub.B;
        j["support_edge"] = sub.support_edge;
        j["max_violation"] = sub.max_violation;
        j["satisfied"] = sub.satisfied;
        header = "xi,F";
        for (std::size_t i = 0; i <= 400; ++i) {
            const double xi = 1.1 * sub.support_edge * static_cast<double>(i) / 400.0;
            rows.push_back({xi, sub.F(xi)});
        }
        out << "satisfied = " << (sub.satisfied ? "true" : "false") << "\n";
    } else if (k == "pk") {
        const double m = need(a.m, "m", k), B = need(a.B, "B", k);
        const auto chk = flux::pk_subsolution_details(m, B);
        j["m"] = m;
        j["B"] = B;
        j["ok"] = chk.ok;
        j["min_value"] = chk.min_value;
        out << "subsolution = " << (chk.ok ? "true" : "false") << "\n";
    } else {
        throw InvalidInput("profile: unknown kind '" + k +
                           "' (selfsim, separable, lambda-star, compact, flux, subsolution, pk)");
    }
    emit(a.out, j, rows.empty() ? "" : csv_rows(header, rows));
    return 0;
}

// ---------------------------------------------------------------------------

struct ShootArgs {
    double m = 0.0;
    double tol = 1e-6;
    std::string out;
};

int cmd_shoot_beta(const ShootArgs& a, std::ostream& out) {
    const flux::BetaStarResult r = flux::shoot_beta_star(a.m, a.tol);
    json j;
    j["m"] = r.m;
    j["p"] = r.p;
    j["beta_star"] = r.beta_star;
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    j["bracket"] = r.hi - r.lo;
    j["iterations"] = r.iterations;
    j["monotone"] = r.monotone;
    j["C_m"] = r.C_m;
    j["gradient_bound_ratio"] = r.gradient_bound_ratio;
    j["support_edge"] = optional_number(r.critical_profile.support_edge);
    json hist = json::array();
    for (const auto& s : r.history) {
        hist.push_back({{"beta", s.beta}, {"classification", flux::to_string(s.classification)}});
    }
    j["history"] = hist;
    out << j.dump(2) << "\n";
    std::vector<std::vector<double>> rows;
    for (const auto& s : r.critical_profile.samples) rows.push_back({s.xi, s.F, s.s});
    emit(a.out, j, csv_rows("xi,G,s", rows));
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& config_path, bool plot_script, std::ostream& out) {
    const io::ExperimentConfig cfg = io::read_config(config_path);
    const pde::Grid grid = io::validate_config(cfg);
    const pde::RunOptions opts = cfg.run_options();
    const pde::RunResult res = pde::run(cfg.params, grid, opts);

    std::optional<double> sensitivity;
    if (cfg.check_domain) {
        const pde::Grid wide = pde::make_grid(cfg.grid.doubled(), cfg.params.L);
        sensitivity = pde::probe_sensitivity(res, pde::run(cfg.params, wide, opts));
    }

    const auto& s = res.series;
    const double M = s.max_u.front();
    json j;
    j["exponents"] = json::parse(io::exponent_report_json(exponent_report(cfg.params.m, cfg.params.p, cfg.params.L)));
    json run;
    run["status"] = pde::to_string(res.final_state.status);
    run["t_final"] = res.final_state.t;
    run["cap_time"] = optional_number(res.cap_time);
    run["steps"] = res.final_state.steps;
    run["rejected"] = res.final_state.rejected;
    run["scheme"] = pde::to_string(cfg.scheme);
    run["cells"] = grid.size();
    run["dx"] = grid.dx;
    run["wall"] = grid.wall;
    run["records"] = s.rows();
    run["max_u0"] = M;
    run["max_u_final"] = s.max_u.back();
    run["energy_nonincreasing"] = pde::energy_nonincreasing(s);
    const auto flat = rates::check_flat_bound(s, M, cfg.params.p);
    run["flat_bound_ok"] = flat.ok;
    run["flat_bound_worst_ratio"] = flat.worst_ratio;
    run["domain_sensitivity"] = optional_number(sensitivity);
    j["run"] = run;

    const fs::path dir = io::output_dir(cfg.output);
    io::OutputSession session(dir);
    session.write("series.csv", io::series_csv(s));
    session.write("energy.csv", io::energy_csv(s));
    session.write("plot.csv", io::plot_csv(s));
    session.write("config.cfg", io::format_config(cfg));
    if (plot_script) {
        std::string gp = "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'log t'\n"
                         "set ylabel 'log u'\nplot";
        for (std::size_t i = 0; i < s.probes.size(); ++i) {
            gp += (i ? ", " : " ") + std::string("'plot.csv' using 2:") + std::to_string(i + 3) + " with lines";
        }
        session.write("plot.gp", gp + "\n");
    }
    session.write("report.json", j.dump(2) + "\n");
    session.commit();

    out << "status = " << pde::to_string(res.final_state.status) << "\n"
        << "t_final = " << format_double(res.final_state.t) << "\n"
        << "steps = " << res.final_state.steps << "\n"
        << "max_u = " << format_double(s.max_u.back()) << "\n";
    if (sensitivity) out << "domain_sensitivity = " << format_double(*sensitivity) << "\n";
    out << "output = " << dir.string() << "\n";
    return 0;
}

int cmd_verdict(const std::string& config_path, std::ostream& out) {
    const io::ExperimentConfig cfg = io::read_config(config_path);
    io::validate_config(cfg);
    const fs::path dir = io::output_dir(cfg.output);
    const fs::path series_path = dir / "series.csv";
    if (!fs::exists(series_path)) {
        throw InvalidInput("verdict: " + series_path.string() + " not found; run simulate first");
    }
    const pde::TimeSeries s = io::parse_series_csv(io::read_file(series_path));
    if (s.probes != cfg.probes) {
        throw InvalidInput("verdict: series.csv probes do not match the configuration");
    }
    const ExponentReport report = exponent_report(cfg.params.m, cfg.params.p, cfg.params.L);
    if (!report.rates) {
        throw InvalidInput("verdict: regime " + report.regime.name() + " has no predicted grow-up law");
    }
    rates::Window w = rates::default_window(s, cfg.fit.decades);
    if (cfg.fit.window_lo) w.t_lo = *cfg.fit.window_lo;
    if (cfg.fit.window_hi) w.t_hi = *cfg.fit.window_hi;

    std::vector<rates::RateFit> fits;
    for (std::size_t j = 0; j < s.probes.size(); ++j) {
        const bool inside = std::abs(s.probes[j]) < cfg.params.L;
        const RateLaw& law = inside ? report.rates->inside : report.rates->outside;
        fits.push_back(rates::fit_for(law, s, j, w));
    }
    rates::Verdict v = rates::verdict(report, fits, cfg.fit.tol);
    v.energy_ok = pde::energy_nonincreasing(s);
    v.flat_bound = rates::check_flat_bound(s, s.max_u.front(), cfg.params.p);
    rates::finalize(v);

    io::OutputSession session(dir);
    session.write("fits.csv", io::fits_csv(fits));
    session.write("verdict.json", rates::verdict_json(v));
    session.commit();

    for (const auto& pv : v.probes) {
        out << "x = " << format_double(pv.x) << " (" << pv.region << "): predicted " << pv.predicted.describe()
            << ", fitted " << format_double(pv.fit.fitted);
        if (pv.evaluated) out << ", rel error " << format_double(pv.rel_error) << (pv.pass ? " PASS" : " FAIL");
        else out << ", not evaluated";
        out << "\n";
    }
    out << "energy non-increasing: " << (*v.energy_ok ? "yes" : "no") << "\n"
        << "flat bound respected: " << (v.flat_bound->ok ? "yes" : "no") << "\n"
        << "verdict = " << (v.pass ? "PASS" : "FAIL") << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::vector<double> ms, ps;
    double L = 1.0;
    double confirm = 0.0;
    unsigned workers = 0;
    std::string out;
};

struct SweepRow {
    double m = 0.0, p = 0.0;
    std::string p0, pF, regime, alpha, empirical, error;
};

SweepRow sweep_cell(double m, double p, double L, double confirm) {
    SweepRow row;
    row.m = m;
    row.p = p;
    try {
        row.p0 = format_double(compute_p0(m));
        row.pF = format_double(compute_pF(m));
        row.regime = classify_regime(m, p).name();
        if (p <= compute_p0(m) + kExponentTol) {
            const Alpha al = compute_alpha(m, p);
            row.alpha = al.is_power() ? format_double(al.value) : "exponential";
        }
        if (confirm > 0.0) {
            ProblemParams params{m, p, L, InitialData::plateau(1.0, L, 1.0)};
            const pde::Grid grid = pde::make_grid(pde::GridSpec::aligned(L, 4.0 * L, 10), L);
            pde::RunOptions o;
            o.T_max = confirm;
            o.u_cap = 1e3;
            o.control.scheme = pde::Scheme::Implicit;
            o.control.target_change = 0.05;
            const auto res = pde::run(params, grid, o);
            if (res.cap_time) row.empirical = "cap-crossed";
            else if (res.series.max_u.back() > 1.5 * res.series.max_u.front()) row.empirical = "growing";
            else row.empirical = "not-growing";
        }
    } catch (const std::exception& e) {
        row.error = e.what();
        std::replace(row.error.begin(), row.error.end(), ',', ';');
    }
    return row;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    require(a.L > 0.0 && std::isfinite(a.L), "sweep: L must be positive");
    require(a.confirm >= 0.0, "sweep: --confirm must be non-negative");
    std::vector<std::pair<double, double>> cells;
    for (double m : a.ms) {
        for (double p : a.ps) cells.emplace_back(m, p);
    }
    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            rows[i] = sweep_cell(cells[i].first, cells[i].second, a.L, a.confirm);
        }
    };
    unsigned n_workers = a.workers ? a.workers : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, std::max<std::size_t>(cells.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::string csv = "m,p,p0,pF,regime,alpha,empirical,error\n";
    for (const auto& r : rows) {
        csv += format_double(r.m) + "," + format_double(r.p) + "," + r.p0 + "," + r.pF + "," + r.regime + "," +
               r.alpha + "," + r.empirical + "," + r.error + "\n";
    }
    if (a.out.empty()) {
        out << csv;
    } else {
        io::OutputSession session(io::output_dir(a.out));
        session.write("regime_map.csv", csv);
        session.commit();
        out << "cells = " << rows.size() << "\n";
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Grow-up laboratory for u_t = (u^m)_xx + 1_(-L,L) u^p"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    ExponentsArgs ea;
    auto* exps = app.add_subcommand("exponents", "Critical exponents, regime and predicted rates");
    exps->add_option("--m", ea.m, "Diffusion exponent")->required();
    exps->add_option("--p", ea.p, "Reaction exponent")->required();
    exps->add_option("--L", ea.L, "Reaction half-width");
    exps->add_flag("--json", ea.json_only, "Print the JSON report only");
    exps->add_option("--out", ea.out, "Directory for report.json");

    EigenArgs ga;
    auto* eig = app.add_subcommand("eigen", "Eigenvalue lambda0(L) of the linear problem m = p = 1");
    eig->add_option("--L", ga.L, "Reaction half-width")->required();
    eig->add_option("--samples", ga.samples, "Profile samples");
    eig->add_option("--r-max", ga.r_max, "Profile extent (default 4L)");
    eig->add_option("--out", ga.out, "Directory for report.json and profile.csv");

    ProfileArgs pa;
    auto* prof = app.add_subcommand("profile", "Similarity, separable, compact and flux profiles");
    prof->add_option("--kind", pa.kind, "selfsim | separable | lambda-star | compact | flux | subsolution | pk")
        ->required();
    prof->add_option("--m", pa.m);
    prof->add_option("--p", pa.p);
    prof->add_option("--L", pa.L);
    prof->add_option("--alpha", pa.alpha);
    prof->add_option("--beta", pa.beta);
    prof->add_option("--lambda", pa.lambda);
    prof->add_option("--K", pa.K);
    prof->add_option("--A", pa.A);
    prof->add_option("--B", pa.B);
    prof->add_option("--rate", pa.rate, "Flux profile rate (default 1/(m+1-2p))");
    prof->add_option("--f0", pa.f0, "Similarity profile value at the origin");
    prof->add_flag("--exponential", pa.exponential, "Exponential flux profile");
    prof->add_option("--out", pa.out, "Directory for report.json and profile.csv");

    ShootArgs sa;
    auto* shoot = app.add_subcommand("shoot-beta", "Critical beta* for p = (m+1)/2, m > 1");
    shoot->add_option("--m", sa.m)->required();
    shoot->add_option("--tol", sa.tol, "Bracket width");
    shoot->add_option("--out", sa.out, "Directory for report.json and profile.csv");

    std::string sim_cfg;
    bool plot_script = false;
    auto* sim = app.add_subcommand("simulate", "Run the PDE solver for a configuration");
    sim->add_option("--config", sim_cfg)->required();
    sim->add_flag("--plot-script", plot_script, "Also write a gnuplot script");

    std::string ver_cfg;
    auto* ver = app.add_subcommand("verdict", "Fit rates from a finished simulation and compare");
    ver->add_option("--config", ver_cfg)->required();

    SweepArgs wa;
    auto* sweep = app.add_subcommand("sweep", "Regime map over a grid of (m, p)");
    sweep->add_option("--m", wa.ms, "Comma-separated m values")->delimiter(',');
    sweep->add_option("--p", wa.ps, "Comma-separated p values")->delimiter(',');
    sweep->add_option("--L", wa.L);
    sweep->add_option("--confirm", wa.confirm, "Horizon of short confirmation runs (0: none)");
    sweep->add_option("--workers", wa.workers, "Parallel cells (default: hardware threads, at most 8)");
    sweep->add_option("--out", wa.out, "Directory for regime_map.csv (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*exps) return cmd_exponents(ea, out);
        if (*eig) return cmd_eigen(ga, out);
        if (*prof) return cmd_profile(pa, out);
        if (*shoot) return cmd_shoot_beta(sa, out);
        if (*sim) return cmd_simulate(sim_cfg, plot_script, out);
        if (*ver) return cmd_verdict(ver_cfg, out);
        if (*sweep) return cmd_sweep(wa, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace growup::cli
