#include "growup/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "growup/error.hpp"
#include "json.hpp"

namespace growup::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& what) {
    const char* first = text.data();
    const char* last = first + text.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw InvalidInput(what + ": '" + text + "' is not a number");
    }
    return v;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

bool parse_bool(const std::string& v, const std::string& what) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InvalidInput(what + ": '" + v + "' is not a boolean");
}

std::size_t parse_size(const std::string& v, const std::string& what) {
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw InvalidInput(what + ": '" + v + "' is not a non-negative integer");
    }
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += format_double(xs[i]);
    }
    return s;
}

std::string probe_label(double x) { return "u(x=" + format_double(x) + ")"; }

}  // namespace

pde::RunOptions ExperimentConfig::run_options() const {
    pde::RunOptions o;
    o.T_max = T_max;
    o.u_cap = u_cap;
    o.t0 = t0;
    o.ratio = ratio;
    o.probes = probes;
    o.control.scheme = scheme;
    o.control.target_change = target_change;
    o.control.change_floor = change_floor;
    o.control.reaction = reaction;
    return o;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const std::string where = "config line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw InvalidInput(where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"problem", "initial", "grid", "run", "fit", "output"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) throw InvalidInput(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw InvalidInput(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string what = where + " (" + section + "." + key + ")";
        auto num = [&] { return parse_double(val, what); };

        if (section == "problem") {
            if (key == "m") cfg.params.m = num();
            else if (key == "p") cfg.params.p = num();
            else if (key == "L") cfg.params.L = num();
            else throw InvalidInput(what + ": unknown key");
        } else if (section == "initial") {
            auto& d = cfg.params.init;
            if (key == "kind") d.kind = initial_kind_from_string(val);
            else if (key == "amplitude") d.amplitude = num();
            else if (key == "width") d.width = num();
            else if (key == "ramp") d.ramp = num();
            else if (key == "decay") d.decay = num();
            else throw InvalidInput(what + ": unknown key");
        } else if (section == "grid") {
            if (key == "R") cfg.grid.R = num();
            else if (key == "n") cfg.grid.n = parse_size(val, what);
            else if (key == "outer") cfg.grid.outer = num();
            else if (key == "stretch") cfg.grid.stretch = num();
            else throw InvalidInput(what + ": unknown key");
        } else if (section == "run") {
            if (key == "T_max") cfg.T_max = num();
            else if (key == "u_cap") cfg.u_cap = num();
            else if (key == "t0") cfg.t0 = num();
            else if (key == "ratio") cfg.ratio = num();
            else if (key == "probes") {
                cfg.probes.clear();
                for (const auto& item : split(val, ',')) cfg.probes.push_back(parse_double(item, what));
            } else if (key == "scheme") cfg.scheme = pde::scheme_from_string(val);
            else if (key == "target_change") cfg.target_change = num();
            else if (key == "change_floor") cfg.change_floor = num();
            else if (key == "reaction") cfg.reaction = parse_bool(val, what);
            else if (key == "check_domain") cfg.check_domain = parse_bool(val, what);
            else throw InvalidInput(what + ": unknown key");
        } else if (section == "fit") {
            if (key == "window_lo") cfg.fit.window_lo = num();
            else if (key == "window_hi") cfg.fit.window_hi = num();
            else if (key == "decades") cfg.fit.decades = num();
            else if (key == "tol_power") cfg.fit.tol.power = num();
            else if (key == "tol_exp") cfg.fit.tol.exponential = num();
            else throw InvalidInput(what + ": unknown key");
        } else if (section == "output") {
            if (key == "dir") cfg.output = val;
            else throw InvalidInput(what + ": unknown key");
        } else {
            throw InvalidInput(what + ": key outside any section");
        }
    }
    return cfg;
}

ExperimentConfig read_config(const fs::path& path) { return parse_config(read_file(path)); }

std::string format_config(const ExperimentConfig& cfg) {
    std::ostringstream o;
    const auto& d = cfg.params.init;
    o << "[problem]\n"
      << "m = " << format_double(cfg.params.m) << "\n"
      << "p = " << format_double(cfg.params.p) << "\n"
      << "L = " << format_double(cfg.params.L) << "\n\n"
      << "[initial]\n"
      << "kind = " << to_string(d.kind) << "\n"
      << "amplitude = " << format_double(d.amplitude) << "\n"
      << "width = " << format_double(d.width) << "\n"
      << "ramp = " << format_double(d.ramp) << "\n"
      << "decay = " << format_double(d.decay) << "\n\n"
      << "[grid]\n"
      << "R = " << format_double(cfg.grid.R) << "\n"
      << "n = " << cfg.grid.n << "\n"
      << "outer = " << format_double(cfg.grid.outer) << "\n"
      << "stretch = " << format_double(cfg.grid.stretch) << "\n\n"
      << "[run]\n"
      << "T_max = " << format_double(cfg.T_max) << "\n"
      << "u_cap = " << format_double(cfg.u_cap) << "\n"
      << "t0 = " << format_double(cfg.t0) << "\n"
      << "ratio = " << format_double(cfg.ratio) << "\n"
      << "probes = " << join(cfg.probes) << "\n"
      << "scheme = " << pde::to_string(cfg.scheme) << "\n"
      << "target_change = " << format_double(cfg.target_change) << "\n"
      << "change_floor = " << format_double(cfg.change_floor) << "\n"
      << "reaction = " << (cfg.reaction ? "true" : "false") << "\n"
      << "check_domain = " << (cfg.check_domain ? "true" : "false") << "\n\n"
      << "[fit]\n";
    if (cfg.fit.window_lo) o << "window_lo = " << format_double(*cfg.fit.window_lo) << "\n";
    if (cfg.fit.window_hi) o << "window_hi = " << format_double(*cfg.fit.window_hi) << "\n";
    o << "decades = " << format_double(cfg.fit.decades) << "\n"
      << "tol_power = " << format_double(cfg.fit.tol.power) << "\n"
      << "tol_exp = " << format_double(cfg.fit.tol.exponential) << "\n\n"
      << "[output]\n"
      << "dir = " << cfg.output << "\n";
    return o.str();
}

pde::Grid validate_config(const ExperimentConfig& cfg) {
    cfg.params.validate();
    pde::Grid grid = pde::make_grid(cfg.grid, cfg.params.L);
    require(cfg.T_max > 0.0 && std::isfinite(cfg.T_max), "config: T_max must be positive");
    require(cfg.t0 > 0.0, "config: t0 must be positive");
    require(cfg.ratio > 1.0, "config: ratio must exceed 1");
    require(!cfg.probes.empty(), "config: at least one probe is required");
    for (double x : cfg.probes) {
        require(std::abs(x) <= grid.wall, "config: probe " + format_double(x) + " lies outside the domain");
    }
    require(cfg.target_change > 0.0 && cfg.change_floor >= 0.0, "config: step control must be positive");
    require(cfg.fit.decades > 0.0, "config: fit.decades must be positive");
    require(cfg.fit.tol.power > 0.0 && cfg.fit.tol.exponential > 0.0, "config: tolerances must be positive");
    if (cfg.fit.window_lo && cfg.fit.window_hi) {
        require(*cfg.fit.window_lo < *cfg.fit.window_hi, "config: empty fit window");
    }
    require(!cfg.output.empty(), "config: output.dir must not be empty");
    const auto u0 = build_initial_data(cfg.params, grid.x);
    double M = 0.0;
    for (double v : u0) M = std::max(M, v);
    require(cfg.u_cap >= 1e3 * M, "config: u_cap must be at least 1e3 max u0");
    return grid;
}

fs::path output_dir(const std::string& configured) {
    fs::path p(configured);
    const char* root = std::getenv("GROWUP_OUT");
    if (p.is_relative() && root && *root) {
        return fs::path(root) / p;
    }
    return p;
}

std::string series_csv(const pde::TimeSeries& s) {
    std::string out = "t";
    for (double x : s.probes) out += "," + probe_label(x);
    out += ",max_u,E_u\n";
    for (std::size_t k = 0; k < s.rows(); ++k) {
        out += format_double(s.t[k]);
        for (double v : s.values[k]) out += "," + format_double(v);
        out += "," + format_double(s.max_u[k]) + "," + format_double(s.energy[k]) + "\n";
    }
    return out;
}

pde::TimeSeries parse_series_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("series csv: empty file");
    const auto header = split(line, ',');
    if (header.size() < 4 || header.front() != "t" || header[header.size() - 2] != "max_u" ||
        header.back() != "E_u") {
        throw InvalidInput("series csv: unexpected header");
    }
    pde::TimeSeries s;
    for (std::size_t j = 1; j + 2 < header.size(); ++j) {
        const std::string& h = header[j];
        if (h.rfind("u(x=", 0) != 0 || h.back() != ')') throw InvalidInput("series csv: bad probe column " + h);
        s.probes.push_back(parse_double(h.substr(4, h.size() - 5), "series csv header"));
    }
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size()) throw InvalidInput("series csv: row " + std::to_string(row) + " has the wrong width");
        const std::string what = "series csv row " + std::to_string(row);
        s.t.push_back(parse_double(cells[0], what));
        std::vector<double> vals;
        for (std::size_t j = 1; j + 2 < cells.size(); ++j) vals.push_back(parse_double(cells[j], what));
        s.values.push_back(std::move(vals));
        s.max_u.push_back(parse_double(cells[cells.size() - 2], what));
        s.energy.push_back(parse_double(cells.back(), what));
    }
    return s;
}

std::string energy_csv(const pde::TimeSeries& s) {
    std::string out = "t,E_u\n";
    for (std::size_t k = 0; k < s.rows(); ++k) {
        out += format_double(s.t[k]) + "," + format_double(s.energy[k]) + "\n";
    }
    return out;
}

std::string plot_csv(const pde::TimeSeries& s) {
    std::string out = "t,log_t";
    for (double x : s.probes) out += ",log_" + probe_label(x);
    out += "\n";
    for (std::size_t k = 0; k < s.rows(); ++k) {
        if (!(s.t[k] > 0.0)) continue;
        out += format_double(s.t[k]) + "," + format_double(std::log(s.t[k]));
        for (double v : s.values[k]) out += "," + (v > 0.0 ? format_double(std::log(v)) : std::string("nan"));
        out += "\n";
    }
    return out;
}

std::string fits_csv(const std::vector<rates::RateFit>& fits) {
    std::string out = "x,form,fitted,intercept,t_lo,t_hi,points,residual,pointwise\n";
    for (const auto& f : fits) {
        out += format_double(f.probe) + "," + to_string(f.law.form) + "," + format_double(f.fitted) + "," +
               format_double(f.intercept) + "," + format_double(f.window.t_lo) + "," +
               format_double(f.window.t_hi) + "," + std::to_string(f.points) + "," +
               format_double(f.residual) + "," + (f.pointwise ? format_double(*f.pointwise) : "") + "\n";
    }
    return out;
}

std::string exponent_report_json(const ExponentReport& r) {
    nlohmann::ordered_json j;
    j["m"] = r.m;
    j["p"] = r.p;
    j["L"] = r.L;
    j["p0"] = r.p0;
    j["pF"] = r.pF;
    if (!r.alpha.is_power()) j["alpha"] = "exponential";
    else if (std::isfinite(r.alpha.value)) j["alpha"] = r.alpha.value;
    else j["alpha"] = nullptr;
    j["beta"] = r.beta ? nlohmann::ordered_json(*r.beta) : nlohmann::ordered_json(nullptr);
    j["gamma"] = r.gamma ? nlohmann::ordered_json(*r.gamma) : nlohmann::ordered_json(nullptr);
    j["regime"] = r.regime.name();
    if (r.rates) {
        auto law = [](const RateLaw& l) {
            nlohmann::ordered_json e;
            e["form"] = to_string(l.form);
            if (l.form != RateForm::Unspecified) e["value"] = l.value;
            e["law"] = l.describe();
            return e;
        };
        j["rate_inside"] = law(r.rates->inside);
        j["rate_outside"] = law(r.rates->outside);
    }
    return j.dump(2) + "\n";
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw InvalidInput("failed writing " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

OutputSession::OutputSession(fs::path dir) : dir_(std::move(dir)) {}

OutputSession::~OutputSession() {
    if (committed_) return;
    for (const auto& p : written_) {
        std::error_code ec;
        fs::remove(p, ec);
    }
}

void OutputSession::write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    write_file_atomic(p, content);
    written_.push_back(p);
}

}  // namespace growup::io
