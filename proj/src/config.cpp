#include "fsi/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace fsi {

void SimConfig::validate() const {
    if (nx < 4) throw ValidationError("nx", "must be >= 4");
    if (nz < 4) throw ValidationError("nz", "must be >= 4");
    physics.validate();
    if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
    if (!(t_end > 0.0)) throw ValidationError("t_end", "must be > 0");
    if (!(tol_pic > 0.0)) throw ValidationError("tol_pic", "must be > 0");
    if (!(lin_tol > 0.0)) throw ValidationError("lin_tol", "must be > 0");
    if (max_iter < 1) throw ValidationError("max_iter", "must be >= 1");
    if (window_steps < 1) throw ValidationError("window_steps", "must be >= 1");
    if (min_window_steps < 1) throw ValidationError("min_window_steps", "must be >= 1");
    if (min_window_steps > window_steps)
        throw ValidationError("min_window_steps", "must be <= window_steps");
    if (!(delta0 > 0.0 && delta0 < 1.0)) throw ValidationError("delta0", "must lie in (0,1)");
    if (!(compat_tol > 0.0)) throw ValidationError("compat_tol", "must be > 0");
    if (snapshot_every < 0) throw ValidationError("snapshot_every", "must be >= 0");
    if (timeseries_every < 0) throw ValidationError("timeseries_every", "must be >= 0");
    if (mode < 0) throw ValidationError("mode", "must be >= 0");
    if (preset == InitialPreset::FromSnapshot && snapshot_path.empty())
        throw ValidationError("snapshot", "required for preset = from_snapshot");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    size_t pos = 0;
    double v;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ValidationError(key, "not a number: '" + value + "'");
    }
    if (pos != value.size()) throw ValidationError(key, "trailing characters in '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    size_t pos = 0;
    long v;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw ValidationError(key, "not an integer: '" + value + "'");
    }
    if (pos != value.size()) throw ValidationError(key, "trailing characters in '" + value + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ValidationError(key, "expected true or false, got '" + value + "'");
}

}  // namespace

SimConfig parse_config_text(const std::string& text) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::set<std::string> seen;
    int lineno = 0;
    bool have_nx = false, have_nz = false, have_t_end = false;

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"grid",    "physics", "initial", "numerics",
                                                        "output",  "flags",   "monitors"};
            if (!known.count(section)) throw ParseError("unknown section '" + section + "'", lineno);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", lineno);
        if (value.empty()) throw ParseError("empty value for '" + key + "'", lineno);
        if (section.empty()) throw ParseError("key outside any [section]", lineno);

        const std::string qualified = section + "." + key;
        if (!seen.insert(qualified).second)
            throw ParseError("duplicate key '" + qualified + "'", lineno);

        if (section == "grid") {
            if (key == "nx") {
                cfg.nx = parse_int(key, value);
                have_nx = true;
            } else if (key == "nz") {
                cfg.nz = parse_int(key, value);
                have_nz = true;
            } else if (key == "length") {
                cfg.physics.length = parse_double(key, value);
            } else {
                throw ParseError("unknown key '" + qualified + "'", lineno);
            }
        } else if (section == "physics") {
            if (key == "mu") cfg.physics.mu = parse_double(key, value);
            else if (key == "mu_prime") cfg.physics.mu_prime = parse_double(key, value);
            else if (key == "a") cfg.physics.a = parse_double(key, value);
            else if (key == "gamma") cfg.physics.gamma = parse_double(key, value);
            else if (key == "rho_bar") cfg.physics.rho_bar = parse_double(key, value);
            else if (key == "alpha") cfg.physics.alpha = parse_double(key, value);
            else if (key == "beta") cfg.physics.beta = parse_double(key, value);
            else if (key == "delta") cfg.physics.delta = parse_double(key, value);
            else throw ParseError("unknown key '" + qualified + "'", lineno);
        } else if (section == "initial") {
            if (key == "preset") {
                if (value == "steady") cfg.preset = InitialPreset::Steady;
                else if (value == "density_bump") cfg.preset = InitialPreset::DensityBump;
                else if (value == "beam_kick") cfg.preset = InitialPreset::BeamKick;
                else if (value == "from_snapshot") cfg.preset = InitialPreset::FromSnapshot;
                else throw ValidationError(key, "unknown preset '" + value + "'");
            } else if (key == "amplitude") cfg.amplitude = parse_double(key, value);
            else if (key == "mode") cfg.mode = parse_int(key, value);
            else if (key == "snapshot") cfg.snapshot_path = value;
            else throw ParseError("unknown key '" + qualified + "'", lineno);
        } else if (section == "numerics") {
            if (key == "dt") cfg.dt = parse_double(key, value);
            else if (key == "window_steps") cfg.window_steps = parse_int(key, value);
            else if (key == "min_window_steps") cfg.min_window_steps = parse_int(key, value);
            else if (key == "t_end") {
                cfg.t_end = parse_double(key, value);
                have_t_end = true;
            } else if (key == "tol_pic") cfg.tol_pic = parse_double(key, value);
            else if (key == "max_iter") cfg.max_iter = parse_int(key, value);
            else if (key == "lin_tol") cfg.lin_tol = parse_double(key, value);
            else if (key == "delta0") cfg.delta0 = parse_double(key, value);
            else if (key == "compat_tol") cfg.compat_tol = parse_double(key, value);
            else if (key == "coupling_mode") {
                if (value == "window") cfg.coupling_mode = CouplingMode::Window;
                else if (value == "step") cfg.coupling_mode = CouplingMode::Step;
                else throw ValidationError(key, "expected window or step, got '" + value + "'");
            } else throw ParseError("unknown key '" + qualified + "'", lineno);
        } else if (section == "output") {
            if (key == "dir") cfg.output_dir = value;
            else if (key == "snapshot_every") cfg.snapshot_every = parse_int(key, value);
            else if (key == "timeseries_every") cfg.timeseries_every = parse_int(key, value);
            else throw ParseError("unknown key '" + qualified + "'", lineno);
        } else if (section == "flags") {
            if (key == "allow_incompatible") cfg.allow_incompatible = parse_bool(key, value);
            else throw ParseError("unknown key '" + qualified + "'", lineno);
        } else if (section == "monitors") {
            if (key == "b1") cfg.monitor_b1 = parse_double(key, value);
            else if (key == "b2") cfg.monitor_b2 = parse_double(key, value);
            else if (key == "b3") cfg.monitor_b3 = parse_double(key, value);
            else if (key == "b4") cfg.monitor_b4 = parse_double(key, value);
            else throw ParseError("unknown key '" + qualified + "'", lineno);
        }
    }

    if (!have_nx) throw ValidationError("nx", "missing (section [grid])");
    if (!have_nz) throw ValidationError("nz", "missing (section [grid])");
    if (!have_t_end) throw ValidationError("t_end", "missing (section [numerics])");
    cfg.validate();
    return cfg;
}

SimConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {
std::string fmt(double v) {
    if (std::isinf(v)) return "inf";
    char buf[40];
    snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

std::string serialize_config(const SimConfig& c) {
    std::ostringstream out;
    out << "[grid]\n";
    out << "nx = " << c.nx << "\n";
    out << "nz = " << c.nz << "\n";
    out << "length = " << fmt(c.physics.length) << "\n";
    out << "[physics]\n";
    out << "mu = " << fmt(c.physics.mu) << "\n";
    out << "mu_prime = " << fmt(c.physics.mu_prime) << "\n";
    out << "a = " << fmt(c.physics.a) << "\n";
    out << "gamma = " << fmt(c.physics.gamma) << "\n";
    out << "rho_bar = " << fmt(c.physics.rho_bar) << "\n";
    out << "alpha = " << fmt(c.physics.alpha) << "\n";
    out << "beta = " << fmt(c.physics.beta) << "\n";
    out << "delta = " << fmt(c.physics.delta) << "\n";
    out << "[initial]\n";
    const char* preset = c.preset == InitialPreset::Steady        ? "steady"
                         : c.preset == InitialPreset::DensityBump ? "density_bump"
                         : c.preset == InitialPreset::BeamKick    ? "beam_kick"
                                                                  : "from_snapshot";
    out << "preset = " << preset << "\n";
    out << "amplitude = " << fmt(c.amplitude) << "\n";
    out << "mode = " << c.mode << "\n";
    if (!c.snapshot_path.empty()) out << "snapshot = " << c.snapshot_path << "\n";
    out << "[numerics]\n";
    out << "dt = " << fmt(c.dt) << "\n";
    out << "window_steps = " << c.window_steps << "\n";
    out << "min_window_steps = " << c.min_window_steps << "\n";
    out << "t_end = " << fmt(c.t_end) << "\n";
    out << "tol_pic = " << fmt(c.tol_pic) << "\n";
    out << "max_iter = " << c.max_iter << "\n";
    out << "lin_tol = " << fmt(c.lin_tol) << "\n";
    out << "delta0 = " << fmt(c.delta0) << "\n";
    out << "compat_tol = " << fmt(c.compat_tol) << "\n";
    out << "coupling_mode = " << (c.coupling_mode == CouplingMode::Window ? "window" : "step")
        << "\n";
    out << "[output]\n";
    out << "dir = " << c.output_dir << "\n";
    out << "snapshot_every = " << c.snapshot_every << "\n";
    out << "timeseries_every = " << c.timeseries_every << "\n";
    out << "[flags]\n";
    out << "allow_incompatible = " << (c.allow_incompatible ? "true" : "false") << "\n";
    out << "[monitors]\n";
    out << "b1 = " << fmt(c.monitor_b1) << "\n";
    out << "b2 = " << fmt(c.monitor_b2) << "\n";
    out << "b3 = " << fmt(c.monitor_b3) << "\n";
    out << "b4 = " << fmt(c.monitor_b4) << "\n";
    return out.str();
}

}  // namespace fsi
