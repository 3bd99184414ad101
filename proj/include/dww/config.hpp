#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dww/integrator.hpp"
#include "dww/nondim.hpp"
#include "dww/params.hpp"

namespace dww::config {

// Flat `key = value` text files: one pair per line, '#' starts a comment,
// blank lines ignored. Keys may repeat (initial-condition mode lines do).

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}
}  // namespace detail

struct KeyValues {
    std::string source = "<string>";
    std::vector<std::pair<std::string, std::string>> entries;

    static KeyValues parse(const std::string& text, const std::string& source = "<string>") {
        KeyValues kv;
        kv.source = source;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError(source, lineno, "expected 'key = value', got '" + line + "'");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty()) throw ParseError(source, lineno, "empty key");
            kv.entries.emplace_back(key, value);
        }
        return kv;
    }

    static KeyValues parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open file " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path);
    }

    const std::string* find(const std::string& key) const {
        const std::string* hit = nullptr;
        for (const auto& [k, v] : entries)
            if (k == key) hit = &v;
        return hit;
    }

    std::vector<std::string> all(const std::string& key) const {
        std::vector<std::string> out;
        for (const auto& [k, v] : entries)
            if (k == key) out.push_back(v);
        return out;
    }

    bool has(const std::string& key) const { return find(key) != nullptr; }

    double get_double(const std::string& key) const { return parse_double(key, require(key)); }
    double get_double_or(const std::string& key, double fallback) const {
        const std::string* v = find(key);
        return v ? parse_double(key, *v) : fallback;
    }
    int get_int(const std::string& key) const {
        const double d = get_double(key);
        const int i = static_cast<int>(d);
        if (static_cast<double>(i) != d)
            throw ParseError(source + ": field '" + key + "' must be an integer");
        return i;
    }
    int get_int_or(const std::string& key, int fallback) const {
        return has(key) ? get_int(key) : fallback;
    }
    bool get_bool_or(const std::string& key, bool fallback) const {
        const std::string* v = find(key);
        if (!v) return fallback;
        if (*v == "true" || *v == "1") return true;
        if (*v == "false" || *v == "0") return false;
        throw ParseError(source + ": field '" + key + "' must be true/false");
    }
    std::string get_string(const std::string& key) const { return require(key); }

    const std::string& require(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw ParseError(source + ": missing required field '" + key + "'");
        return *v;
    }

private:
    double parse_double(const std::string& key, const std::string& value) const {
        try {
            std::size_t pos = 0;
            const double d = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument("trailing characters");
            return d;
        } catch (const std::exception&) {
            throw ParseError(source + ": field '" + key + "' has non-numeric value '" + value + "'");
        }
    }
};

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

/// Model parameters from a params file (keys: s, epsilon, beta, alpha1, alpha2).
inline ModelParams load_model_params(const KeyValues& kv) {
    ModelParams p;
    p.s = kv.get_int_or("s", 0);
    p.epsilon = kv.get_double_or("epsilon", 0.0);
    p.beta = kv.get_double_or("beta", 0.0);
    p.alpha1 = kv.get_double_or("alpha1", 0.0);
    p.alpha2 = kv.get_double_or("alpha2", 0.0);
    p.validate();
    return p;
}

/// Physical parameters (SI) from a params file. Dissipation enters either as
/// dissipation_delta1 (with density) or as delta1_over_rho.
inline PhysicalParams load_physical_params(const KeyValues& kv) {
    PhysicalParams p;
    p.amplitude_H = kv.get_double("amplitude_H");
    p.wavelength_L = kv.get_double("wavelength_L");
    p.gravity_G = kv.get_double("gravity_G");
    p.surface_tension_gamma = kv.get_double_or("surface_tension_gamma", 0.0);
    p.density_rho = kv.get_double("density_rho");
    p.s = kv.get_int_or("s", 0);
    if (kv.has("dissipation_delta1") && kv.has("delta1_over_rho"))
        throw ParseError(kv.source + ": give dissipation_delta1 or delta1_over_rho, not both");
    if (kv.has("delta1_over_rho")) {
        p.dissipation_delta1 = kv.get_double("delta1_over_rho");
        p.delta1_is_ratio = true;
    } else {
        p.dissipation_delta1 = kv.get_double_or("dissipation_delta1", 0.0);
    }
    p.diffusion_delta2 = kv.get_double_or("diffusion_delta2", 0.0);
    return p;
}

namespace detail {

inline ModeAmp parse_mode_line(const std::string& source, const std::string& key,
                               const std::string& value) {
    std::istringstream in(value);
    ModeAmp m;
    if (!(in >> m.k >> m.cos_amp)) throw ParseError(source + ": field '" + key + "' expects 'k cos_amp [sin_amp]'");
    if (!(in >> m.sin_amp)) m.sin_amp = 0.0;
    std::string rest;
    if (in >> rest) throw ParseError(source + ": field '" + key + "' has trailing tokens");
    return m;
}

inline FieldIC load_ic(const KeyValues& kv, const std::string& name,
                       const std::filesystem::path& base_dir) {
    FieldIC ic;
    for (const auto& v : kv.all("ic_" + name + "_mode"))
        ic.modes.push_back(parse_mode_line(kv.source, "ic_" + name + "_mode", v));
    if (kv.has("ic_" + name + "_file")) {
        std::filesystem::path p = kv.get_string("ic_" + name + "_file");
        if (p.is_relative()) p = base_dir / p;
        ic.sample_file = p.string();
    }
    return ic;
}

}  // namespace detail

/// Simulation config from a flat key/value file. Relative IC sample paths are
/// resolved against the config file's directory.
inline SimConfig load_sim_config(const KeyValues& kv,
                                 const std::filesystem::path& base_dir = ".") {
    SimConfig cfg;
    cfg.model = model_from_name(kv.require("model"));
    cfg.params = load_model_params(kv);
    cfg.params = effective_params(cfg.model, cfg.params);
    cfg.n_points = kv.get_int("n_points");
    cfg.dt = kv.get_double("dt");
    cfg.t_end = kv.get_double("t_end");
    cfg.snapshot_every = kv.get_int_or("snapshot_every", 1);
    cfg.allow_unstable_dt = kv.get_bool_or("allow_unstable_dt", false);
    cfg.ic_f = detail::load_ic(kv, "f", base_dir);
    cfg.ic_second = detail::load_ic(kv, is_wave_model(cfg.model) ? "ft" : "zeta", base_dir);
    if (const std::string* tm = kv.find("track_modes")) {
        std::istringstream in(*tm);
        int k;
        while (in >> k) cfg.track_modes.push_back(k);
    }
    return cfg;
}

inline SimConfig load_sim_config_file(const std::string& path) {
    return load_sim_config(KeyValues::parse_file(path),
                           std::filesystem::path(path).parent_path());
}

/// Canonical echo of a resolved config; parsing it back reproduces the run.
inline std::string echo_sim_config(const SimConfig& cfg) {
    std::ostringstream os;
    os << "# dww.config.v1\n";
    os << "model = " << model_name(cfg.model) << "\n";
    os << "n_points = " << cfg.n_points << "\n";
    os << "dt = " << format_double(cfg.dt) << "\n";
    os << "t_end = " << format_double(cfg.t_end) << "\n";
    os << "snapshot_every = " << cfg.snapshot_every << "\n";
    os << "epsilon = " << format_double(cfg.params.epsilon) << "\n";
    os << "beta = " << format_double(cfg.params.beta) << "\n";
    os << "alpha1 = " << format_double(cfg.params.alpha1) << "\n";
    os << "alpha2 = " << format_double(cfg.params.alpha2) << "\n";
    os << "s = " << effective_params(cfg.model, cfg.params).s << "\n";
    os << "allow_unstable_dt = " << (cfg.allow_unstable_dt ? "true" : "false") << "\n";
    const std::string second = is_wave_model(cfg.model) ? "ft" : "zeta";
    auto emit_ic = [&os](const std::string& name, const FieldIC& ic) {
        for (const ModeAmp& m : ic.modes)
            os << "ic_" << name << "_mode = " << m.k << " " << format_double(m.cos_amp) << " "
               << format_double(m.sin_amp) << "\n";
        if (!ic.sample_file.empty()) os << "ic_" << name << "_file = " << ic.sample_file << "\n";
    };
    emit_ic("f", cfg.ic_f);
    emit_ic(second, cfg.ic_second);
    if (!cfg.track_modes.empty()) {
        os << "track_modes =";
        for (int k : cfg.track_modes) os << " " << k;
        os << "\n";
    }
    return os.str();
}

}  // namespace dww::config
