#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dww/cs_models.hpp"
#include "dww/field.hpp"
#include "dww/mat2.hpp"
#include "dww/params.hpp"
#include "dww/wave_models.hpp"

namespace dww {

// Time integration for both model families. The per-mode linear dynamics
// (including the stiff beta Lambda^3 and alpha2 d1^2 terms) are advanced by
// the exact 2x2 matrix exponentials; the epsilon-nonlinearity is handled by a
// classical integrating-factor RK4 wrapped around them. For epsilon = 0 a
// step therefore reduces to exact linear propagation.

enum class ModelKind { wave_s0, wave_s2, ww2, cs_s0, cs_s2 };

inline bool is_wave_model(ModelKind m) {
    return m == ModelKind::wave_s0 || m == ModelKind::wave_s2;
}

inline const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::wave_s0: return "wave_s0";
        case ModelKind::wave_s2: return "wave_s2";
        case ModelKind::ww2: return "ww2";
        case ModelKind::cs_s0: return "cs_s0";
        case ModelKind::cs_s2: return "cs_s2";
    }
    throw std::domain_error("model_name: bad ModelKind");
}

inline ModelKind model_from_name(const std::string& name) {
    if (name == "wave_s0") return ModelKind::wave_s0;
    if (name == "wave_s2") return ModelKind::wave_s2;
    if (name == "ww2") return ModelKind::ww2;
    if (name == "cs_s0") return ModelKind::cs_s0;
    if (name == "cs_s2") return ModelKind::cs_s2;
    throw std::invalid_argument("unknown model '" + name + "'");
}

/// Parameters as seen by the selected model: the dissipation exponent follows
/// the model kind, and WW2 ignores the alphas.
inline ModelParams effective_params(ModelKind kind, ModelParams p) {
    switch (kind) {
        case ModelKind::wave_s0:
        case ModelKind::cs_s0: p.s = 0; break;
        case ModelKind::wave_s2:
        case ModelKind::cs_s2: p.s = 2; break;
        case ModelKind::ww2:
            p.s = 0;
            p.alpha1 = 0.0;
            p.alpha2 = 0.0;
            break;
    }
    return p;
}

/// Sparse initial-condition entry: amplitude of cos(kx) and sin(kx).
struct ModeAmp {
    int k = 0;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

/// Initial condition for one field: a mode list, or a raw sample file with
/// n_points whitespace-separated values. An empty spec is the zero field.
struct FieldIC {
    std::vector<ModeAmp> modes;
    std::string sample_file;
};

struct SimConfig {
    ModelKind model = ModelKind::wave_s0;
    ModelParams params;
    int n_points = 0;
    double dt = 0.0;
    double t_end = 0.0;
    int snapshot_every = 1;
    FieldIC ic_f;       // f
    FieldIC ic_second;  // f_t for the wave models, zeta for the CS systems
    bool allow_unstable_dt = false;
    std::vector<int> track_modes;  // modes recorded in diagnostics; empty = derive from IC
};

struct Trajectory {
    ModelKind model = ModelKind::wave_s0;
    ModelParams params;
    GridSpec grid;
    std::vector<double> times;
    std::vector<std::pair<SpectralField, SpectralField>> states;  // (f, ft|zeta)

    struct Diag {
        double sup_f = 0.0;
        std::vector<double> tracked_abs;  // |f_hat(k)| for tracked_modes
    };
    std::vector<int> tracked_modes;
    std::vector<Diag> diagnostics;
    std::vector<std::string> warnings;
};

class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}
    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid simulation config:";
        for (const auto& e : v) s += "\n  - " + e;
        return s;
    }
    std::vector<std::string> issues_;
};

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double t, Trajectory partial)
        : std::runtime_error("solution blew up (NaN/Inf) at t = " + std::to_string(t)),
          time_(t), partial_(std::move(partial)) {}
    double time() const { return time_; }
    const Trajectory& partial() const { return partial_; }

private:
    double time_;
    Trajectory partial_;
};

/// Largest oscillation frequency over the dealias-retained modes.
inline double max_linear_frequency(const ModelParams& p, const GridSpec& grid) {
    double wmax = 0.0;
    for (int k = 1; k <= grid.dealias_cutoff(); ++k)
        wmax = std::max(wmax, std::abs(dispersion(k, p).omega_plus.real()));
    return wmax;
}

/// Explicit-stage stability bound dt <= 0.5 / max_k |Re omega_+(k)|.
inline double stability_max_dt(ModelKind kind, const ModelParams& p, const GridSpec& grid) {
    const double wmax = max_linear_frequency(effective_params(kind, p), grid);
    return wmax > 0.0 ? 0.5 / wmax : std::numeric_limits<double>::infinity();
}

namespace detail {

inline Mat2 mode_matrix(ModelKind kind, int k, const ModelParams& p) {
    return is_wave_model(kind) ? companion_matrix(k, p) : cs_linear_matrix(k, p);
}

inline bool finite(const SpectralField& f) {
    for (int k = 0; k <= f.n_modes(); ++k) {
        const auto c = f.raw(k);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
}

}  // namespace detail

/// One-step integrating-factor RK4 integrator with cached per-mode propagators.
class Stepper {
public:
    Stepper(ModelKind kind, const ModelParams& params, GridSpec grid, double dt)
        : kind_(kind), p_(effective_params(kind, params)), grid_(grid), dt_(dt) {
        if (dt <= 0.0) throw std::invalid_argument("Stepper: dt must be positive");
        p_.validate();
        const int nm = grid.n_modes();
        half_.reserve(static_cast<std::size_t>(nm + 1));
        full_.reserve(static_cast<std::size_t>(nm + 1));
        for (int k = 0; k <= nm; ++k) {
            const Mat2 a = detail::mode_matrix(kind_, k, p_);
            half_.push_back(expm(a, dt / 2.0));
            full_.push_back(expm(a, dt));
        }
    }

    double dt() const { return dt_; }
    const GridSpec& grid() const { return grid_; }

    /// Advance (a, b) by one step of size dt.
    void advance(SpectralField& a, SpectralField& b) const {
        using Pair = std::pair<SpectralField, SpectralField>;
        const Pair u{a, b};
        const Pair k1 = nonlinear(u);
        const Pair eu = propagate(u, half_);
        const Pair ek1 = propagate(k1, half_);
        const Pair k2 = nonlinear(add_scaled(eu, ek1, dt_ / 2.0));
        const Pair k3 = nonlinear(add_scaled(eu, k2, dt_ / 2.0));
        const Pair e2u = propagate(u, full_);
        const Pair ek3 = propagate(k3, half_);
        const Pair k4 = nonlinear(add_scaled(e2u, ek3, dt_));

        Pair out = e2u;
        accumulate(out, propagate(k1, full_), dt_ / 6.0);
        accumulate(out, propagate(k2, half_), dt_ / 3.0);
        accumulate(out, ek3, dt_ / 3.0);
        accumulate(out, k4, dt_ / 6.0);
        a = std::move(out.first);
        b = std::move(out.second);
    }

private:
    using Pair = std::pair<SpectralField, SpectralField>;

    Pair propagate(const Pair& u, const std::vector<Mat2>& mats) const {
        Pair out{SpectralField(grid_), SpectralField(grid_)};
        for (int k = 0; k <= grid_.n_modes(); ++k) {
            auto [x, y] = mats[static_cast<std::size_t>(k)].apply(u.first.raw(k), u.second.raw(k));
            out.first.raw(k) = x;
            out.second.raw(k) = y;
        }
        return out;
    }

    static Pair add_scaled(Pair base, const Pair& inc, double w) {
        accumulate(base, inc, w);
        return base;
    }

    static void accumulate(Pair& acc, const Pair& inc, double w) {
        for (int k = 0; k <= acc.first.n_modes(); ++k) {
            acc.first.raw(k) += w * inc.first.raw(k);
            acc.second.raw(k) += w * inc.second.raw(k);
        }
    }

    Pair nonlinear(const Pair& u) const {
        Pair out{SpectralField(grid_), SpectralField(grid_)};
        if (p_.epsilon == 0.0) return out;
        if (is_wave_model(kind_)) {
            SpectralField n = wave_nonlinear(WaveState{u.first, u.second}, p_);
            n *= p_.epsilon;
            out.second = std::move(n);
            return out;
        }
        const CSState s{u.first, u.second};
        SpectralField nf = detail::cs_ft_nonlinear(s);
        nf *= p_.epsilon;
        nf.pin_mean();
        SpectralField nz(grid_);
        switch (kind_) {
            case ModelKind::ww2: {
                const SpectralField lz = lambda_pow(s.zeta, 1.0);
                const SpectralField zx = derivative(s.zeta, 1);
                nz = 0.5 * (multiply(lz, lz) - multiply(zx, zx));
                break;
            }
            case ModelKind::cs_s0: {
                nz = detail::quad_f(s);
                if (p_.alpha2 != 0.0)
                    nz += p_.alpha2 * multiply(lambda_pow(s.zeta, 1.0), derivative(s.f, 2));
                break;
            }
            case ModelKind::cs_s2: {
                nz = detail::quad_f(s);
                const SpectralField lz = lambda_pow(s.zeta, 1.0);
                if (p_.alpha1 != 0.0)
                    nz -= p_.alpha1 * (multiply(derivative(s.f, 2), lz) +
                                       2.0 * multiply(derivative(s.f, 1), derivative(lz, 1)));
                if (p_.alpha2 != 0.0)
                    nz += p_.alpha2 * multiply(lz, derivative(s.f, 2));
                break;
            }
            default: throw std::domain_error("Stepper: bad model kind");
        }
        nz *= p_.epsilon;
        out.first = std::move(nf);
        out.second = std::move(nz);
        return out;
    }

    ModelKind kind_;
    ModelParams p_;
    GridSpec grid_;
    double dt_;
    std::vector<Mat2> half_, full_;
};

/// One-shot step of a wave-model state (f, f_t).
inline WaveState step(const WaveState& state, ModelKind kind, const ModelParams& p, double dt) {
    if (!is_wave_model(kind)) throw std::invalid_argument("step: wave state needs a wave model");
    Stepper st(kind, p, state.f.grid(), dt);
    WaveState out = state;
    st.advance(out.f, out.ft);
    if (!detail::finite(out.f) || !detail::finite(out.ft))
        throw BlowUpError(dt, Trajectory{});
    return out;
}

/// One-shot step of a Craig-Sulem state (f, zeta).
inline CSState step(const CSState& state, ModelKind kind, const ModelParams& p, double dt) {
    if (is_wave_model(kind)) throw std::invalid_argument("step: CS state needs a CS model");
    Stepper st(kind, p, state.f.grid(), dt);
    CSState out = state;
    st.advance(out.f, out.zeta);
    if (!detail::finite(out.f) || !detail::finite(out.zeta))
        throw BlowUpError(dt, Trajectory{});
    return out;
}

namespace detail {

inline SpectralField realize_ic(const FieldIC& ic, const GridSpec& grid) {
    SpectralField f(grid);
    if (!ic.sample_file.empty()) {
        std::ifstream in(ic.sample_file);
        if (!in) throw std::invalid_argument("cannot open IC sample file " + ic.sample_file);
        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(grid.n_points));
        double v;
        while (in >> v) samples.push_back(v);
        f = to_spectral(grid, samples);  // throws on length mismatch
    }
    for (const ModeAmp& m : ic.modes) f += harmonic(grid, m.k, m.cos_amp, m.sin_amp);
    return f;
}

}  // namespace detail

inline std::vector<std::string> validate_config(const SimConfig& cfg) {
    std::vector<std::string> issues;
    if (cfg.n_points < 8 || cfg.n_points % 2 != 0)
        issues.push_back("n_points must be even and >= 8");
    if (!(cfg.dt > 0.0)) issues.push_back("dt must be positive");
    if (!(cfg.t_end > 0.0)) issues.push_back("t_end must be positive");
    if (cfg.t_end < cfg.dt) issues.push_back("t_end must be >= dt");
    if (cfg.snapshot_every < 1) issues.push_back("snapshot_every must be a positive integer");
    try {
        effective_params(cfg.model, cfg.params).validate();
    } catch (const std::exception& e) {
        issues.push_back(e.what());
    }
    if (cfg.n_points >= 8 && cfg.n_points % 2 == 0 && cfg.dt > 0.0) {
        const GridSpec grid(cfg.n_points);
        try {
            const double bound = stability_max_dt(cfg.model, cfg.params, grid);
            if (cfg.dt > bound && !cfg.allow_unstable_dt) {
                std::ostringstream os;
                os << "dt = " << cfg.dt << " exceeds the stability bound 0.5/omega_max = "
                   << bound << " (set allow_unstable_dt to override)";
                issues.push_back(os.str());
            }
        } catch (const std::exception& e) {
            issues.push_back(e.what());
        }
        for (const auto* ic : {&cfg.ic_f, &cfg.ic_second}) {
            if (!ic->modes.empty() && !ic->sample_file.empty())
                issues.push_back("initial condition must be a mode list or a sample file, not both");
            for (const ModeAmp& m : ic->modes)
                if (m.k < 0 || m.k > grid.n_modes())
                    issues.push_back("initial-condition mode k = " + std::to_string(m.k) +
                                     " is outside 0..n_modes");
        }
        for (int k : cfg.track_modes)
            if (k < 0 || k > grid.n_modes())
                issues.push_back("track_modes entry " + std::to_string(k) +
                                 " is outside 0..n_modes");
    }
    return issues;
}

/// Tracked modes resolved against the grid: explicit list, else the modes
/// present in the initial condition, else 1..min(8, n_modes).
inline std::vector<int> resolved_track_modes(const SimConfig& cfg) {
    if (!cfg.track_modes.empty()) return cfg.track_modes;
    std::vector<int> modes;
    for (const auto* ic : {&cfg.ic_f, &cfg.ic_second})
        for (const ModeAmp& m : ic->modes)
            if (m.k >= 1 && std::find(modes.begin(), modes.end(), m.k) == modes.end())
                modes.push_back(m.k);
    if (modes.empty())
        for (int k = 1; k <= std::min(8, cfg.n_points / 2); ++k) modes.push_back(k);
    std::sort(modes.begin(), modes.end());
    return modes;
}

/// Integrate the configured model from its initial condition to t_end,
/// recording a snapshot every snapshot_every steps. Deterministic: the same
/// config yields a bit-identical trajectory. On NaN/Inf the partial
/// trajectory is attached to the thrown BlowUpError.
inline Trajectory run(const SimConfig& cfg) {
    auto issues = validate_config(cfg);
    if (!issues.empty()) throw ConfigError(std::move(issues));

    const GridSpec grid(cfg.n_points);
    Trajectory traj;
    traj.model = cfg.model;
    traj.params = effective_params(cfg.model, cfg.params);
    traj.grid = grid;
    traj.tracked_modes = resolved_track_modes(cfg);

    SpectralField a = detail::realize_ic(cfg.ic_f, grid);
    SpectralField b = detail::realize_ic(cfg.ic_second, grid);
    if (std::abs(a.mean()) > 0.0) {
        traj.warnings.push_back("initial f has nonzero mean; projecting it out");
        a.pin_mean();
    }
    if (is_wave_model(cfg.model) && std::abs(b.mean()) > 0.0) {
        traj.warnings.push_back("initial f_t has nonzero mean; projecting it out");
        b.pin_mean();
    }

    const auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.emplace_back(a, b);
        Trajectory::Diag d;
        d.sup_f = sup_norm(a);
        d.tracked_abs.reserve(traj.tracked_modes.size());
        for (int k : traj.tracked_modes) d.tracked_abs.push_back(std::abs(a.coeff(k)));
        traj.diagnostics.push_back(std::move(d));
    };

    const Stepper stepper(cfg.model, cfg.params, grid, cfg.dt);
    const long n_steps = static_cast<long>(std::floor(cfg.t_end / cfg.dt + 1e-9));
    record(0.0);
    for (long i = 1; i <= n_steps; ++i) {
        stepper.advance(a, b);
        const double t = static_cast<double>(i) * cfg.dt;
        if (!detail::finite(a) || !detail::finite(b)) throw BlowUpError(t, std::move(traj));
        if (i % cfg.snapshot_every == 0) record(t);
    }
    return traj;
}

}  // namespace dww
