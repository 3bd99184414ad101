#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "dww/field.hpp"
#include "dww/mat2.hpp"
#include "dww/operators.hpp"
#include "dww/params.hpp"

namespace dww {

// Second-order nonlocal wave models for the renormalized surface elevation f.
//
// s = 0:
//   f_tt = -Lambda f - beta Lambda^3 f - a1 f_t + a1 a2 d1^2 f + a2 d1^2 f_t
//          + eps * N0(f, f_t)
// s = 2:
//   f_tt = (a1 + a2) d1^2 f_t - Lambda f - beta Lambda^3 f - a1 a2 d1^4 f
//          + eps * N2(f, f_t)
//
// with the quadratic nonlinearities built from Hilbert-transform commutators.
// Both families share the a-independent part of the nonlinearity, so setting
// all alphas to zero collapses them onto the common quadratic h-model.

/// (f, f_t) pair; both fields zero-mean on the same grid.
struct WaveState {
    SpectralField f;
    SpectralField ft;
};

/// Plane-wave frequencies omega_{+,-}(k) of the linearized model, as the two
/// roots of omega^2 + i Gamma(k) omega - Omega2(k) = 0.
struct DispersionBranch {
    int k = 0;
    std::complex<double> omega_plus;
    std::complex<double> omega_minus;
};

/// Damping coefficient Gamma(k) of the linearized model.
inline double damping_gamma(int k, const ModelParams& p) {
    const double k2 = static_cast<double>(k) * k;
    return p.s == 0 ? p.alpha1 + p.alpha2 * k2 : (p.alpha1 + p.alpha2) * k2;
}

/// Squared oscillator frequency Omega^2(k) of the linearized model.
inline double omega0_squared(int k, const ModelParams& p) {
    const double ak = std::abs(static_cast<double>(k));
    const double k2 = ak * ak;
    const double grav_cap = ak * (1.0 + p.beta * k2);
    return p.s == 0 ? grav_cap + p.alpha1 * p.alpha2 * k2
                    : grav_cap + p.alpha1 * p.alpha2 * k2 * k2;
}

/// Both complex roots, computed with the complex quadratic formula so that
/// overdamped modes yield two purely imaginary frequencies.
inline DispersionBranch dispersion(int k, const ModelParams& p) {
    const double gamma = damping_gamma(k, p);
    const double om2 = omega0_squared(k, p);
    const std::complex<double> root =
        std::sqrt(std::complex<double>(om2 - gamma * gamma / 4.0, 0.0));
    const std::complex<double> shift(0.0, -gamma / 2.0);
    return {k, shift + root, shift - root};
}

/// Inviscid branch sqrt(|k| (1 + beta |k|^2)).
inline double dispersion_inviscid(int k, double beta) {
    if (beta < 0.0) throw std::invalid_argument("dispersion_inviscid: beta must be >= 0");
    const double ak = std::abs(static_cast<double>(k));
    return std::sqrt(ak * (1.0 + beta * ak * ak));
}

/// Per-mode companion matrix of the linearized model acting on (f_hat, ft_hat).
inline Mat2 companion_matrix(int k, const ModelParams& p) {
    return {0.0, 1.0, -omega0_squared(k, p), -damping_gamma(k, p)};
}

/// Exact one-step propagator e^{C dt} of the per-mode linear system.
inline Mat2c linear_propagator(int k, const ModelParams& p, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("linear_propagator: dt must be positive");
    const Mat2 e = expm(companion_matrix(k, p), dt);
    return {e.a, e.b, e.c, e.d};
}

namespace detail {

inline SpectralField comm_h(const SpectralField& a, const SpectralField& b) {
    return commutator(OpTag::hilbert, a, b);
}
inline SpectralField comm_dxx(const SpectralField& a, const SpectralField& b) {
    return commutator(OpTag::dxx, a, b);
}

}  // namespace detail

/// Quadratic nonlinearity of the wave model selected by p.s (the bracketed
/// right side of the evolution equation, without the epsilon factor).
inline SpectralField wave_nonlinear(const WaveState& state, const ModelParams& p) {
    state.f.check_same_grid(state.ft);
    const SpectralField& f = state.f;
    const SpectralField hft = hilbert(state.ft);
    const SpectralField fxx = derivative(f, 2);
    const SpectralField lam_f = lambda_pow(f, 1.0);

    SpectralField n = -lambda_pow(multiply(hft, hft), 1.0);
    n += derivative(detail::comm_h(f, lam_f), 1);
    if (p.beta != 0.0)
        n += p.beta * derivative(detail::comm_h(f, lambda_pow(f, 3.0)), 1);
    if (p.alpha2 != 0.0) {
        const SpectralField hfxx = hilbert(fxx);
        n += p.alpha2 * derivative(detail::comm_h(hft, hfxx), 1);
        n += p.alpha2 * lambda_pow(multiply(hft, hfxx), 1.0);
        n -= (p.alpha2 * p.alpha2) * derivative(detail::comm_h(fxx, fxx), 1);
    }
    if (p.s == 2 && p.alpha1 != 0.0) {
        n -= p.alpha1 * derivative(detail::comm_dxx(f, hft), 1);
        if (p.alpha2 != 0.0)
            n += (p.alpha1 * p.alpha2) *
                 derivative(detail::comm_dxx(f, derivative(lam_f, 1)), 1);
    }
    n.pin_mean();
    return n;
}

namespace detail {

inline std::pair<SpectralField, SpectralField> wave_rhs(const WaveState& state,
                                                        const ModelParams& p) {
    state.f.check_same_grid(state.ft);
    SpectralField ftt(state.f.grid());
    for (int k = 0; k < ftt.n_modes(); ++k)
        ftt.raw(k) = -omega0_squared(k, p) * state.f.raw(k) -
                     damping_gamma(k, p) * state.ft.raw(k);
    if (p.epsilon != 0.0) {
        SpectralField n = wave_nonlinear(state, p);
        n *= p.epsilon;
        ftt += n;
    }
    ftt.pin_mean();
    ftt.raw(ftt.n_modes()) = 0.0;
    return {state.ft, ftt};
}

}  // namespace detail

/// Right-hand side (f_t, f_tt) of the s = 0 model.
inline std::pair<SpectralField, SpectralField> rhs_s0(const WaveState& state,
                                                      const ModelParams& p) {
    if (p.s != 0) throw std::invalid_argument("rhs_s0: params have s != 0");
    return detail::wave_rhs(state, p);
}

/// Right-hand side (f_t, f_tt) of the s = 2 model.
inline std::pair<SpectralField, SpectralField> rhs_s2(const WaveState& state,
                                                      const ModelParams& p) {
    if (p.s != 2) throw std::invalid_argument("rhs_s2: params have s != 2");
    return detail::wave_rhs(state, p);
}

}  // namespace dww
