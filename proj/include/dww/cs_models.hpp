#pragma once

#include <complex>
#include <stdexcept>
#include <utility>

#include "dww/field.hpp"
#include "dww/mat2.hpp"
#include "dww/operators.hpp"
#include "dww/params.hpp"
#include "dww/wave_models.hpp"

namespace dww {

// First-order Craig-Sulem-type systems in the surface elevation f and the
// trace potential zeta. All three share the elevation equation
//
//   f_t = -eps d1(f) d1(zeta) + Lambda zeta - eps [Lambda, f] Lambda zeta  (+ a2 d1^2 f),
//
// and differ in the potential equation:
//
//   WW2      : zeta_t = eps/2 [(Lambda zeta)^2 - (d1 zeta)^2] - f + beta d1^2 f
//   viscous 0: zeta_t = eps H(d1 f Lambda f) - f + beta d1^2 f - a1 zeta
//              + a2 eps Lambda zeta d1^2 f
//   viscous 2: zeta_t = eps H(d1 f Lambda f) - f + beta d1^2 f
//              - a1 (Lambda^2 zeta + eps d1^2 f Lambda zeta + 2 eps d1 f d1 Lambda zeta)
//              + a2 eps Lambda zeta d1^2 f
//
// The WW2 quadratic term has two algebraically equivalent writings related by
// the Tricomi identity; both are exposed (Ww2Form). The zeta-based `tricomi`
// form is the self-consistent counterpart of `raw`; the viscous systems carry
// the f-based quadratic above.

struct CSState {
    SpectralField f;
    SpectralField zeta;
};

enum class Ww2Form { raw, tricomi };

/// Per-mode matrix of the linearized system d/dt (f_hat, zeta_hat).
inline Mat2 cs_linear_matrix(int k, const ModelParams& p) {
    const double ak = std::abs(static_cast<double>(k));
    const double k2 = ak * ak;
    const double lower = p.s == 0 ? p.alpha1 : p.alpha1 * k2;
    return {-p.alpha2 * k2, ak, -(1.0 + p.beta * k2), -lower};
}

/// Eigenvalues of the per-mode linearization; {i l1, i l2} coincides with
/// {omega_plus, omega_minus} of the corresponding wave model.
inline std::pair<std::complex<double>, std::complex<double>> cs_linear_eigenvalues(
    int k, const ModelParams& p) {
    return eigenvalues2(cs_linear_matrix(k, p));
}

namespace detail {

inline SpectralField cs_ft_nonlinear(const CSState& s) {
    return -multiply(derivative(s.f, 1), derivative(s.zeta, 1)) -
           commutator(OpTag::lambda, s.f, lambda_pow(s.zeta, 1.0));
}

inline SpectralField quad_f(const CSState& s) {
    return hilbert(multiply(derivative(s.f, 1), lambda_pow(s.f, 1.0)));
}

inline std::pair<SpectralField, SpectralField> cs_linear_apply(const CSState& s,
                                                               const ModelParams& p,
                                                               bool viscous) {
    SpectralField ft(s.f.grid()), zt(s.f.grid());
    ModelParams lp = p;
    if (!viscous) {
        lp.alpha1 = 0.0;
        lp.alpha2 = 0.0;
    }
    for (int k = 0; k < ft.n_modes(); ++k) {
        const Mat2 m = cs_linear_matrix(k, lp);
        auto [a, b] = m.apply(s.f.raw(k), s.zeta.raw(k));
        ft.raw(k) = a;
        zt.raw(k) = b;
    }
    return {ft, zt};
}

}  // namespace detail

/// Inviscid WW2 right-hand side (f_t, zeta_t); alpha parameters are ignored.
inline std::pair<SpectralField, SpectralField> rhs_ww2(const CSState& state,
                                                       const ModelParams& p, Ww2Form form) {
    state.f.check_same_grid(state.zeta);
    auto [ft, zt] = detail::cs_linear_apply(state, p, /*viscous=*/false);
    if (p.epsilon != 0.0) {
        SpectralField nf = detail::cs_ft_nonlinear(state);
        nf *= p.epsilon;
        ft += nf;

        SpectralField nz(state.f.grid());
        if (form == Ww2Form::raw) {
            const SpectralField lz = lambda_pow(state.zeta, 1.0);
            const SpectralField zx = derivative(state.zeta, 1);
            nz = 0.5 * (multiply(lz, lz) - multiply(zx, zx));
        } else {
            nz = hilbert(multiply(derivative(state.zeta, 1), lambda_pow(state.zeta, 1.0)));
        }
        nz *= p.epsilon;
        zt += nz;
    }
    ft.pin_mean();
    return {ft, zt};
}

/// Viscous s = 0 system.
inline std::pair<SpectralField, SpectralField> rhs_cs_s0(const CSState& state,
                                                         const ModelParams& p) {
    if (p.s != 0) throw std::invalid_argument("rhs_cs_s0: params have s != 0");
    state.f.check_same_grid(state.zeta);
    auto [ft, zt] = detail::cs_linear_apply(state, p, /*viscous=*/true);
    if (p.epsilon != 0.0) {
        SpectralField nf = detail::cs_ft_nonlinear(state);
        nf *= p.epsilon;
        ft += nf;

        SpectralField nz = detail::quad_f(state);
        if (p.alpha2 != 0.0)
            nz += p.alpha2 *
                  multiply(lambda_pow(state.zeta, 1.0), derivative(state.f, 2));
        nz *= p.epsilon;
        zt += nz;
    }
    ft.pin_mean();
    return {ft, zt};
}

/// Viscous s = 2 system (WWV2).
inline std::pair<SpectralField, SpectralField> rhs_cs_s2(const CSState& state,
                                                         const ModelParams& p) {
    if (p.s != 2) throw std::invalid_argument("rhs_cs_s2: params have s != 2");
    state.f.check_same_grid(state.zeta);
    auto [ft, zt] = detail::cs_linear_apply(state, p, /*viscous=*/true);
    if (p.epsilon != 0.0) {
        SpectralField nf = detail::cs_ft_nonlinear(state);
        nf *= p.epsilon;
        ft += nf;

        SpectralField nz = detail::quad_f(state);
        const SpectralField lz = lambda_pow(state.zeta, 1.0);
        const SpectralField fxx = derivative(state.f, 2);
        if (p.alpha1 != 0.0) {
            nz -= p.alpha1 * (multiply(fxx, lz) +
                              2.0 * multiply(derivative(state.f, 1), derivative(lz, 1)));
        }
        if (p.alpha2 != 0.0) nz += p.alpha2 * multiply(lz, fxx);
        nz *= p.epsilon;
        zt += nz;
    }
    ft.pin_mean();
    return {ft, zt};
}

}  // namespace dww
