#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "dww/field.hpp"

namespace dww {

// Nonlocal operator calculus on SpectralField. All operators act as Fourier
// multipliers on the interior band |k| < n_modes; the Nyquist coefficient is
// zeroed in every operator output so that Hermitian symmetry survives
// odd-order derivatives. Quadratic products follow the 2/3 dealiasing rule.

namespace detail {
inline void zero_nyquist(SpectralField& f) { f.raw(f.n_modes()) = 0.0; }
}  // namespace detail

/// Hilbert transform: coeff(k) -> -i sgn(k) coeff(k). Annihilates the mean.
inline SpectralField hilbert(const SpectralField& f) {
    SpectralField out(f.grid());
    const std::complex<double> mi(0.0, -1.0);
    for (int k = 1; k < f.n_modes(); ++k) out.raw(k) = mi * f.raw(k);
    return out;
}

/// |k|^s multiplier. s = 0 preserves the mean, s > 0 annihilates it, and
/// s < 0 (the Riesz potentials, down to s = -1) requires a zero-mean input.
inline SpectralField lambda_pow(const SpectralField& f, double s) {
    if (s < -1.0)
        throw std::invalid_argument("lambda_pow: s must be >= -1");
    if (s < 0.0 && !f.is_zero_mean())
        throw std::domain_error("lambda_pow: negative powers are undefined on nonzero-mean fields");
    SpectralField out(f.grid());
    if (s == 0.0) out.raw(0) = f.raw(0);
    for (int k = 1; k < f.n_modes(); ++k)
        out.raw(k) = std::pow(static_cast<double>(k), s) * f.raw(k);
    return out;
}

/// d^order/dx^order: coeff(k) -> (ik)^order coeff(k).
inline SpectralField derivative(const SpectralField& f, int order) {
    if (order < 1) throw std::invalid_argument("derivative: order must be positive");
    SpectralField out(f.grid());
    // i^order, exact
    static const std::complex<double> cycle[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> rot = cycle[order % 4];
    for (int k = 1; k < f.n_modes(); ++k) {
        double mag = 1.0;
        for (int m = 0; m < order; ++m) mag *= k;
        out.raw(k) = mag * rot * f.raw(k);
    }
    return out;
}

/// Zero all coefficients above the 2/3 cutoff (Nyquist included).
inline SpectralField dealias(SpectralField f) {
    for (int k = f.grid().dealias_cutoff() + 1; k <= f.n_modes(); ++k) f.raw(k) = 0.0;
    return f;
}

/// Pointwise product with 2/3 dealiasing applied to both inputs and the output.
inline SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    a.check_same_grid(b);
    auto pa = to_physical(dealias(a));
    const auto pb = to_physical(dealias(b));
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return dealias(to_spectral(a.grid(), pa));
}

enum class OpTag { lambda, hilbert, dxx };

inline SpectralField apply_op(OpTag op, const SpectralField& f) {
    switch (op) {
        case OpTag::lambda: return lambda_pow(f, 1.0);
        case OpTag::hilbert: return hilbert(f);
        case OpTag::dxx: return derivative(f, 2);
    }
    throw std::domain_error("apply_op: unsupported operator tag");
}

/// Commutator [op, h] g = op(h g) - h op(g), with dealiased products.
inline SpectralField commutator(OpTag op, const SpectralField& h, const SpectralField& g) {
    h.check_same_grid(g);
    return apply_op(op, multiply(h, g)) - multiply(h, apply_op(op, g));
}

/// Sup-norm residuals of the two Tricomi identities
///   (Hf)^2 - f^2 = 2 H(f Hf)
///   Hf Hg - H(f Hg + g Hf) = f g
/// Both vanish identically for zero-mean inputs band-limited to n_modes/3.
inline std::pair<double, double> tricomi_residuals(const SpectralField& f,
                                                   const SpectralField& g) {
    f.check_same_grid(g);
    const SpectralField hf = hilbert(f);
    const SpectralField hg = hilbert(g);
    const SpectralField r1 =
        multiply(hf, hf) - multiply(f, f) - 2.0 * hilbert(multiply(f, hf));
    const SpectralField r2 =
        multiply(hf, hg) - hilbert(multiply(f, hg) + multiply(g, hf)) - multiply(f, g);
    return {sup_norm(r1), sup_norm(r2)};
}

}  // namespace dww
