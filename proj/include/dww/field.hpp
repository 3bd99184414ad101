#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "dww/fft.hpp"
#include "dww/grid.hpp"

namespace dww {

/// Spectral representation of a real periodic function on [-pi, pi):
///
///     f(x) = sum_{k=-n_modes+1}^{n_modes} coeff(k) e^{i k x},
///     coeff(-k) = conj(coeff(k)).
///
/// Only the half-spectrum k = 0..n_modes is stored; Hermitian symmetry (and
/// hence realness in physical space) holds by construction. coeff(0) is the
/// mean of the field and is kept real.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(GridSpec grid)
        : grid_(grid), coeff_(static_cast<std::size_t>(grid.n_modes() + 1)) {}

    const GridSpec& grid() const { return grid_; }
    int n_modes() const { return grid_.n_modes(); }

    /// Coefficient of e^{ikx} for any |k| <= n_modes (conjugated for k < 0).
    std::complex<double> coeff(int k) const {
        check_mode(k);
        return k < 0 ? std::conj(coeff_[static_cast<std::size_t>(-k)])
                     : coeff_[static_cast<std::size_t>(k)];
    }

    /// Mutable access to the stored half-spectrum, k >= 0 only.
    std::complex<double>& raw(int k) {
        if (k < 0) throw std::invalid_argument("SpectralField::raw: k must be >= 0");
        check_mode(k);
        return coeff_[static_cast<std::size_t>(k)];
    }
    const std::complex<double>& raw(int k) const {
        if (k < 0) throw std::invalid_argument("SpectralField::raw: k must be >= 0");
        check_mode(k);
        return coeff_[static_cast<std::size_t>(k)];
    }

    double mean() const { return coeff_.empty() ? 0.0 : coeff_[0].real(); }

    void pin_mean() {
        if (!coeff_.empty()) coeff_[0] = 0.0;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& c : coeff_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Relative zero-mean flag: |mean| <= 1e-14 * max|coeff|.
    bool is_zero_mean() const {
        return std::abs(mean()) <= 1e-14 * max_abs_coeff();
    }

    /// Largest k whose coefficient is not negligible (0 for the zero field).
    int max_active_mode(double rel_tol = 1e-13) const {
        const double floor = rel_tol * max_abs_coeff();
        for (int k = n_modes(); k >= 1; --k)
            if (std::abs(coeff_[static_cast<std::size_t>(k)]) > floor) return k;
        return 0;
    }

    SpectralField& operator+=(const SpectralField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < coeff_.size(); ++i) coeff_[i] -= o.coeff_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& c : coeff_) c *= a;
        return *this;
    }

    void check_same_grid(const SpectralField& o) const {
        if (!(grid_ == o.grid_))
            throw std::invalid_argument("SpectralField: grid mismatch");
    }

private:
    void check_mode(int k) const {
        if (std::abs(k) > grid_.n_modes())
            throw std::invalid_argument("SpectralField: mode index out of range");
    }

    GridSpec grid_{};
    std::vector<std::complex<double>> coeff_;
};

inline SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
inline SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
inline SpectralField operator*(double s, SpectralField f) { return f *= s; }
inline SpectralField operator*(SpectralField f, double s) { return f *= s; }
inline SpectralField operator-(SpectralField f) { return f *= -1.0; }

/// Forward transform, normalized so that f(x) = sum_k coeff(k) e^{ikx}.
/// The (-1)^k phase accounts for the grid origin at x_0 = -pi.
inline SpectralField to_spectral(const GridSpec& grid, const std::vector<double>& samples) {
    if (static_cast<int>(samples.size()) != grid.n_points)
        throw std::invalid_argument("to_spectral: expected " + std::to_string(grid.n_points) +
                                    " samples, got " + std::to_string(samples.size()));
    const auto& plans = detail::FftPlans::get(grid.n_points);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(grid.n_modes() + 1));
    plans.forward(samples.data(), out.data());

    SpectralField f(grid);
    const double inv_n = 1.0 / grid.n_points;
    for (int k = 0; k <= grid.n_modes(); ++k) {
        const double phase = (k % 2 == 0) ? inv_n : -inv_n;
        f.raw(k) = phase * out[static_cast<std::size_t>(k)];
    }
    // k=0 and Nyquist coefficients of a real field are real.
    f.raw(0).imag(0.0);
    f.raw(grid.n_modes()).imag(0.0);
    return f;
}

inline std::vector<double> to_physical(const SpectralField& f) {
    const GridSpec& grid = f.grid();
    const int nm = grid.n_modes();
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(nm + 1));
    for (int k = 0; k <= nm; ++k) {
        const double phase = (k % 2 == 0) ? 1.0 : -1.0;
        buf[static_cast<std::size_t>(k)] = phase * f.raw(k);
    }
    buf[0].imag(0.0);
    buf[static_cast<std::size_t>(nm)].imag(0.0);
    std::vector<double> out(static_cast<std::size_t>(grid.n_points));
    detail::FftPlans::get(grid.n_points).backward(buf.data(), out.data());
    return out;
}

inline double sup_norm(const SpectralField& f) {
    double m = 0.0;
    for (double v : to_physical(f)) m = std::max(m, std::abs(v));
    return m;
}

/// Discrete L2 norm, (2 pi / N * sum f(x_j)^2)^{1/2}, evaluated spectrally
/// via Parseval (Nyquist counted once, as in the physical sum).
inline double l2_norm(const SpectralField& f) {
    const int nm = f.n_modes();
    double s = f.raw(0).real() * f.raw(0).real();
    for (int k = 1; k < nm; ++k) s += 2.0 * std::norm(f.raw(k));
    s += std::norm(f.raw(nm));
    return std::sqrt(2.0 * kPi * s);
}

/// Field with a single cosine/sine pair: a*cos(kx) + b*sin(kx).
inline SpectralField harmonic(const GridSpec& grid, int k, double cos_amp, double sin_amp) {
    SpectralField f(grid);
    if (k == 0) {
        f.raw(0) = cos_amp;
        return f;
    }
    if (k < 0 || k > grid.n_modes())
        throw std::invalid_argument("harmonic: mode out of range");
    // sin at the Nyquist mode vanishes on the collocation grid.
    const double s = (k == grid.n_modes()) ? 0.0 : sin_amp;
    f.raw(k) = std::complex<double>(0.5 * cos_amp, -0.5 * s);
    return f;
}

}  // namespace dww
