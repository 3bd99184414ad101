#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dww/integrator.hpp"
#include "dww/wave_models.hpp"

namespace dww {

/// Measured frequency/decay of one Fourier mode of a trajectory, with the
/// dispersion prediction attached. fitted_decay is the exponential rate sigma
/// in |f_hat(k,t)| ~ e^{-sigma t}.
struct ModeFit {
    int k = 0;
    double fitted_decay = 0.0;
    double fitted_frequency = 0.0;
    double residual = 0.0;  // RMS of the log-envelope fit
    DispersionBranch predicted;
    double fitted_decay_fast = 0.0;  // second rate when an overdamped pair splits cleanly
    std::string flags;
};

class NoSignalError : public std::runtime_error {
public:
    explicit NoSignalError(int k)
        : std::runtime_error("mode k = " + std::to_string(k) + " carries no signal") {}
};

/// One-sided amplitude spectrum |f_hat(k)|, k = 0..n_modes.
inline std::vector<double> spectrum(const SpectralField& f) {
    std::vector<double> s(static_cast<std::size_t>(f.n_modes() + 1));
    for (int k = 0; k <= f.n_modes(); ++k) s[static_cast<std::size_t>(k)] = std::abs(f.raw(k));
    return s;
}

namespace detail {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / d;
    fit.intercept = (sy - fit.slope * sx) / n;
    double r2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        r2 += r * r;
    }
    fit.rms = std::sqrt(r2 / n);
    return fit;
}

/// Linearly interpolated sign-change positions of y(t).
inline std::vector<double> zero_crossings(const std::vector<double>& t,
                                          const std::vector<double>& y) {
    std::vector<double> z;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        if (y[i] == 0.0) continue;
        if ((y[i] > 0.0) != (y[i + 1] > 0.0) && y[i + 1] != 0.0)
            z.push_back(t[i] + (t[i + 1] - t[i]) * y[i] / (y[i] - y[i + 1]));
    }
    return z;
}

}  // namespace detail

/// Fit frequency and decay of mode k. Frequency comes from zero-crossing
/// intervals of the oscillating coefficient component (phase regression for
/// rotation-free overdamped modes); decay from the least-squares slope of the
/// log of per-period envelope maxima. Sharpest results are obtained when the
/// snapshot spacing divides the mode period.
inline ModeFit fit_mode(const Trajectory& traj, int k) {
    const std::size_t n = traj.times.size();
    if (n < 16) throw std::invalid_argument("fit_mode: need at least 16 snapshots");

    std::vector<double> t(traj.times), re(n), im(n), amp(n);
    double max_amp = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const std::complex<double> c = traj.states[j].first.coeff(k);
        re[j] = c.real();
        im[j] = c.imag();
        amp[j] = std::abs(c);
        max_amp = std::max(max_amp, amp[j]);
    }
    if (max_amp == 0.0) throw NoSignalError(k);

    ModeFit fit;
    fit.k = k;
    fit.predicted = dispersion(k, traj.params);
    const double re_w = std::abs(fit.predicted.omega_plus.real());
    const double im_w = std::abs(fit.predicted.omega_plus.imag());

    if (re_w > im_w) {
        // Oscillatory branch. Use whichever coefficient component carries the
        // larger swing (a pure sine standing wave keeps Re f_hat identically 0).
        double max_re = 0.0, max_im = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            max_re = std::max(max_re, std::abs(re[j]));
            max_im = std::max(max_im, std::abs(im[j]));
        }
        const auto crossings = detail::zero_crossings(t, max_re >= max_im ? re : im);
        if (crossings.size() < 3)
            throw std::invalid_argument("fit_mode: fewer than 3 zero crossings for mode " +
                                        std::to_string(k));
        fit.fitted_frequency = kPi * (crossings.size() - 1) / (crossings.back() - crossings.front());

        // Per-period envelope maxima of |f_hat|.
        const double period = 2.0 * kPi / fit.fitted_frequency;
        std::vector<double> peak_t, peak_log;
        std::size_t j = 0;
        for (int bucket = 0;; ++bucket) {
            const double hi = t.front() + (bucket + 1) * period;
            double best = -1.0, best_t = 0.0;
            bool complete = false;
            for (; j < n; ++j) {
                if (t[j] >= hi) {
                    complete = true;
                    break;
                }
                if (amp[j] > best) {
                    best = amp[j];
                    best_t = t[j];
                }
            }
            if (!complete) break;  // drop the trailing partial bucket
            if (best > 0.0) {
                peak_t.push_back(best_t);
                peak_log.push_back(std::log(best));
            }
        }
        if (peak_t.size() < 2)
            throw std::invalid_argument("fit_mode: needs at least 2 full periods of data");
        const auto env = detail::least_squares(peak_t, peak_log);
        fit.fitted_decay = -env.slope;
        fit.residual = env.rms;
        return fit;
    }

    // Overdamped / rotation-dominated-by-damping branch.
    fit.flags = "overdamped";
    if (re_w > 0.0) {
        // Damped but still rotating: frequency from the unwrapped phase.
        std::vector<double> pt, phase;
        double prev = 0.0, offset = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (amp[j] < 1e-3 * max_amp) continue;
            double ph = std::atan2(im[j], re[j]);
            if (!pt.empty()) {
                while (ph + offset - prev > kPi) offset -= 2.0 * kPi;
                while (ph + offset - prev < -kPi) offset += 2.0 * kPi;
            }
            prev = ph + offset;
            pt.push_back(t[j]);
            phase.push_back(prev);
        }
        fit.fitted_frequency = pt.size() >= 2 ? std::abs(detail::least_squares(pt, phase).slope) : 0.0;
    } else {
        fit.fitted_frequency = 0.0;
    }

    std::vector<double> lt, la;
    for (std::size_t j = 0; j < n; ++j)
        if (amp[j] > 1e-12 * max_amp) {
            lt.push_back(t[j]);
            la.push_back(std::log(amp[j]));
        }
    if (lt.size() < 4) throw std::invalid_argument("fit_mode: too little overdamped signal");

    const double rate_slow = -fit.predicted.omega_plus.imag();
    const double rate_fast = -fit.predicted.omega_minus.imag();
    if (std::abs(rate_fast - rate_slow) > 0.1 * std::max(rate_fast, rate_slow)) {
        // Clearly split rates: tail fit for the slow one, early-time fit of the
        // remainder for the fast one.
        const std::size_t half = lt.size() / 2;
        std::vector<double> tt(lt.begin() + static_cast<long>(half), lt.end());
        std::vector<double> ta(la.begin() + static_cast<long>(half), la.end());
        const auto tail = detail::least_squares(tt, ta);
        fit.fitted_decay = -tail.slope;
        fit.residual = tail.rms;

        std::vector<double> et, ea;
        for (std::size_t j = 0; j < lt.size() / 2; ++j) {
            const double slow = std::exp(tail.intercept + tail.slope * lt[j]);
            const double rem = std::abs(std::exp(la[j]) - slow);
            if (rem > 1e-12 * max_amp) {
                et.push_back(lt[j]);
                ea.push_back(std::log(rem));
            }
        }
        fit.fitted_decay_fast = et.size() >= 2 ? -detail::least_squares(et, ea).slope : 0.0;
    } else {
        fit.flags = "overdamped-single-rate";
        const auto all = detail::least_squares(lt, la);
        fit.fitted_decay = -all.slope;
        fit.residual = all.rms;
    }
    return fit;
}

}  // namespace dww
