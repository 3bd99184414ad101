#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dww/grid.hpp"

namespace dww {

/// Brute-force collocation matrix of a linear operator on the grid. Built by
/// direct mode summation (no FFT), so it provides a route independent of the
/// spectral implementation. Multiplier matrices exclude the Nyquist mode,
/// matching the operator convention in operators.hpp.
struct DenseOperator {
    int n = 0;
    std::vector<double> m;  // row-major n x n

    DenseOperator() = default;
    explicit DenseOperator(int size)
        : n(size), m(static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {}

    double& at(int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return m[static_cast<std::size_t>(i) * n + j]; }

    std::vector<double> apply(const std::vector<double>& v) const {
        if (static_cast<int>(v.size()) != n)
            throw std::invalid_argument("DenseOperator::apply: size mismatch");
        std::vector<double> out(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += at(i, j) * v[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = s;
        }
        return out;
    }

    /// Matrix of the Fourier multiplier mult(k). The entries depend only on
    /// j - l (the matrix is circulant): M[j][l] = (1/N) sum_k mult(k) e^{ik(x_j-x_l)}.
    static DenseOperator from_multiplier(const GridSpec& grid,
                                         const std::function<std::complex<double>(int)>& mult) {
        const int n = grid.n_points;
        const int nm = grid.n_modes();
        std::vector<double> row(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
            std::complex<double> s = mult(0);
            for (int k = 1; k < nm; ++k) {
                const double ang = 2.0 * kPi * k * d / n;
                const std::complex<double> e(std::cos(ang), std::sin(ang));
                s += mult(k) * e + mult(-k) * std::conj(e);
            }
            row[static_cast<std::size_t>(d)] = s.real() / n;
        }
        DenseOperator op(n);
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                op.at(j, l) = row[static_cast<std::size_t>((j - l + n) % n)];
        return op;
    }

    static DenseOperator diagonal(const std::vector<double>& samples) {
        DenseOperator op(static_cast<int>(samples.size()));
        for (int i = 0; i < op.n; ++i) op.at(i, i) = samples[static_cast<std::size_t>(i)];
        return op;
    }

    DenseOperator operator*(const DenseOperator& o) const {
        if (n != o.n) throw std::invalid_argument("DenseOperator: size mismatch");
        DenseOperator out(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const double a = at(i, k);
                if (a == 0.0) continue;
                for (int j = 0; j < n; ++j) out.at(i, j) += a * o.at(k, j);
            }
        return out;
    }

    DenseOperator operator-(const DenseOperator& o) const {
        if (n != o.n) throw std::invalid_argument("DenseOperator: size mismatch");
        DenseOperator out(n);
        for (std::size_t i = 0; i < m.size(); ++i) out.m[i] = m[i] - o.m[i];
        return out;
    }
};

}  // namespace dww
