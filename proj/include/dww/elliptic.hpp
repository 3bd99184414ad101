#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dww/field.hpp"
#include "dww/operators.hpp"

namespace dww {

// Explicit solver for the half-plane Poisson problem
//
//     Laplacian(u) = b   on S^1 x (-inf, 0),
//     u(x1, 0)     = g,
//     d2 u -> 0 as x2 -> -inf,
//
// solved mode-by-mode. Per mode, u_hat(k, x2) = C1 e^{|k|x2} + C2 e^{-|k|x2}
// + particular part, with
//
//     C2(k) = -1/(2|k|) * int_{-inf}^0 b_hat(k, y) e^{|k| y} dy,
//     C1(k) = -C2(k) + g_hat(k),
//
// and boundary traces d2(u)(x1,0) per mode -2|k| C2 + |k| g_hat, and
// d2^2(u)(x1,0) = -d1^2 g + b(.,0).
//
// The depth integral is truncated to [-D, 0] (error O(e^{-2D}) since every
// forcing mode decays at least like e^{2 y}) and evaluated by composite
// trapezoid in the stretched variable u = e^{y}: the integrand
// b_hat(k, ln u) u^{|k|-1} is polynomial-like in u for the cascade forcings,
// so the layer budget concentrates where the kernel e^{|k|y} actually has
// mass. Layers are therefore exponentially graded in depth; use
// HalfPlaneForcing::layer_depths to sample a forcing consistently.

struct HalfPlaneForcing {
    GridSpec grid;
    double depth = 0.0;
    int n_layers = 0;
    std::vector<double> values;  // layer-major: values[m * n_points + j], layer m at layer_depths()[m]

    HalfPlaneForcing(GridSpec g, double depth_, int n_layers_)
        : grid(g), depth(depth_), n_layers(n_layers_),
          values(static_cast<std::size_t>(n_layers_) * static_cast<std::size_t>(g.n_points)) {
        if (depth <= 0.0) throw std::invalid_argument("HalfPlaneForcing: depth must be positive");
        if (n_layers < 2) throw std::invalid_argument("HalfPlaneForcing: need at least 2 layers");
    }

    double* layer(int m) { return values.data() + static_cast<std::size_t>(m) * grid.n_points; }
    const double* layer(int m) const {
        return values.data() + static_cast<std::size_t>(m) * grid.n_points;
    }

    /// Quadrature nodes y_m in [-depth, 0], uniform in u = e^{y}.
    /// y_0 = -depth, y_{M-1} = 0.
    static std::vector<double> layer_depths(double depth, int n_layers) {
        const double u0 = std::exp(-depth);
        std::vector<double> y(static_cast<std::size_t>(n_layers));
        for (int m = 0; m < n_layers; ++m) {
            const double u = u0 + (1.0 - u0) * m / (n_layers - 1);
            y[static_cast<std::size_t>(m)] = std::log(u);
        }
        y[0] = -depth;
        y[static_cast<std::size_t>(n_layers - 1)] = 0.0;
        return y;
    }

    std::vector<double> layer_depths() const { return layer_depths(depth, n_layers); }
};

struct EllipticSolution {
    SpectralField boundary;                 // g
    std::vector<std::complex<double>> c2;   // C2(k), k = 0..n_modes (k=0 pinned to 0)
    SpectralField neumann;                  // d2 u at x2 = 0
    SpectralField second_trace;             // d2^2 u at x2 = 0
};

inline EllipticSolution solve_half_plane(const HalfPlaneForcing& b, const SpectralField& g) {
    if (!(b.grid == g.grid()))
        throw std::invalid_argument("solve_half_plane: forcing and boundary data on different grids");
    const int nm = b.grid.n_modes();
    const int M = b.n_layers;

    // b_hat(k, m) per layer
    std::vector<std::vector<std::complex<double>>> bhat(
        static_cast<std::size_t>(M), std::vector<std::complex<double>>(static_cast<std::size_t>(nm + 1)));
    {
        std::vector<double> slice(static_cast<std::size_t>(b.grid.n_points));
        for (int m = 0; m < M; ++m) {
            std::copy(b.layer(m), b.layer(m) + b.grid.n_points, slice.begin());
            const SpectralField layer_field = to_spectral(b.grid, slice);
            for (int k = 0; k <= nm; ++k) bhat[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = layer_field.raw(k);
        }
    }

    // Trapezoid weights on the uniform u-grid.
    const double u0 = std::exp(-b.depth);
    const double hu = (1.0 - u0) / (M - 1);
    std::vector<double> u(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) u[static_cast<std::size_t>(m)] = u0 + hu * m;

    EllipticSolution sol{g, std::vector<std::complex<double>>(static_cast<std::size_t>(nm + 1)),
                         SpectralField(b.grid), SpectralField(b.grid)};

    // Running powers u^{k-1}; the integral for mode k is
    //   int b_hat(k, y) e^{|k| y} dy = int b_hat(k, ln u) u^{|k|-1} du.
    std::vector<double> upow(static_cast<std::size_t>(M), 1.0);
    for (int k = 1; k <= nm; ++k) {
        std::complex<double> integral(0.0, 0.0);
        for (int m = 0; m < M; ++m) {
            const double w = (m == 0 || m == M - 1) ? 0.5 * hu : hu;
            integral += w * upow[static_cast<std::size_t>(m)] * bhat[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)];
        }
        sol.c2[static_cast<std::size_t>(k)] = -integral / (2.0 * k);
        if (k < nm) {
            sol.neumann.raw(k) = integral + static_cast<double>(k) * g.raw(k);
            sol.second_trace.raw(k) =
                static_cast<double>(k) * k * g.raw(k) +
                bhat[static_cast<std::size_t>(M - 1)][static_cast<std::size_t>(k)];
        }
        for (int m = 0; m < M; ++m) upow[static_cast<std::size_t>(m)] *= u[static_cast<std::size_t>(m)];
    }
    // k = 0: the formulas divide by |k|; means are required to vanish and the
    // trace contributions are pinned to zero.
    sol.c2[0] = 0.0;
    return sol;
}

/// Neumann trace per mode: -2|k| C2(k) + |k| g_hat(k).
inline SpectralField neumann_trace(const EllipticSolution& sol) {
    SpectralField out(sol.boundary.grid());
    const int nm = out.n_modes();
    for (int k = 1; k < nm; ++k)
        out.raw(k) = -2.0 * k * sol.c2[static_cast<std::size_t>(k)] +
                     static_cast<double>(k) * sol.boundary.raw(k);
    return out;
}

namespace detail {
inline void require_cascade_input(const SpectralField& f, int band, const char* name) {
    if (!f.is_zero_mean())
        throw std::invalid_argument(std::string("check_phi1_identity: ") + name +
                                    " must be zero-mean");
    if (f.max_active_mode() > band)
        throw std::invalid_argument(std::string("check_phi1_identity: ") + name +
                                    " must be band-limited to n_modes/3");
}
}  // namespace detail

/// Residual of the first-order Dirichlet-Neumann identity
///     d2 Phi1 at x2=0  =  Lambda xi1 - [Lambda, h0] Lambda xi0,
/// where Phi1 solves the half-plane Poisson problem with forcing
///     b = d1^2(h0) d2(Phi0) + 2 d1(h0) d12(Phi0),
///     Phi0_hat(k, x2) = xi0_hat(k) e^{|k| x2},
/// and boundary data xi1. The left side goes through the quadrature solver,
/// the right side through the spectral operators; the sup-norm difference is
/// returned (zero-mean part; the k=0 mode is excluded by construction).
inline double check_phi1_identity(const SpectralField& h0, const SpectralField& xi0,
                                  const SpectralField& xi1, double depth, int n_layers) {
    h0.check_same_grid(xi0);
    h0.check_same_grid(xi1);
    const GridSpec grid = h0.grid();
    const int band = grid.n_modes() / 3;
    detail::require_cascade_input(h0, band, "h0");
    detail::require_cascade_input(xi0, band, "xi0");
    detail::require_cascade_input(xi1, band, "xi1");

    HalfPlaneForcing b(grid, depth, n_layers);
    const auto depths = b.layer_depths();
    const auto h0xx = to_physical(derivative(h0, 2));
    const auto h0x = to_physical(derivative(h0, 1));

    SpectralField d2phi(grid), d12phi(grid);
    for (int m = 0; m < n_layers; ++m) {
        const double y = depths[static_cast<std::size_t>(m)];
        for (int k = 1; k < grid.n_modes(); ++k) {
            const std::complex<double> decay = xi0.raw(k) * std::exp(k * y);
            d2phi.raw(k) = static_cast<double>(k) * decay;               // |k| xi0_hat e^{|k|y}
            d12phi.raw(k) = std::complex<double>(0.0, 1.0) * static_cast<double>(k) *
                            static_cast<double>(k) * decay;              // ik |k| xi0_hat e^{|k|y}
        }
        const auto p2 = to_physical(d2phi);
        const auto p12 = to_physical(d12phi);
        double* row = b.layer(m);
        for (int j = 0; j < grid.n_points; ++j)
            row[j] = h0xx[static_cast<std::size_t>(j)] * p2[static_cast<std::size_t>(j)] +
                     2.0 * h0x[static_cast<std::size_t>(j)] * p12[static_cast<std::size_t>(j)];
    }

    const EllipticSolution sol = solve_half_plane(b, xi1);
    SpectralField expected =
        lambda_pow(xi1, 1.0) - commutator(OpTag::lambda, h0, lambda_pow(xi0, 1.0));
    expected.pin_mean();
    return sup_norm(sol.neumann - expected);
}

}  // namespace dww
