#pragma once

#include <stdexcept>
#include <vector>

namespace dww {

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Uniform collocation grid on the periodic interval [-pi, pi).
/// Nodes are x_j = -pi + 2*pi*j/n_points, j = 0..n_points-1.
struct GridSpec {
    int n_points = 0;

    GridSpec() = default;
    explicit GridSpec(int n) : n_points(n) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: n_points must be even and >= 8, got " +
                                        std::to_string(n));
    }

    /// Highest retained wavenumber; coefficients live on k = -n_modes+1 .. n_modes.
    int n_modes() const { return n_points / 2; }

    /// Largest wavenumber kept by the 2/3 dealiasing rule.
    int dealias_cutoff() const { return (2 * n_modes()) / 3; }

    std::vector<double> nodes() const {
        std::vector<double> x(static_cast<std::size_t>(n_points));
        for (int j = 0; j < n_points; ++j)
            x[static_cast<std::size_t>(j)] = -kPi + 2.0 * kPi * j / n_points;
        return x;
    }

    bool operator==(const GridSpec&) const = default;
};

}  // namespace dww
