#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dww {

/// Dimensionless model parameters: steepness epsilon, Bond number beta,
/// dissipation coefficients alpha1 (= alpha_1^s) and alpha2, and the
/// dissipation exponent s in {0, 2}.
struct ModelParams {
    double epsilon = 0.0;
    double beta = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    int s = 0;

    void validate() const {
        auto finite_nonneg = [](double v, const char* name) {
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument(std::string("ModelParams: ") + name +
                                            " must be finite and non-negative");
        };
        finite_nonneg(epsilon, "epsilon");
        finite_nonneg(beta, "beta");
        finite_nonneg(alpha1, "alpha1");
        finite_nonneg(alpha2, "alpha2");
        if (s != 0 && s != 2)
            throw std::invalid_argument("ModelParams: s must be 0 or 2");
    }
};

}  // namespace dww
