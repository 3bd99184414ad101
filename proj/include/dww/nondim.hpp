#pragma once

#include <cmath>
#include <stdexcept>

#include "dww/params.hpp"

namespace dww {

/// Dimensional inputs in SI units. The dissipation strength can be supplied
/// either as delta1 together with the density, or directly as the ratio
/// delta1/rho (a decay rate, 1/s, for s = 0; a kinematic viscosity, m^2/s,
/// for s = 2) -- the worked examples quote the ratio only.
struct PhysicalParams {
    double amplitude_H = 0.0;          // m
    double wavelength_L = 0.0;         // m
    double gravity_G = 0.0;            // m/s^2
    double surface_tension_gamma = 0;  // kg/s^2
    double density_rho = 0.0;          // kg/m^3
    double dissipation_delta1 = 0.0;   // used together with density_rho
    bool delta1_is_ratio = false;      // dissipation_delta1 already holds delta1/rho
    double diffusion_delta2 = 0.0;     // m^2/s
    int s = 0;
};

/// Dimensionless parameter set plus the scales needed to map results back:
/// time_scale = sqrt(L/G) (seconds per dimensionless time unit) and
/// potential_scale = H sqrt(G L) (m^2/s per dimensionless potential unit).
struct NondimResult {
    ModelParams params;
    double time_scale = 0.0;
    double potential_scale = 0.0;
};

/// eps = H/L, alpha1^s = (delta1/rho) / (sqrt(G) L^{s-1/2}),
/// alpha2 = delta2 / (sqrt(G) L^{3/2}), beta = gamma / (rho G L^2).
inline NondimResult to_dimensionless(const PhysicalParams& phys) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error(std::string("to_dimensionless: ") + name +
                                    " must be positive");
    };
    positive(phys.amplitude_H, "amplitude_H");
    positive(phys.wavelength_L, "wavelength_L");
    positive(phys.gravity_G, "gravity_G");
    positive(phys.density_rho, "density_rho");
    if (phys.surface_tension_gamma < 0.0)
        throw std::domain_error("to_dimensionless: surface_tension_gamma must be >= 0");
    if (phys.dissipation_delta1 < 0.0 || phys.diffusion_delta2 < 0.0)
        throw std::domain_error("to_dimensionless: dissipation coefficients must be >= 0");
    if (phys.s != 0 && phys.s != 2)
        throw std::domain_error("to_dimensionless: s must be 0 or 2");

    const double L = phys.wavelength_L;
    const double G = phys.gravity_G;
    const double ratio =
        phys.delta1_is_ratio ? phys.dissipation_delta1 : phys.dissipation_delta1 / phys.density_rho;

    NondimResult out;
    out.params.epsilon = phys.amplitude_H / L;
    out.params.beta = phys.surface_tension_gamma / (phys.density_rho * G * L * L);
    out.params.alpha1 = ratio / (std::sqrt(G) * std::pow(L, phys.s - 0.5));
    out.params.alpha2 = phys.diffusion_delta2 / (std::sqrt(G) * std::pow(L, 1.5));
    out.params.s = phys.s;
    out.time_scale = std::sqrt(L / G);
    out.potential_scale = phys.amplitude_H * std::sqrt(G * L);
    return out;
}

}  // namespace dww
