// Print the damped dispersion relation next to the inviscid branch for a
// small gravity-capillary wave with eddy-viscosity damping.

#include <cstdio>

#include "dww/wave_models.hpp"

int main() {
    dww::ModelParams p;
    p.beta = 2e-5;
    p.alpha1 = 6.8e-4;
    p.alpha2 = 6.8e-4;
    p.s = 2;

    std::printf("%4s %12s %12s %12s\n", "k", "Re w+", "Im w+", "inviscid");
    for (int k = 0; k <= 16; ++k) {
        const auto d = dww::dispersion(k, p);
        std::printf("%4d %12.6f %12.3e %12.6f\n", k, d.omega_plus.real(),
                    d.omega_plus.imag(), dww::dispersion_inviscid(k, p.beta));
    }
    return 0;
}
