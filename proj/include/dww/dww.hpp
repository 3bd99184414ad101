#pragma once

// Umbrella header: pseudo-spectral models of viscously damped deep-water
// waves on the periodic line, plus the half-plane Poisson oracle used to
// validate the first-order Dirichlet-Neumann expansion.

#include "dww/config.hpp"
#include "dww/cs_models.hpp"
#include "dww/dense.hpp"
#include "dww/diagnostics.hpp"
#include "dww/elliptic.hpp"
#include "dww/field.hpp"
#include "dww/grid.hpp"
#include "dww/integrator.hpp"
#include "dww/mat2.hpp"
#include "dww/nondim.hpp"
#include "dww/operators.hpp"
#include "dww/params.hpp"
#include "dww/version.hpp"
#include "dww/wave_models.hpp"
