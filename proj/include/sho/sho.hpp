#pragma once

// Umbrella header for the singular harmonic oscillator library:
// V(x) = alpha/(2x^2) + x^2/2 on x > 0, solved by the power-series method
// and cross-checked by shooting, quadrature and finite-difference oracles.

#include "sho/errors.hpp"
#include "sho/frobenius.hpp"
#include "sho/gamma.hpp"
#include "sho/hellmann_feynman.hpp"
#include "sho/nonnormalizable.hpp"
#include "sho/ode.hpp"
#include "sho/oscillator.hpp"
#include "sho/quadrature.hpp"
#include "sho/residual.hpp"
#include "sho/series_bounds.hpp"
#include "sho/shooting.hpp"
