#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sho/errors.hpp"
#include "sho/frobenius.hpp"

namespace sho {

// Pointwise Hamiltonian residual of a constructed eigenstate: a five-point
// finite-difference Laplacian is applied to eval_state samples and the
// result is max |H psi - E psi| / max |psi| over the interior grid.  The
// coupling is recovered from the exponent through alpha = s(s-1).
//
// The O(h^4) stencil error is estimated by comparing against the
// double-spacing stencil (Richardson factor 15); if the estimate exceeds
// the requested tolerance the grid is rejected as too coarse.
inline double residual_check(const EigenState& state, double x_lo = 0.1,
                             double x_hi = 5.0, double step = 1e-3,
                             double tol = 1e-6) {
  if (!(x_lo > 0.0) || !(x_hi > x_lo))
    throw DomainError("residual_check: need 0 < x_lo < x_hi");
  if (!(step > 0.0)) throw DomainError("residual_check: step must be > 0");
  if (!(tol > 0.0)) throw DomainError("residual_check: tol must be > 0");

  const long n = std::max(2L, std::lround((x_hi - x_lo) / step)) + 1;
  if (n < 9)
    throw ResolutionError("residual_check: grid has too few points for the "
                          "five-point stencil");
  const double h = (x_hi - x_lo) / static_cast<double>(n - 1);

  std::vector<double> psi(n);
  double psi_max = 0.0;
  for (long i = 0; i < n; ++i) {
    psi[i] = eval_state(state, x_lo + static_cast<double>(i) * h);
    psi_max = std::max(psi_max, std::abs(psi[i]));
  }

  const double alpha = state.s * (state.s - 1.0);
  const double inv12h2 = 1.0 / (12.0 * h * h);
  const double inv12h2_wide = inv12h2 / 4.0;

  // Stencil-error estimate from the h vs 2h comparison on the common points.
  double worst_gap = 0.0;
  for (long i = 4; i < n - 4; ++i) {
    const double lap =
        (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] -
         psi[i + 2]) *
        inv12h2;
    const double lap_wide =
        (-psi[i - 4] + 16.0 * psi[i - 2] - 30.0 * psi[i] + 16.0 * psi[i + 2] -
         psi[i + 4]) *
        inv12h2_wide;
    worst_gap = std::max(worst_gap, std::abs(lap - lap_wide));
  }
  const double stencil_error = 0.5 * worst_gap / 15.0;
  if (stencil_error > tol * psi_max)
    throw ResolutionError(
        "residual_check: estimated stencil error exceeds the requested "
        "tolerance; refine the grid (estimate " +
        std::to_string(stencil_error / psi_max) + ")");

  double worst = 0.0;
  for (long i = 2; i < n - 2; ++i) {
    const double x = x_lo + static_cast<double>(i) * h;
    const double lap =
        (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] -
         psi[i + 2]) *
        inv12h2;
    const double h_psi =
        -0.5 * lap + (0.5 * alpha / (x * x) + 0.5 * x * x) * psi[i];
    worst = std::max(worst, std::abs(h_psi - state.energy * psi[i]));
  }
  return worst / psi_max;
}

}  // namespace sho
