#pragma once

#include <cmath>
#include <vector>

#include "sho/errors.hpp"

namespace sho {

// A function sampled on a strictly increasing positive grid.
struct GridFunction {
  std::vector<double> xs;
  std::vector<double> values;
};

// Trajectory of psi'' = g(x) psi with value and first derivative on every
// grid point.  blew_up marks a trajectory that crossed the overflow guard
// before reaching the requested endpoint; the stored samples stay finite
// and the terminal sign remains usable as a shooting signal.
struct OdeSolution {
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<double> derivatives;
  bool blew_up = false;

  double last_x() const { return xs.back(); }
  double last_value() const { return values.back(); }
  double last_derivative() const { return derivatives.back(); }

  GridFunction to_grid_function() const { return {xs, values}; }
  GridFunction derivative_grid() const { return {xs, derivatives}; }
};

// Classic fixed-step fourth-order Runge-Kutta integration of the linear
// second-order equation psi'' = g(x) psi, started strictly away from the
// origin.  The requested step is snapped so the grid lands exactly on x1.
template <class G>
OdeSolution integrate_ode(G&& g, double x0, double y0, double dy0, double x1,
                          double step) {
  if (!(x0 > 0.0))
    throw DomainError("integrate_ode: start point must be positive");
  if (!(x1 > x0)) throw DomainError("integrate_ode: requires x1 > x0");
  if (!(step > 0.0)) throw DomainError("integrate_ode: step must be positive");

  constexpr double overflow_guard = 1e250;
  const long nsteps = std::max(1L, std::lround((x1 - x0) / step));
  const double h = (x1 - x0) / static_cast<double>(nsteps);

  OdeSolution sol;
  sol.xs.reserve(nsteps + 1);
  sol.values.reserve(nsteps + 1);
  sol.derivatives.reserve(nsteps + 1);
  sol.xs.push_back(x0);
  sol.values.push_back(y0);
  sol.derivatives.push_back(dy0);

  double x = x0, y = y0, v = dy0;
  for (long k = 0; k < nsteps; ++k) {
    const double gx = g(x);
    const double gm = g(x + 0.5 * h);
    const double ge = g(x + h);

    const double k1y = v;
    const double k1v = gx * y;
    const double k2y = v + 0.5 * h * k1v;
    const double k2v = gm * (y + 0.5 * h * k1y);
    const double k3y = v + 0.5 * h * k2v;
    const double k3v = gm * (y + 0.5 * h * k2y);
    const double k4y = v + h * k3v;
    const double k4v = ge * (y + h * k3y);

    y += h / 6.0 * (k1y + 2.0 * (k2y + k3y) + k4y);
    v += h / 6.0 * (k1v + 2.0 * (k2v + k3v) + k4v);
    x = x0 + (k + 1) * h;

    if (!std::isfinite(y) || !std::isfinite(v)) {
      sol.blew_up = true;
      break;
    }
    sol.xs.push_back(x);
    sol.values.push_back(y);
    sol.derivatives.push_back(v);
    if (std::abs(y) > overflow_guard || std::abs(v) > overflow_guard) {
      sol.blew_up = true;
      break;
    }
  }
  return sol;
}

// Uniform grid helper for the finite-difference checks.
inline std::vector<double> make_uniform_grid(double lo, double hi,
                                             std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw DomainError("make_uniform_grid: need 0 < lo < hi and >= 2 points");
  std::vector<double> xs(points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = lo + static_cast<double>(i) * h;
  return xs;
}

}  // namespace sho
