#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "sho/errors.hpp"
#include "sho/frobenius.hpp"
#include "sho/oscillator.hpp"
#include "sho/quadrature.hpp"

namespace sho {

// Hellmann-Feynman check.  With H = -1/2 d^2/dx^2 + alpha/(2x^2) + x^2/2
// one has dH/dalpha = 1/(2x^2), so the theorem reads
//
//   dE/dalpha = <1/(2x^2)> = 1/2 <x^-2>,
//
// and on the level ladder E = 2n + s(alpha) + 1/2 the left side is
// ds/dalpha = +-1/sqrt(1+4 alpha) for the plus/minus branch, independent
// of n.  The identity closes on the plus branch (s > 1/2, where
// 1/2 <x^-2> = 1/(2s-1) = 1/sqrt(1+4 alpha)); on the minus branch with
// s < 1/2 the expectation value does not exist and the report carries a
// cutoff scan of the truncated integral instead, which grows like
// epsilon^{2s-1} as the cutoff is lowered.

struct CutoffSample {
  double epsilon;
  double integral;  // 1/2 * integral_eps^inf x^-2 psi^2 dx
};

struct HftReport {
  double alpha;
  Branch branch;
  int n;
  double dE_dalpha_analytic;
  double dE_dalpha_finite_difference;
  std::optional<double> expectation_half_inverse_x2;  // empty when divergent
  std::vector<CutoffSample> cutoff_scan;              // filled when divergent
  std::optional<double> fitted_exponent;  // log-log slope of the scan

  bool divergent() const { return !expectation_half_inverse_x2.has_value(); }
};

inline HftReport hft_check(double alpha, Branch which, int n,
                           double dalpha = 1e-5) {
  if (n < 0) throw DomainError("hft_check: quantum number must be >= 0");
  if (!(dalpha > 0.0)) throw DomainError("hft_check: dalpha must be > 0");
  if (!(alpha > -0.25))
    throw DomainError("hft_check: requires alpha > -1/4");
  if (!(alpha - dalpha > -0.25))
    throw DomainError(
        "hft_check: alpha - dalpha falls outside (-1/4, inf); shrink the "
        "finite-difference step");

  const BranchExponent center = branch_exponent({alpha}, which);
  const BranchExponent below = branch_exponent({alpha - dalpha}, which);
  const BranchExponent above = branch_exponent({alpha + dalpha}, which);
  for (const BranchExponent* b : {&center, &below, &above})
    if (b->admissibility != Admissibility::Admissible)
      throw BranchError(
          "hft_check: branch is not admissible across the whole "
          "finite-difference stencil");

  HftReport report;
  report.alpha = alpha;
  report.branch = which;
  report.n = n;

  const double root = std::sqrt(1.0 + 4.0 * alpha);
  report.dE_dalpha_analytic =
      which == Branch::Plus ? 1.0 / root : -1.0 / root;
  report.dE_dalpha_finite_difference =
      (energy(n, above.s) - energy(n, below.s)) / (2.0 * dalpha);

  const EigenState state = build_state(n, center);
  if (center.s > 0.5) {
    report.expectation_half_inverse_x2 =
        0.5 * moment_integral(state, state, -2.0);
  } else {
    // <x^-2> does not exist: record the truncated integrals instead.
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      auto integrand = [&state](double x) {
        const double psi = eval_state(state, x);
        return psi * psi / (x * x);
      };
      const double scale = std::pow(eps, 2.0 * center.s - 1.0);
      const QuadratureResult q =
          integrate_from(integrand, eps, 1e-7 * std::max(1.0, scale));
      report.cutoff_scan.push_back({eps, 0.5 * q.value});
    }
    // Least-squares slope of ln(integral) against ln(epsilon).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(report.cutoff_scan.size());
    for (const CutoffSample& sample : report.cutoff_scan) {
      const double lx = std::log(sample.epsilon);
      const double ly = std::log(sample.integral);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    report.fitted_exponent =
        (count * sxy - sx * sy) / (count * sxx - sx * sx);
  }
  return report;
}

}  // namespace sho
