#pragma once

#include <cmath>
#include <vector>

#include "sho/errors.hpp"
#include "sho/frobenius.hpp"
#include "sho/oscillator.hpp"

namespace sho {

// Truncation-order demonstration that an off-eigenvalue series is not
// square integrable: at a probe point the magnitude of the truncated
// psi_J(x) = x^s e^{-x^2/2} sum_{j<=J} c_j x^{2j} keeps growing with the
// truncation order J once J passes the tail threshold, because from there
// on every added term has the same sign and the full series dominates
// C e^{beta x^2} + polynomial.
struct TruncationGrowthReport {
  double alpha;
  double s;
  double energy_off;
  double x_probe;
  int threshold_index;             // from series_tail_ratio_bound
  std::vector<double> magnitudes;  // |psi_J(x_probe)| for J = 0..J_max
  bool monotone_past_threshold;
};

inline TruncationGrowthReport nonnormalizable_demo(
    double alpha, const BranchExponent& branch, double energy_off,
    double x_probe, double beta = 0.75, int extra_orders = 40) {
  if (branch.admissibility != Admissibility::Admissible)
    throw BranchError("nonnormalizable_demo: branch must be admissible");
  if (!(x_probe >= 2.0 && x_probe <= 4.0))
    throw DomainError("nonnormalizable_demo: probe point must lie in [2, 4]");
  if (distance_to_spectrum(energy_off, branch.s) < 1e-6)
    throw DomainError(
        "nonnormalizable_demo: energy is within 1e-6 of an eigenvalue; the "
        "series terminates there");

  const RecurrenceContext ctx{branch.s, energy_off};
  const int k = series_tail_ratio_bound(ctx, beta);

  TruncationGrowthReport report;
  report.alpha = alpha;
  report.s = branch.s;
  report.energy_off = energy_off;
  report.x_probe = x_probe;
  report.threshold_index = k;

  const double t = x_probe * x_probe;
  const double envelope =
      std::pow(x_probe, branch.s) * std::exp(-0.5 * t);
  const int j_max = k + extra_orders;
  double coeff = 1.0;
  double partial = coeff;
  report.magnitudes.reserve(j_max + 1);
  report.magnitudes.push_back(envelope * std::abs(partial));
  for (int j = 0; j < j_max; ++j) {
    coeff *= recurrence_ratio(ctx, j) * t;
    partial += coeff;
    report.magnitudes.push_back(envelope * std::abs(partial));
  }

  // Past the threshold every added term has the same sign, so the partial
  // sums must never decrease; they keep growing strictly until the terms
  // drop below the rounding floor of the accumulated sum.
  report.monotone_past_threshold = report.magnitudes[j_max] >
                                   report.magnitudes[k];
  for (int j = k; j < j_max; ++j)
    if (report.magnitudes[j + 1] < report.magnitudes[j])
      report.monotone_past_threshold = false;
  return report;
}

}  // namespace sho
