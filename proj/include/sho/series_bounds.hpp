#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "sho/errors.hpp"
#include "sho/frobenius.hpp"
#include "sho/oscillator.hpp"

namespace sho {

// Comparison machinery for power series whose coefficients obey two-term
// recurrences a_{j+1} = A_j a_j.  If A_j >= B_j > 0 beyond some index k
// (after fixing signs so a_k, b_k > 0), then for r > 0
//
//   S(r) >= (a_k / b_k) T(r) + sum_{j<=k} (a_j - (a_k/b_k) b_j) r^j.
//
// Choosing B_j = beta/(j+1), so that T(r) = e^{beta r}, gives the
// exponential lower bound S(r) >= C e^{beta r} + P_k(r) with C > 0 that
// rules out square-integrability of non-terminating oscillator series.

using RatioFn = std::function<double(int)>;

// Ratio sequence of the oscillator recurrence at a trial energy.
inline RatioFn ttrr_ratios(const RecurrenceContext& ctx) {
  return [ctx](int j) { return recurrence_ratio(ctx, j); };
}

struct SeriesComparison {
  double lhs;  // S(r) truncated
  double rhs;  // (a_k/b_k) T(r) + correction polynomial, same truncation
};

struct SeriesBound {
  double beta;
  int k;                                  // threshold index
  double constant;                        // C = a_k / b_k > 0
  std::vector<double> correction_poly;    // P_k coefficients, degree <= k
  bool sign_flipped;                      // bound applies to -S when true

  double envelope(double r) const {
    double p = 0.0;
    for (std::size_t j = correction_poly.size(); j-- > 0;)
      p = correction_poly[j] + r * p;
    return constant * std::exp(beta * r) + p;
  }
};

namespace detail {

inline std::vector<double> coefficients_from_ratios(const RatioFn& ratios,
                                                    double first, int count) {
  std::vector<double> c(static_cast<std::size_t>(count) + 1);
  c[0] = first;
  for (int j = 0; j < count; ++j) c[j + 1] = ratios(j) * c[j];
  return c;
}

inline double polynomial_sum(const std::vector<double>& c, double r) {
  double sum = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) sum = c[j] + r * sum;
  return sum;
}

}  // namespace detail

// Sum a recurrence-defined series at r until the next term drops below
// rel_cut of the partial sum (or the term cap is reached).
inline double sum_to_convergence(const RatioFn& ratios, double first, double r,
                                 int max_terms = 4000, double rel_cut = 1e-18) {
  double term = first;
  double sum = term;
  for (int j = 0; j < max_terms; ++j) {
    term *= ratios(j) * r;
    sum += term;
    if (std::abs(term) < rel_cut * std::abs(sum)) break;
  }
  return sum;
}

// Evaluate both sides of the comparison inequality through `truncation`
// terms.  Preconditions (checked): a_k and b_k nonzero, and
// A_j >= B_j > 0 on the window (k, truncation].  Whole-series sign flips
// are applied as needed so a_k, b_k > 0.
inline SeriesComparison compare_series(const RatioFn& ratios_a,
                                       const RatioFn& ratios_b, double a0,
                                       double b0, int k, double r,
                                       int truncation) {
  if (!(r > 0.0)) throw DomainError("compare_series: requires r > 0");
  if (k < 0 || truncation <= k)
    throw DomainError("compare_series: need 0 <= k < truncation");
  if (a0 == 0.0 || b0 == 0.0)
    throw DomainError("compare_series: leading coefficients must be nonzero");

  for (int j = k + 1; j <= truncation; ++j) {
    const double aj = ratios_a(j);
    const double bj = ratios_b(j);
    if (!(bj > 0.0) || !(aj >= bj))
      throw OrderingError(
          "compare_series: A_j >= B_j > 0 violated at j = " + std::to_string(j),
          j);
  }

  std::vector<double> a = detail::coefficients_from_ratios(ratios_a, a0,
                                                           truncation);
  std::vector<double> b = detail::coefficients_from_ratios(ratios_b, b0,
                                                           truncation);
  if (a[k] == 0.0 || b[k] == 0.0)
    throw DomainError("compare_series: coefficient at k vanished");
  if (a[k] < 0.0)
    for (double& v : a) v = -v;
  if (b[k] < 0.0)
    for (double& v : b) v = -v;

  const double ratio = a[k] / b[k];
  SeriesComparison out;
  out.lhs = detail::polynomial_sum(a, r);
  double correction = 0.0;
  for (int j = k; j >= 0; --j) correction = (a[j] - ratio * b[j]) + r * correction;
  out.rhs = ratio * detail::polynomial_sum(b, r) + correction;
  return out;
}

// Exponential lower bound S(r) >= C e^{beta r} + P_k(r) for a series whose
// tail ratios dominate beta/(j+1).  The caller obtains k from
// series_tail_ratio_bound; the tail condition and the limit
// lim j A_j = D > beta are re-verified here.
inline SeriesBound exponential_lower_bound(const RatioFn& ratios_a, double a0,
                                           double beta, int k,
                                           int verify_window = 256) {
  if (!(beta > 0.5 && beta < 1.0))
    throw DomainError("exponential_lower_bound: beta must lie in (1/2, 1)");
  if (k < 0) throw DomainError("exponential_lower_bound: k must be >= 0");
  if (a0 == 0.0)
    throw DomainError("exponential_lower_bound: a_0 must be nonzero");

  // Non-strict dominance suffices for the comparison inequality and admits
  // the equality case A_j = beta/(j+1), where the bound collapses to S = T.
  for (int j = k + 1; j <= k + verify_window; ++j)
    if (!(ratios_a(j) >= beta / (j + 1.0)))
      throw OrderingError(
          "exponential_lower_bound: A_j >= beta/(j+1) violated at j = " +
              std::to_string(j),
          j);

  // Richardson extrapolation of j A_j; the 1/j correction cancels, leaving
  // an O(1/j^2) residue, hence the small acceptance margin.
  const double f_half = 500.0 * ratios_a(500);
  const double f_full = 1000.0 * ratios_a(1000);
  const double limit = 2.0 * f_full - f_half;
  if (!(limit > beta - 1e-5))
    throw DomainError(
        "exponential_lower_bound: lim j A_j = " + std::to_string(limit) +
        " lies below beta");

  std::vector<double> a = detail::coefficients_from_ratios(ratios_a, a0, k);
  bool flipped = false;
  if (a[k] == 0.0)
    throw DomainError("exponential_lower_bound: a_k vanished (terminating "
                      "series?)");
  if (a[k] < 0.0) {
    for (double& v : a) v = -v;
    flipped = true;
  }

  // b_j = beta^j / j!  (coefficients of e^{beta r})
  std::vector<double> b(static_cast<std::size_t>(k) + 1);
  b[0] = 1.0;
  for (int j = 0; j < k; ++j) b[j + 1] = b[j] * beta / (j + 1.0);

  SeriesBound bound;
  bound.beta = beta;
  bound.k = k;
  bound.constant = a[k] / b[k];
  bound.sign_flipped = flipped;
  bound.correction_poly.resize(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j)
    bound.correction_poly[j] = a[j] - bound.constant * b[j];
  bound.correction_poly[k] = 0.0;  // exact by construction
  return bound;
}

// Composition of the two results above for a non-terminating oscillator
// series: with r = x^2 the polynomial part u obeys
// |u(x)| >= C e^{beta x^2} + P_k(x^2), so
// psi^2 >= (C e^{beta x^2} + P_k(x^2))^2 x^{2s} e^{-x^2} grows without
// bound because 2 beta - 1 > 0.  Witness values are reported at x = 3, 4, 5.
struct GrowthWitness {
  double x;
  double series_lower_bound;  // C e^{beta x^2} + P_k(x^2)
  double psi_sq_lower_bound;  // bound on psi(x)^2 (valid where the above > 0)
};

struct GrowthReport {
  double alpha;
  double s;
  double energy_off;
  double beta;
  int k;
  double constant;
  std::vector<GrowthWitness> witnesses;
  bool growing;  // all witnesses positive and strictly increasing
};

inline GrowthReport growth_implies_nonnormalizable(double alpha,
                                                   const BranchExponent& branch,
                                                   double energy_off,
                                                   double beta) {
  if (branch.admissibility != Admissibility::Admissible)
    throw BranchError("growth_implies_nonnormalizable: branch must be "
                      "admissible");
  if (!(beta > 0.5 && beta < 1.0))
    throw DomainError(
        "growth_implies_nonnormalizable: beta must lie in (1/2, 1)");
  if (distance_to_spectrum(energy_off, branch.s) < 1e-6)
    throw DomainError(
        "growth_implies_nonnormalizable: energy is (numerically) an "
        "eigenvalue; the series terminates");

  const RecurrenceContext ctx{branch.s, energy_off};
  const int k = series_tail_ratio_bound(ctx, beta);
  const SeriesBound bound =
      exponential_lower_bound(ttrr_ratios(ctx), 1.0, beta, k);

  GrowthReport report;
  report.alpha = alpha;
  report.s = branch.s;
  report.energy_off = energy_off;
  report.beta = beta;
  report.k = k;
  report.constant = bound.constant;
  report.growing = true;
  double prev = -1e300;
  for (double x : {3.0, 4.0, 5.0}) {
    const double r = x * x;
    const double env = bound.envelope(r);
    const double psi_sq =
        env * env * std::pow(x, 2.0 * branch.s) * std::exp(-r);
    report.witnesses.push_back({x, env, psi_sq});
    if (!(env > 0.0) || !(psi_sq > prev)) report.growing = false;
    prev = psi_sq;
  }
  return report;
}

}  // namespace sho
