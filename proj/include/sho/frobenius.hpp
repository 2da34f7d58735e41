#pragma once

#include <cmath>
#include <cstdlib>
#include <vector>

#include "sho/errors.hpp"
#include "sho/gamma.hpp"
#include "sho/oscillator.hpp"

namespace sho {

// Power-series solution of the singular harmonic oscillator.
//
// With the ansatz psi(x) = x^s e^{-x^2/2} u(x), u(x) = sum_j c_j x^{2j},
// the Schroedinger equation reduces to the two-term recurrence
//
//   c_{j+1} = A_j c_j,   A_j = (4j + 2s + 1 - 2E) / (2(j+1)(2j + 2s + 1)).
//
// The series fails to be square integrable unless it terminates, which
// happens exactly at E = 2n + s + 1/2 where A_n = 0 and u collapses to a
// polynomial of degree 2n.

struct RecurrenceContext {
  double s;       // branch exponent
  double energy;  // trial energy (dimensionless)
};

// Series coefficient ratio A_j at a trial energy.  The numerator is kept
// in the form 4j + 2s + 1 - 2E so that it cancels to an exact zero at
// j = n when E comes from energy(n, s); keep the evaluation order.
inline double recurrence_ratio(const RecurrenceContext& ctx, int j) {
  if (j < 0) throw DomainError("recurrence_ratio: index must be >= 0");
  const double numerator = 4.0 * j + 2.0 * ctx.s + 1.0 - 2.0 * ctx.energy;
  const double denominator = 2.0 * (j + 1.0) * (2.0 * j + 2.0 * ctx.s + 1.0);
  return numerator / denominator;
}

// The same ratio with the quantized energy substituted algebraically:
// A_j = 2(j - n) / ((j+1)(2j + 2s + 1)).
inline double terminating_ratio(int n, double s, int j) {
  if (j < 0 || n < 0)
    throw DomainError("terminating_ratio: indices must be >= 0");
  return 2.0 * (j - n) / ((j + 1.0) * (2.0 * j + 2.0 * s + 1.0));
}

// Quantized level E_{n,s} = 2n + s + 1/2.
inline double energy(int n, double s) {
  if (n < 0) throw DomainError("energy: quantum number must be >= 0");
  return 2.0 * n + s + 0.5;
}

// Distance from E to the nearest level of the s ladder.
inline double distance_to_spectrum(double e, double s) {
  const double m = 0.5 * (e - s - 0.5);
  const long n = std::max(0L, std::lround(m));
  return std::abs(e - energy(static_cast<int>(n), s));
}

// Polynomial coefficients c_0..c_n of the terminating series, c_0 = 1.
inline std::vector<double> terminating_coefficients(int n, double s) {
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  c[0] = 1.0;
  for (int j = 0; j < n; ++j) c[j + 1] = terminating_ratio(n, s, j) * c[j];
  return c;
}

// A bound eigenstate psi_{n,s}(x) = norm * x^s e^{-x^2/2} sum c_j x^{2j}.
// Invariants: energy = 2n + s + 1/2, c_0 = 1 > 0, the c_j alternate in
// sign up to j = n, and the state is unit-normalized on (0, inf).
struct EigenState {
  int n;
  double s;
  double energy;
  std::vector<double> coeffs;  // c_0..c_n with c_0 = 1
  double norm;                 // positive normalization constant
};

namespace detail {

// Gram sum  sum_{j,l} c_j d_l * moment(base + 2(j+l))  used for norms,
// overlaps and x^power expectation values; everything reduces to
// half-line Gaussian moments because the polynomials live under x^(2s)e^{-x^2}.
inline double weighted_gram(const std::vector<double>& c,
                            const std::vector<double>& d, double base_power) {
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t l = 0; l < d.size(); ++l)
      sum += c[j] * d[l] * gaussian_moment(base_power + 2.0 * (j + l));
  return sum;
}

}  // namespace detail

// Construct the normalized eigenstate on an admissible branch.  The
// normalization uses the closed-form Gaussian moments; quadrature serves
// as an independent cross-check in the test suite, not as the primary path.
inline EigenState build_state(int n, const BranchExponent& branch) {
  if (n < 0) throw DomainError("build_state: quantum number must be >= 0");
  if (branch.admissibility == Admissibility::Inadmissible)
    throw BranchError("build_state: branch is inadmissible (s = " +
                      std::to_string(branch.s) + " is not regular at 0)");
  if (branch.admissibility == Admissibility::Degenerate)
    throw BranchError(
        "build_state: degenerate branch at alpha = -1/4 is outside the "
        "power-series solver (the partner solution carries a logarithm)");

  EigenState state;
  state.n = n;
  state.s = branch.s;
  state.energy = energy(n, branch.s);
  state.coeffs = terminating_coefficients(n, branch.s);
  const double gram =
      detail::weighted_gram(state.coeffs, state.coeffs, 2.0 * branch.s);
  state.norm = 1.0 / std::sqrt(gram);
  return state;
}

// Evaluate psi_{n,s}(x) for x > 0.  The polynomial is evaluated by Horner
// in t = x^2; when x^s e^{-x^2/2} would underflow the evaluation switches
// to log space with the polynomial sign carried separately.
inline double eval_state(const EigenState& state, double x) {
  if (!(x > 0.0))
    throw DomainError(
        "eval_state: requires x > 0 (use eval_state_at_origin for the x -> 0+ "
        "limit)");
  if (x >= 1e6) return 0.0;  // e^{-x^2/2} is far below the subnormal range

  const double t = x * x;
  double poly = state.coeffs.back();
  for (std::size_t j = state.coeffs.size() - 1; j-- > 0;)
    poly = state.coeffs[j] + t * poly;

  const double log_envelope = state.s * std::log(x) - 0.5 * t;
  if (log_envelope > -690.0)
    return state.norm * std::pow(x, state.s) * std::exp(-0.5 * t) * poly;
  if (poly == 0.0) return 0.0;
  const double magnitude =
      std::exp(log_envelope + std::log(std::abs(poly)) + std::log(state.norm));
  return poly < 0.0 ? -magnitude : magnitude;
}

// x -> 0+ limit: zero for s > 0, norm * c_0 for the s = 0 branch.
inline double eval_state_at_origin(const EigenState& state) {
  return state.s > 0.0 ? 0.0 : state.norm * state.coeffs[0];
}

// Normalized integral over (0, inf) of psi_a psi_b x^power via Gaussian
// moments.  Throws DivergentIntegralError when the leading moment has
// exponent <= -1 (this is how the missing <x^-2> on the s < 1/2 branch
// shows up).
inline double moment_integral(const EigenState& a, const EigenState& b,
                              double power) {
  const double gram =
      detail::weighted_gram(a.coeffs, b.coeffs, a.s + b.s + power);
  return a.norm * b.norm * gram;
}

inline double state_overlap(const EigenState& a, const EigenState& b) {
  return moment_integral(a, b, 0.0);
}

// Smallest integer k strictly above the tail threshold
//   E / (2(1-beta)) + (2s+1)(2beta-1) / (4(1-beta)),
// beyond which A_j > beta/(j+1) for every j.  The inequality is verified
// by direct evaluation over a window past k; a terminating (eigenvalue)
// energy is rejected since its ratios hit an exact zero.
inline int series_tail_ratio_bound(const RecurrenceContext& ctx, double beta,
                                   int verify_window = 256) {
  if (!(beta > 0.5 && beta < 1.0))
    throw DomainError("series_tail_ratio_bound: beta must lie in (1/2, 1)");
  if (distance_to_spectrum(ctx.energy, ctx.s) < 1e-9)
    throw DomainError(
        "series_tail_ratio_bound: E is an eigenvalue; the series terminates "
        "and the tail bound is empty");

  const double threshold = ctx.energy / (2.0 * (1.0 - beta)) +
                           (2.0 * ctx.s + 1.0) * (2.0 * beta - 1.0) /
                               (4.0 * (1.0 - beta));
  int k = static_cast<int>(std::floor(threshold)) + 1;
  if (k < 0) k = 0;

  for (int j = k + 1; j <= k + verify_window; ++j)
    if (!(recurrence_ratio(ctx, j) > beta / (j + 1.0)))
      throw OrderingError(
          "series_tail_ratio_bound: A_j > beta/(j+1) failed in the "
          "verification window at j = " +
              std::to_string(j),
          j);
  return k;
}

}  // namespace sho
