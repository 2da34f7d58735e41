#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sho/errors.hpp"
#include "sho/frobenius.hpp"
#include "sho/ode.hpp"
#include "sho/oscillator.hpp"

namespace sho {

// Shooting oracle for the spectrum.  The trajectory is started at
// x0 = 1e-3 from the indicial behaviour psi = x^s, psi' = s x^{s-1}
// (refined by the first series term of the recurrence at the trial
// energy), integrated out to x_max = 8 where e^{-x^2/2} ~ 1e-14, and the
// energy is bisected on the sign of psi(x_max): across an eigenvalue the
// blow-up direction of the dominant e^{+x^2/2} solution flips.  The
// closed-form spectrum is never consulted.

struct ShootingOptions {
  double x0 = 1e-3;
  double x_max = 8.0;
  double step = 1e-3;
  // The coefficient alpha/x^2 varies violently over the first few steps;
  // the region up to origin_patch_end is integrated with step/origin_refine
  // so the truncation error there stays below the eigenvalue tolerance.
  double origin_patch_end = 0.05;
  int origin_refine = 50;
};

struct ShootingResult {
  double energy;
  double bracket_lo;
  double bracket_hi;
  int iterations;
  // Diagnostic: psi'/psi compared against the decaying asymptote
  // -x + (E - 1/2)/x, sampled at x = 3 where the growing admixture is
  // still negligible.  Meaningful for nodeless states; reported as data.
  double terminal_log_derivative_mismatch;
};

namespace detail {

template <class G>
OdeSolution shoot_trajectory(G&& g, double s, double e_trial,
                             const ShootingOptions& opts) {
  const double x0 = opts.x0;
  const double c1 = recurrence_ratio({s, e_trial}, 0);
  const double x0sq = x0 * x0;
  const double envelope = std::exp(-0.5 * x0sq);
  const double u = 1.0 + c1 * x0sq;
  const double psi0 = std::pow(x0, s) * envelope * u;
  const double dpsi0 =
      std::pow(x0, s - 1.0) * envelope *
      (s + (s * c1 + 2.0 * c1 - 1.0) * x0sq - c1 * x0sq * x0sq);

  const double patch_end = std::min(opts.origin_patch_end, opts.x_max);
  if (patch_end <= x0)
    return integrate_ode(g, x0, psi0, dpsi0, opts.x_max, opts.step);

  OdeSolution inner = integrate_ode(g, x0, psi0, dpsi0, patch_end,
                                    opts.step / opts.origin_refine);
  if (inner.blew_up || patch_end >= opts.x_max) return inner;
  OdeSolution outer =
      integrate_ode(g, inner.last_x(), inner.last_value(),
                    inner.last_derivative(), opts.x_max, opts.step);
  // Stitch the segments so callers see one trajectory.
  inner.xs.insert(inner.xs.end(), outer.xs.begin() + 1, outer.xs.end());
  inner.values.insert(inner.values.end(), outer.values.begin() + 1,
                      outer.values.end());
  inner.derivatives.insert(inner.derivatives.end(),
                           outer.derivatives.begin() + 1,
                           outer.derivatives.end());
  inner.blew_up = outer.blew_up;
  return inner;
}

inline void require_admissible(const BranchExponent& branch,
                               const char* where) {
  if (branch.admissibility == Admissibility::Degenerate)
    throw BranchError(std::string(where) +
                      ": degenerate branch (alpha = -1/4) has no "
                      "power-behaved second solution to shoot on");
  if (branch.admissibility == Admissibility::Inadmissible)
    throw BranchError(std::string(where) + ": branch is inadmissible");
}

inline void require_branch_matches_alpha(double alpha,
                                         const BranchExponent& branch,
                                         const char* where) {
  // s(s-1) = alpha ties the exponent to the coupling.
  if (std::abs(branch.s * (branch.s - 1.0) - alpha) >
      1e-8 * std::max(1.0, std::abs(alpha)))
    throw DomainError(std::string(where) +
                      ": branch exponent does not solve s(s-1) = alpha");
}

}  // namespace detail

// Locate one eigenvalue inside (e_lo, e_hi) by bisection on the terminal
// sign.  The bracket must straddle exactly one eigenvalue; tol is the
// final bracket width.
inline ShootingResult shoot_eigenvalue(double alpha,
                                       const BranchExponent& branch,
                                       double e_lo, double e_hi,
                                       double tol = 1e-8,
                                       const ShootingOptions& opts = {}) {
  detail::require_admissible(branch, "shoot_eigenvalue");
  detail::require_branch_matches_alpha(alpha, branch, "shoot_eigenvalue");
  if (!(e_lo < e_hi)) throw DomainError("shoot_eigenvalue: empty bracket");
  if (!(tol > 0.0)) throw DomainError("shoot_eigenvalue: tol must be > 0");

  const double s = branch.s;
  auto terminal_sign = [&](double e_trial) {
    auto g = [alpha, e_trial](double x) {
      return alpha / (x * x) + x * x - 2.0 * e_trial;
    };
    const OdeSolution sol = detail::shoot_trajectory(g, s, e_trial, opts);
    return sol.last_value() >= 0.0 ? 1 : -1;
  };

  int sign_lo = terminal_sign(e_lo);
  const int sign_hi = terminal_sign(e_hi);
  if (sign_lo == sign_hi)
    throw BracketError(
        "shoot_eigenvalue: no sign change of psi(x_max) across the bracket [" +
        std::to_string(e_lo) + ", " + std::to_string(e_hi) + "]");

  double lo = e_lo, hi = e_hi;
  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ++iterations;
    if (terminal_sign(mid) == sign_lo)
      lo = mid;
    else
      hi = mid;
    if (iterations > 200) break;  // bracket width stalls at rounding
  }

  ShootingResult result;
  result.energy = 0.5 * (lo + hi);
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  result.iterations = iterations;

  // Log-derivative diagnostic at x = 3 on the converged trajectory.
  auto g_final = [alpha, &result](double x) {
    return alpha / (x * x) + x * x - 2.0 * result.energy;
  };
  const OdeSolution sol =
      detail::shoot_trajectory(g_final, s, result.energy, opts);
  double best = 1e300;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sol.xs.size(); ++i) {
    const double d = std::abs(sol.xs[i] - 3.0);
    if (d < best) best = d, idx = i;
  }
  const double x_diag = sol.xs[idx];
  const double asymptote = -x_diag + (result.energy - 0.5) / x_diag;
  result.terminal_log_derivative_mismatch =
      sol.derivatives[idx] / sol.values[idx] - asymptote;
  return result;
}

// Coarse scan seeding: walk E upward from s + 0.1 in steps of 0.5 and
// report the sign-change intervals for the lowest n_max + 1 levels.  The
// walk continues one step past s + 1/2 + 2 n_max so the top level is
// bracketed too.
inline std::vector<std::pair<double, double>> find_brackets(
    double alpha, const BranchExponent& branch, int n_max,
    const ShootingOptions& opts = {}) {
  detail::require_admissible(branch, "find_brackets");
  detail::require_branch_matches_alpha(alpha, branch, "find_brackets");
  if (n_max < 0) throw DomainError("find_brackets: n_max must be >= 0");

  const double s = branch.s;
  auto terminal_sign = [&](double e_trial) {
    auto g = [alpha, e_trial](double x) {
      return alpha / (x * x) + x * x - 2.0 * e_trial;
    };
    return detail::shoot_trajectory(g, s, e_trial, opts).last_value() >= 0.0
               ? 1
               : -1;
  };

  std::vector<std::pair<double, double>> brackets;
  const double stop = s + 2.0 * n_max + 1.3;
  double e_prev = s + 0.1;
  int sign_prev = terminal_sign(e_prev);
  for (double e = e_prev + 0.5; e_prev < stop; e += 0.5) {
    const int sign_here = terminal_sign(e);
    if (sign_here != sign_prev) {
      brackets.emplace_back(e_prev, e);
      if (static_cast<int>(brackets.size()) == n_max + 1) return brackets;
    }
    e_prev = e;
    sign_prev = sign_here;
  }
  throw BracketError("find_brackets: scan found only " +
                     std::to_string(brackets.size()) + " of " +
                     std::to_string(n_max + 1) + " sign changes");
}

}  // namespace sho
