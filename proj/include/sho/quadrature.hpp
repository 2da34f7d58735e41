#pragma once

#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "sho/errors.hpp"

namespace sho {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // finite by construction
  long evaluations = 0;
};

// Adaptive subdivision ran out of budget before meeting the tolerance.
// Carries the partial estimate so callers can still inspect it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, QuadratureResult partial_result)
      : Error(what), partial(partial_result) {}
  QuadratureResult partial;
};

struct QuadratureOptions {
  int max_intervals = 20000;
  double min_width = 1e-290;  // intervals narrower than this are finalized
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1] (positive abscissae; the rule is
// symmetric).  Even indices are Kronrod-only nodes.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Interval {
  double a, b;
  double value;
  double error;
  bool operator<(const Interval& o) const {
    if (error != o.error) return error < o.error;
    return a < o.a;  // total order keeps the heap deterministic
  }
};

// One Kronrod-15 panel with the QUADPACK-style error estimate.
template <class F>
Interval kronrod15(F&& f, double a, double b, long& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[8][2];
  const double fc = f(center);
  fv[7][0] = fc;
  fv[7][1] = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    fv[i][0] = f(center - dx);
    fv[i][1] = f(center + dx);
  }
  evaluations += 15;

  double resk = kKronrodWeights[7] * fc;
  double resg = kGaussWeights[3] * fc;
  double resabs = std::abs(resk);
  for (int i = 0; i < 7; ++i) {
    const double pair_sum = fv[i][0] + fv[i][1];
    resk += kKronrodWeights[i] * pair_sum;
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * pair_sum;
    resabs += kKronrodWeights[i] * (std::abs(fv[i][0]) + std::abs(fv[i][1]));
  }

  const double mean = 0.5 * resk;
  double resasc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeights[i] *
              (std::abs(fv[i][0] - mean) + std::abs(fv[i][1] - mean));

  const double value = resk * half;
  resasc *= std::abs(half);
  resabs *= std::abs(half);

  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > 1e-290) err = std::max(err, 5e-16 * resabs);
  return {a, b, value, err};
}

// Globally adaptive driver on a finite interval: split the interval with
// the largest error estimate until the summed estimate meets tol.
template <class F>
QuadratureResult adapt(F&& f, double a, double b, double tol,
                       const QuadratureOptions& opts) {
  long evaluations = 0;
  std::priority_queue<Interval> queue;
  queue.push(kronrod15(f, a, b, evaluations));

  double finalized_value = 0.0;  // intervals too narrow to split further
  double finalized_error = 0.0;
  double queued_error = queue.top().error;
  bool budget_exhausted = false;

  while (!queue.empty() && finalized_error + queued_error > tol &&
         queue.top().error > 0.0) {
    if (static_cast<int>(queue.size()) >= opts.max_intervals) {
      budget_exhausted = true;
      break;
    }
    Interval worst = queue.top();
    queue.pop();
    queued_error -= worst.error;

    if (worst.b - worst.a < opts.min_width) {
      finalized_value += worst.value;
      finalized_error += worst.error;
      continue;
    }

    const double mid = 0.5 * (worst.a + worst.b);
    Interval left = kronrod15(f, worst.a, mid, evaluations);
    Interval right = kronrod15(f, mid, worst.b, evaluations);
    queued_error += left.error + right.error;
    queue.push(left);
    queue.push(right);
  }

  QuadratureResult result;
  result.value = finalized_value;
  result.error_estimate = finalized_error;
  result.evaluations = evaluations;
  std::vector<Interval> rest;
  rest.reserve(queue.size());
  while (!queue.empty()) {
    rest.push_back(queue.top());
    queue.pop();
  }
  // rest is sorted by decreasing error; accumulate small-to-large.
  for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
    result.value += it->value;
    result.error_estimate += it->error;
  }

  if (budget_exhausted && result.error_estimate > tol)
    throw ConvergenceError(
        "quadrature did not converge within the subdivision budget", result);
  return result;
}

}  // namespace detail

// Integral of f over (a, inf), via the rational map x = a + t/(1-t) onto
// t in (0, 1) plus global adaptive Gauss-Kronrod subdivision.  Intended
// for integrands that decay faster than any power at infinity and have at
// worst an integrable power singularity at the left endpoint; tol is an
// absolute error target.
template <class F>
QuadratureResult integrate_from(F&& f, double a, double tol,
                                const QuadratureOptions& opts = {}) {
  if (!(tol > 0.0)) throw DomainError("integrate_from: tol must be positive");
  auto transformed = [&f, a](double t) {
    const double u = 1.0 - t;
    if (u < 1e-150) return 0.0;  // decaying integrands contribute nothing here
    const double x = a + t / u;
    return f(x) / (u * u);
  };
  return detail::adapt(transformed, 0.0, 1.0, tol, opts);
}

// Integral of f over the whole positive semiaxis (0, inf).
template <class F>
QuadratureResult integrate_semiaxis(F&& f, double tol,
                                    const QuadratureOptions& opts = {}) {
  return integrate_from(std::forward<F>(f), 0.0, tol, opts);
}

}  // namespace sho
