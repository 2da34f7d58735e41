#include <cmath>
#include <random>

#include "doctest.h"
#include "sho/frobenius.hpp"
#include "sho/oscillator.hpp"
#include "sho/series_bounds.hpp"
#include "test_helpers.hpp"

using sho_test::close_abs;
using sho_test::close_rel;

TEST_SUITE("series_bounds") {
  TEST_CASE("identical ratios give equality") {
    auto ratios = [](int j) { return 0.3 / (j + 1.0); };
    const auto cmp = sho::compare_series(ratios, ratios, 1.0, 0.5, 0, 2.0, 60);
    CHECK(std::abs(cmp.lhs - cmp.rhs) <=
          1e-14 * std::max(1.0, std::abs(cmp.lhs)));
  }

  TEST_CASE("exponential closed forms: e^r versus e^{r/2}") {
    auto fast = [](int j) { return 1.0 / (j + 1.0); };
    auto slow = [](int j) { return 0.5 / (j + 1.0); };
    const auto cmp = sho::compare_series(fast, slow, 1.0, 1.0, 0, 2.0, 80);
    CHECK(close_rel(cmp.lhs, std::exp(2.0), 1e-13));
    CHECK(close_rel(cmp.rhs, std::exp(1.0), 1e-13));
    CHECK(cmp.lhs >= cmp.rhs);
  }

  TEST_CASE("oscillator tail against the exponential comparison series") {
    // independent oracle: sum both sides by a hand-rolled loop
    const sho::RecurrenceContext ctx{1.0, 0.0};
    const double beta = 0.75;
    const int k = sho::series_tail_ratio_bound(ctx, beta);
    REQUIRE(k == 2);
    const double r = 4.0;
    const int truncation = 300;

    std::vector<double> a(truncation + 1), b(truncation + 1);
    a[0] = 1.0;
    b[0] = 1.0;
    for (int j = 0; j < truncation; ++j) {
      a[j + 1] = sho::recurrence_ratio(ctx, j) * a[j];
      b[j + 1] = beta / (j + 1.0) * b[j];
    }
    double lhs_oracle = 0.0, t_oracle = 0.0;
    for (int j = truncation; j >= 0; --j) {
      lhs_oracle = a[j] + r * lhs_oracle;
      t_oracle = b[j] + r * t_oracle;
    }
    const double ratio = a[k] / b[k];
    double corr = 0.0;
    for (int j = k; j >= 0; --j) corr = (a[j] - ratio * b[j]) + r * corr;
    const double rhs_oracle = ratio * t_oracle + corr;

    const auto cmp = sho::compare_series(sho::ttrr_ratios(ctx),
                                         [beta](int j) {
                                           return beta / (j + 1.0);
                                         },
                                         1.0, 1.0, k, r, truncation);
    CHECK(close_rel(cmp.lhs, lhs_oracle, 1e-13));
    CHECK(close_rel(cmp.rhs, rhs_oracle, 1e-13));
    CHECK(cmp.lhs >= cmp.rhs);
  }

  TEST_CASE("randomized non-eigenvalue recurrences satisfy the inequality") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> pick_s(0.05, 2.0);
    std::uniform_real_distribution<double> pick_e(0.0, 8.0);
    const double beta = 0.75;
    int tested = 0;
    while (tested < 20) {
      const double s = pick_s(rng);
      const double e_off = pick_e(rng);
      if (sho::distance_to_spectrum(e_off, s) < 1e-3) continue;
      ++tested;
      const sho::RecurrenceContext ctx{s, e_off};
      const int k = sho::series_tail_ratio_bound(ctx, beta);
      for (double r : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto cmp = sho::compare_series(
            sho::ttrr_ratios(ctx),
            [beta](int j) { return beta / (j + 1.0); }, 1.0, 1.0, k, r, 400);
        CHECK(cmp.lhs >= cmp.rhs - 1e-12 * std::max(1.0, std::abs(cmp.lhs)));
      }
    }
  }

  TEST_CASE("ordering violations are reported with the offending index") {
    const sho::RecurrenceContext ctx{1.0, 0.0};
    // A_j (j+1) -> 1 from below, so 0.9/(j+1) dominates at small j
    try {
      sho::compare_series(sho::ttrr_ratios(ctx),
                          [](int j) { return 0.9 / (j + 1.0); }, 1.0, 1.0, 2,
                          4.0, 100);
      FAIL("expected OrderingError");
    } catch (const sho::OrderingError& e) {
      CHECK(e.offending_index == 3);
    }
    CHECK_THROWS_AS(
        sho::compare_series(sho::ttrr_ratios(ctx),
                            [](int j) { return 0.75 / (j + 1.0); }, 1.0, 1.0,
                            2, -1.0, 100),
        sho::DomainError);
  }

  TEST_CASE("exponential lower bound reduces to equality for exact ratios") {
    const double beta = 0.75;
    auto ratios = [beta](int j) { return beta / (j + 1.0); };
    const auto bound = sho::exponential_lower_bound(ratios, 1.0, beta, 0);
    CHECK(bound.constant == 1.0);
    REQUIRE(bound.correction_poly.size() == 1);
    CHECK(bound.correction_poly[0] == 0.0);
    CHECK(!bound.sign_flipped);
    // the bound is the series itself: S(r) = e^{beta r}
    CHECK(close_rel(bound.envelope(2.0), std::exp(2.0 * beta), 1e-14));

    // dominated ratios are rejected, either pointwise or through the limit
    CHECK_THROWS_AS(
        sho::exponential_lower_bound(
            [](int j) { return 0.7 / (j + 1.0); }, 1.0, beta, 0),
        sho::OrderingError);
    CHECK_THROWS_AS(sho::exponential_lower_bound(ratios, 1.0, 0.8, 0),
                    sho::OrderingError);
  }

  TEST_CASE("oscillator series dominates C e^{beta r} plus a polynomial") {
    const sho::RecurrenceContext ctx{1.0, 0.0};
    const double beta = 0.75;
    const int k = sho::series_tail_ratio_bound(ctx, beta);
    const auto bound =
        sho::exponential_lower_bound(sho::ttrr_ratios(ctx), 1.0, beta, k);
    CHECK(bound.constant > 0.0);
    CHECK(static_cast<int>(bound.correction_poly.size()) == k + 1);
    for (double r = 0.0; r <= 25.0; r += 0.5) {
      const double s_sum =
          r == 0.0 ? 1.0
                   : sho::sum_to_convergence(sho::ttrr_ratios(ctx), 1.0, r);
      CHECK(s_sum - bound.envelope(r) >= -1e-10 * std::max(1.0, s_sum));
    }
  }

  TEST_CASE("oscillator ratios approach 1/(j+1): j A_j -> 1") {
    const sho::RecurrenceContext ctx{1.0, 2.0};
    // Richardson in 1/j removes the leading correction
    const double f_half = 500.0 * sho::recurrence_ratio(ctx, 500);
    const double f_full = 1000.0 * sho::recurrence_ratio(ctx, 1000);
    CHECK(close_abs(2.0 * f_full - f_half, 1.0, 1e-3));
    // the raw sequence at j = 1000 carries the documented (2s+5+2E)/(4j) lag
    CHECK(close_abs(f_full, 1.0 - (2.0 * 1.0 + 5.0 + 2.0 * 2.0) / 4000.0,
                    1e-4));
  }

  TEST_CASE("growth witnesses increase for off-eigenvalue energies") {
    const auto branch = sho::branch_exponent({0.0}, sho::Branch::Plus);
    const auto report =
        sho::growth_implies_nonnormalizable(0.0, branch, 2.0, 0.75);
    CHECK(report.growing);
    REQUIRE(report.witnesses.size() == 3);
    CHECK(report.witnesses[0].psi_sq_lower_bound > 0.0);
    CHECK(report.witnesses[1].psi_sq_lower_bound >
          report.witnesses[0].psi_sq_lower_bound);
    CHECK(report.witnesses[2].psi_sq_lower_bound >
          report.witnesses[1].psi_sq_lower_bound);

    CHECK_THROWS_AS(
        sho::growth_implies_nonnormalizable(0.0, branch, 1.5, 0.75),
        sho::DomainError);
    CHECK_THROWS_AS(
        sho::growth_implies_nonnormalizable(0.0, branch, 2.0, 0.5),
        sho::DomainError);
    const auto inadmissible = sho::branch_exponent({2.0}, sho::Branch::Minus);
    CHECK_THROWS_AS(
        sho::growth_implies_nonnormalizable(2.0, inadmissible, 2.0, 0.75),
        sho::BranchError);
  }
}
