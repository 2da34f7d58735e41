#include <cmath>

#include "doctest.h"
#include "sho/frobenius.hpp"
#include "sho/nonnormalizable.hpp"
#include "sho/oscillator.hpp"
#include "sho/shooting.hpp"
#include "test_helpers.hpp"

using sho::Branch;
using sho_test::close_abs;

TEST_SUITE("shooting") {
  TEST_CASE("first odd level of the plain oscillator") {
    const auto branch = sho::branch_exponent({0.0}, Branch::Plus);
    const auto r = sho::shoot_eigenvalue(0.0, branch, 1.0, 2.0);
    CHECK(close_abs(r.energy, 1.5, 1e-6));
    CHECK(r.bracket_lo < r.energy);
    CHECK(r.bracket_hi > r.energy);
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-8);
    CHECK(r.iterations > 0);
    // nodeless state: the trajectory follows the decaying asymptote at x = 3
    CHECK(std::abs(r.terminal_log_derivative_mismatch) <= 1e-3);
  }

  TEST_CASE("splitting branch values near alpha = 0") {
    // s = 0.05: the paper's worst-conditioned case for the oracle
    const auto minus = sho::branch_exponent({-0.0475}, Branch::Minus);
    const auto r_minus = sho::shoot_eigenvalue(-0.0475, minus, 0.3, 0.8);
    CHECK(close_abs(r_minus.energy, 0.55, 1e-6));

    const auto plus = sho::branch_exponent({-0.0475}, Branch::Plus);
    const auto r_plus = sho::shoot_eigenvalue(-0.0475, plus, 1.0, 2.0);
    CHECK(close_abs(r_plus.energy, 1.45, 1e-6));
  }

  TEST_CASE("repulsive coupling") {
    const auto branch = sho::branch_exponent({2.0}, Branch::Plus);
    const auto r = sho::shoot_eigenvalue(2.0, branch, 2.0, 3.0);
    CHECK(close_abs(r.energy, 2.5, 1e-6));
  }

  TEST_CASE("bracket without a sign change is rejected") {
    const auto branch = sho::branch_exponent({0.0}, Branch::Plus);
    // levels sit at 1.5, 3.5, ...; (1.6, 1.9) contains none
    CHECK_THROWS_AS(sho::shoot_eigenvalue(0.0, branch, 1.6, 1.9),
                    sho::BracketError);
  }

  TEST_CASE("degenerate and mismatched branches are rejected") {
    const auto degenerate = sho::branch_exponent({-0.25}, Branch::Plus);
    CHECK_THROWS_AS(sho::shoot_eigenvalue(-0.25, degenerate, 1.0, 2.0),
                    sho::BranchError);
    const auto inadmissible = sho::branch_exponent({2.0}, Branch::Minus);
    CHECK_THROWS_AS(sho::shoot_eigenvalue(2.0, inadmissible, 1.0, 2.0),
                    sho::BranchError);
    // exponent taken from a different coupling
    const auto wrong = sho::branch_exponent({0.0}, Branch::Plus);
    CHECK_THROWS_AS(sho::shoot_eigenvalue(1.0, wrong, 1.0, 2.0),
                    sho::DomainError);
  }

  TEST_CASE("integrated trajectory follows the closed-form eigenfunction") {
    // start RK4 from exact state values away from the origin and compare
    // pointwise until the decaying envelope approaches rounding scale
    const double alpha = -0.0475;
    const auto branch = sho::branch_exponent({alpha}, Branch::Plus);
    const auto state = sho::build_state(1, branch);
    const double x0 = 0.25;
    const double h = 1e-4;
    // derivative from the five-point stencil of the closed form
    auto psi = [&state](double x) { return sho::eval_state(state, x); };
    const double dpsi0 = (-psi(x0 + 2 * h) + 8 * psi(x0 + h) -
                          8 * psi(x0 - h) + psi(x0 - 2 * h)) /
                         (12 * h);
    const auto sol = sho::integrate_ode(
        [&](double x) {
          return alpha / (x * x) + x * x - 2.0 * state.energy;
        },
        x0, psi(x0), dpsi0, 4.0, 1e-3);
    REQUIRE(!sol.blew_up);
    for (std::size_t i = 0; i < sol.xs.size(); i += 100)
      CHECK(close_abs(sol.values[i], psi(sol.xs[i]), 1e-6));
  }

  TEST_CASE("coarse scan brackets the lowest levels") {
    const auto branch = sho::branch_exponent({-0.2}, Branch::Minus);
    const auto brackets = sho::find_brackets(-0.2, branch, 3);
    REQUIRE(brackets.size() == 4);
    for (int n = 0; n < 4; ++n) {
      const double expected = sho::energy(n, branch.s);
      CHECK(brackets[n].first < expected);
      CHECK(brackets[n].second > expected);
      // scan-seeded brackets feed straight into the bisection
      const auto r = sho::shoot_eigenvalue(-0.2, branch, brackets[n].first,
                                           brackets[n].second);
      CHECK(close_abs(r.energy, expected, 1e-6));
    }
  }

  TEST_CASE("truncated off-eigenvalue series keeps growing at the probe") {
    const auto branch = sho::branch_exponent({0.0}, Branch::Plus);
    const auto report = sho::nonnormalizable_demo(0.0, branch, 2.0, 3.0);
    CHECK(report.monotone_past_threshold);
    CHECK(report.threshold_index >= 0);
    // strict growth is visible past j ~ 10 while the added terms are still
    // above the rounding floor of the partial sum
    for (std::size_t j = 12; j <= 30; ++j)
      CHECK(report.magnitudes[j + 1] > report.magnitudes[j]);

    const auto repulsive = sho::branch_exponent({2.0}, Branch::Plus);
    const auto r2 = sho::nonnormalizable_demo(2.0, repulsive, 3.7, 3.0);
    CHECK(r2.monotone_past_threshold);
  }

  TEST_CASE("demo rejects eigenvalues and out-of-range probes") {
    const auto branch = sho::branch_exponent({0.0}, Branch::Plus);
    CHECK_THROWS_AS(sho::nonnormalizable_demo(0.0, branch, 1.5, 3.0),
                    sho::DomainError);
    CHECK_THROWS_AS(
        sho::nonnormalizable_demo(0.0, branch, 1.5 + 5e-7, 3.0),
        sho::DomainError);
    CHECK_THROWS_AS(sho::nonnormalizable_demo(0.0, branch, 2.0, 1.0),
                    sho::DomainError);
    CHECK_THROWS_AS(sho::nonnormalizable_demo(0.0, branch, 2.0, 5.0),
                    sho::DomainError);
  }
}
