#pragma once

#include <cmath>
#include <string>

#include "sho/errors.hpp"

namespace sho {

// The model on the half line x > 0:
//
//   H = -1/2 d^2/dx^2 + alpha/(2 x^2) + x^2/2        (dimensionless)
//
// Near the origin psi ~ x^s with alpha = s(s-1); the two indicial roots
// s_+- = (1 +- sqrt(1+4 alpha))/2 define the solution branches.

enum class Branch { Minus, Plus };

enum class Admissibility { Admissible, Inadmissible, Degenerate };

inline const char* to_string(Branch b) {
  return b == Branch::Minus ? "minus" : "plus";
}

inline const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "admissible";
    case Admissibility::Inadmissible: return "inadmissible";
    default: return "degenerate";
  }
}

// Dimensional inputs: H = -hbar^2/(2m) d^2/dx^2 + V_{-2}/(2x^2) + V_2 x^2/2.
struct PhysicalParams {
  double mass;               // m > 0
  double stiffness;          // V_2 > 0, energy / length^2
  double singular_strength;  // V_{-2}, energy * length^2 (any sign)
  double hbar;               // > 0
};

struct OscillatorParams {
  double alpha;  // dimensionless singular coupling
};

// Dimensionless form plus the scales that were divided out.
struct ScaledModel {
  OscillatorParams params;
  double omega;         // sqrt(V_2 / m)
  double length_scale;  // sqrt(hbar) / (m V_2)^{1/4}
  double energy_scale;  // hbar * omega
};

// One indicial root with its branch tag and origin-behaviour class.
struct BranchExponent {
  Branch branch;
  double s;
  Admissibility admissibility;
};

struct IndicialPair {
  BranchExponent minus;
  BranchExponent plus;
};

// Rescale physical parameters to the dimensionless Hamiltonian; the
// coupling is alpha = m V_{-2} / hbar^2.
inline ScaledModel to_dimensionless(const PhysicalParams& p) {
  if (!(p.mass > 0.0)) throw DomainError("to_dimensionless: mass must be > 0");
  if (!(p.stiffness > 0.0))
    throw DomainError("to_dimensionless: stiffness V_2 must be > 0");
  if (!(p.hbar > 0.0)) throw DomainError("to_dimensionless: hbar must be > 0");

  ScaledModel m;
  m.params.alpha = p.mass * p.singular_strength / (p.hbar * p.hbar);
  m.omega = std::sqrt(p.stiffness / p.mass);
  m.length_scale = std::sqrt(p.hbar) / std::pow(p.mass * p.stiffness, 0.25);
  m.energy_scale = p.hbar * m.omega;
  return m;
}

// Both indicial exponents with their admissibility classification:
//   alpha  > 0      : only the plus root is regular at the origin,
//   -1/4 < alpha <= 0: both roots give finite psi(0+) and are kept,
//   alpha == -1/4   : the roots coincide at s = 1/2 (degenerate pair; the
//                     second solution picks up a logarithm and is not
//                     covered by the power-series solver),
//   alpha  < -1/4   : no admissible origin behaviour ("fall to the center").
// Comparisons are exact: the caller supplies alpha exactly.
inline IndicialPair indicial_exponents(const OscillatorParams& params) {
  const double a = params.alpha;
  if (a < -0.25)
    throw DomainError(
        "indicial_exponents: alpha < -1/4 (fall to the center); no real "
        "exponent pair with finite origin behaviour");

  const double root = std::sqrt(1.0 + 4.0 * a);
  const double s_plus = 0.5 * (1.0 + root);
  const double s_minus = 0.5 * (1.0 - root);

  IndicialPair pair;
  if (a == -0.25) {
    pair.minus = {Branch::Minus, 0.5, Admissibility::Degenerate};
    pair.plus = {Branch::Plus, 0.5, Admissibility::Degenerate};
  } else if (a > 0.0) {
    pair.minus = {Branch::Minus, s_minus, Admissibility::Inadmissible};
    pair.plus = {Branch::Plus, s_plus, Admissibility::Admissible};
  } else {
    pair.minus = {Branch::Minus, s_minus, Admissibility::Admissible};
    pair.plus = {Branch::Plus, s_plus, Admissibility::Admissible};
  }
  return pair;
}

inline BranchExponent branch_exponent(const OscillatorParams& params,
                                      Branch which) {
  const IndicialPair pair = indicial_exponents(params);
  return which == Branch::Minus ? pair.minus : pair.plus;
}

}  // namespace sho
