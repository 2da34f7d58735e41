#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "sho/csv.hpp"
#include "sho/errors.hpp"
#include "sho/frobenius.hpp"
#include "sho/hellmann_feynman.hpp"
#include "sho/oscillator.hpp"
#include "sho/parallel.hpp"
#include "sho/residual.hpp"
#include "sho/series_bounds.hpp"
#include "sho/shooting.hpp"

namespace sho::cli {

enum class Command { Spectrum, Wavefn, Verify, Hft, Bounds, Figure1, Figure2 };
enum class BranchSelect { Plus, Minus, Both };
enum class OutputFormat { Csv, Json };

struct RunConfig {
  Command command = Command::Spectrum;
  double alpha = 0.0;
  double alpha_min = -0.24;  // figure1 scan, half-open (min, max]
  double alpha_max = 2.0;
  int alpha_steps = 200;
  int n_max = 3;
  int n = 0;
  BranchSelect branch = BranchSelect::Both;
  double x_min = 1e-3;
  double x_max = 4.0;
  int points = 400;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;
  double tol = 1e-6;
  double energy_off = 2.0;  // bounds
  double beta = 0.75;       // bounds
  double dalpha = 1e-5;     // hft
};

struct SpectrumRow {
  double alpha;
  Branch branch;
  double s;
  int n;
  double energy;
};

namespace detail {

inline bool selected(BranchSelect sel, Branch b) {
  return sel == BranchSelect::Both ||
         (sel == BranchSelect::Plus && b == Branch::Plus) ||
         (sel == BranchSelect::Minus && b == Branch::Minus);
}

inline void sort_rows(std::vector<SpectrumRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SpectrumRow& a, const SpectrumRow& b) {
              return std::tie(a.energy, a.branch, a.n) <
                     std::tie(b.energy, b.branch, b.n);
            });
}

inline void validate_grid(const RunConfig& cfg) {
  if (cfg.points < 2) throw DomainError("grid needs at least 2 points");
  if (!(cfg.x_min > 0.0)) throw DomainError("x_min must be positive");
  if (!(cfg.x_max > cfg.x_min)) throw DomainError("x_max must exceed x_min");
}

}  // namespace detail

// All admissible levels n <= n_max for the requested branches, sorted by
// energy (minus before plus on ties).  Requesting a single branch that is
// inadmissible at this alpha is an error; with Both, inadmissible branches
// are skipped silently.
inline std::vector<SpectrumRow> spectrum_levels(double alpha, int n_max,
                                                BranchSelect sel) {
  if (n_max < 0) throw DomainError("spectrum_levels: n_max must be >= 0");
  const IndicialPair pair = indicial_exponents({alpha});
  std::vector<SpectrumRow> rows;
  for (const BranchExponent& b : {pair.minus, pair.plus}) {
    if (!detail::selected(sel, b.branch)) continue;
    if (b.admissibility != Admissibility::Admissible) {
      if (sel != BranchSelect::Both)
        throw BranchError(std::string("spectrum_levels: requested ") +
                          to_string(b.branch) + " branch is " +
                          to_string(b.admissibility) + " at alpha = " +
                          std::to_string(alpha));
      continue;
    }
    for (int n = 0; n <= n_max; ++n)
      rows.push_back({alpha, b.branch, b.s, n, energy(n, b.s)});
  }
  detail::sort_rows(rows);
  return rows;
}

// Admissible levels strictly below an energy cutoff (used for the
// level-counting comparison across alpha = 0).
inline std::vector<SpectrumRow> levels_below(double alpha, double cutoff) {
  const IndicialPair pair = indicial_exponents({alpha});
  std::vector<SpectrumRow> rows;
  for (const BranchExponent& b : {pair.minus, pair.plus}) {
    if (b.admissibility != Admissibility::Admissible) continue;
    for (int n = 0; energy(n, b.s) < cutoff; ++n)
      rows.push_back({alpha, b.branch, b.s, n, energy(n, b.s)});
  }
  detail::sort_rows(rows);
  return rows;
}

inline std::string rows_to_csv(const std::vector<SpectrumRow>& rows,
                               bool with_s) {
  CsvBuilder csv;
  if (with_s)
    csv.field("alpha").field("branch").field("s").field("n").field("E");
  else
    csv.field("alpha").field("branch").field("n").field("E");
  csv.end_row();
  for (const SpectrumRow& r : rows) {
    csv.field(r.alpha).field(to_string(r.branch));
    if (with_s) csv.field(r.s);
    csv.field(r.n).field(r.energy).end_row();
  }
  return csv.str();
}

inline nlohmann::json rows_to_json(const std::vector<SpectrumRow>& rows,
                                   bool with_s) {
  nlohmann::json out = nlohmann::json::array();
  for (const SpectrumRow& r : rows) {
    nlohmann::json row;
    row["alpha"] = r.alpha;
    row["branch"] = to_string(r.branch);
    if (with_s) row["s"] = r.s;
    row["n"] = r.n;
    row["E"] = r.energy;
    out.push_back(row);
  }
  return out;
}

inline std::string run_spectrum(const RunConfig& cfg) {
  const std::vector<SpectrumRow> rows =
      spectrum_levels(cfg.alpha, cfg.n_max, cfg.branch);
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "spectrum";
    out["alpha"] = cfg.alpha;
    out["rows"] = rows_to_json(rows, true);
    return out.dump(2) + "\n";
  }
  return rows_to_csv(rows, true);
}

// The alpha sample points of the figure-1 scan: the half-open range
// (alpha_min, alpha_max] with alpha_steps points, or the single point
// alpha_min when the range collapses.
inline std::vector<double> figure1_alphas(const RunConfig& cfg) {
  if (!(cfg.alpha_min >= -0.249))
    throw DomainError("figure1: alpha_min must be >= -0.249");
  if (!(cfg.alpha_max >= cfg.alpha_min))
    throw DomainError("figure1: alpha_max must be >= alpha_min");
  if (cfg.alpha_steps < 1) throw DomainError("figure1: need >= 1 steps");
  if (cfg.alpha_min == cfg.alpha_max) return {cfg.alpha_min};
  std::vector<double> alphas(cfg.alpha_steps);
  const double width = cfg.alpha_max - cfg.alpha_min;
  for (int i = 0; i < cfg.alpha_steps; ++i)
    alphas[i] = cfg.alpha_min + width * (i + 1) / cfg.alpha_steps;
  return alphas;
}

// Eigenvalue curves E_{n,s_+-}(alpha) for n = 0..n_max: both branches on
// (-1/4, 0], the plus branch alone for alpha > 0.
inline std::string run_figure1(const RunConfig& cfg) {
  const std::vector<double> alphas = figure1_alphas(cfg);
  std::vector<std::vector<SpectrumRow>> per_alpha(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    per_alpha[i] = spectrum_levels(alphas[i], cfg.n_max, BranchSelect::Both);
  });
  std::vector<SpectrumRow> rows;
  for (const auto& chunk : per_alpha)
    rows.insert(rows.end(), chunk.begin(), chunk.end());
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "figure1";
    out["rows"] = rows_to_json(rows, false);
    return out.dump(2) + "\n";
  }
  return rows_to_csv(rows, false);
}

// Ground-state eigenfunction tabulation at alpha = -0.0475 for both
// branches, next to the alpha = 0 states they deform into.
inline std::string run_figure2(const RunConfig& cfg) {
  detail::validate_grid(cfg);
  const double alpha = -0.0475;
  const IndicialPair split = indicial_exponents({alpha});
  const IndicialPair limit = indicial_exponents({0.0});
  const EigenState psi_minus = build_state(0, split.minus);
  const EigenState psi_plus = build_state(0, split.plus);
  const EigenState psi_even = build_state(0, limit.minus);
  const EigenState psi_odd = build_state(0, limit.plus);

  const double width = cfg.x_max - cfg.x_min;
  nlohmann::json json_rows = nlohmann::json::array();
  CsvBuilder csv;
  csv.field("x")
      .field("psi_minus")
      .field("psi_plus")
      .field("psi_even_ho")
      .field("psi_odd_ho")
      .end_row();
  for (int i = 0; i < cfg.points; ++i) {
    const double x = cfg.x_min + width * i / (cfg.points - 1);
    const double values[4] = {eval_state(psi_minus, x), eval_state(psi_plus, x),
                              eval_state(psi_even, x), eval_state(psi_odd, x)};
    if (cfg.format == OutputFormat::Json) {
      json_rows.push_back({{"x", x},
                           {"psi_minus", values[0]},
                           {"psi_plus", values[1]},
                           {"psi_even_ho", values[2]},
                           {"psi_odd_ho", values[3]}});
    } else {
      csv.field(x)
          .field(values[0])
          .field(values[1])
          .field(values[2])
          .field(values[3])
          .end_row();
    }
  }
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "figure2";
    out["alpha"] = alpha;
    out["rows"] = json_rows;
    return out.dump(2) + "\n";
  }
  return csv.str();
}

// Tabulate psi_{n,s} for the selected branches at one alpha.
inline std::string run_wavefn(const RunConfig& cfg) {
  detail::validate_grid(cfg);
  if (cfg.n < 0) throw DomainError("wavefn: n must be >= 0");
  const IndicialPair pair = indicial_exponents({cfg.alpha});
  std::vector<std::pair<std::string, EigenState>> columns;
  for (const BranchExponent& b : {pair.minus, pair.plus}) {
    if (!detail::selected(cfg.branch, b.branch)) continue;
    if (b.admissibility != Admissibility::Admissible) {
      if (cfg.branch != BranchSelect::Both)
        throw BranchError(std::string("wavefn: requested ") +
                          to_string(b.branch) + " branch is " +
                          to_string(b.admissibility));
      continue;
    }
    columns.emplace_back(std::string("psi_") + to_string(b.branch),
                         build_state(cfg.n, b));
  }
  if (columns.empty())
    throw BranchError("wavefn: no admissible branch selected");

  const double width = cfg.x_max - cfg.x_min;
  nlohmann::json json_rows = nlohmann::json::array();
  CsvBuilder csv;
  csv.field("x");
  for (const auto& [name, state] : columns) csv.field(name);
  csv.end_row();
  for (int i = 0; i < cfg.points; ++i) {
    const double x = cfg.x_min + width * i / (cfg.points - 1);
    if (cfg.format == OutputFormat::Json) {
      nlohmann::json row{{"x", x}};
      for (const auto& [name, state] : columns)
        row[name] = eval_state(state, x);
      json_rows.push_back(row);
    } else {
      csv.field(x);
      for (const auto& [name, state] : columns) csv.field(eval_state(state, x));
      csv.end_row();
    }
  }
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "wavefn";
    out["alpha"] = cfg.alpha;
    out["n"] = cfg.n;
    out["rows"] = json_rows;
    return out.dump(2) + "\n";
  }
  return csv.str();
}

struct VerifyCase {
  double alpha;
  Branch branch;
  double s;
  int n;
  double closed_form;
  double shooting;
  double abs_diff;
  double residual;
  bool pass;
};

struct VerifyOutcome {
  std::string output;
  bool ok;
  double max_abs_diff;
  double max_residual;
};

// Closed-form levels against the shooting oracle plus the Hamiltonian
// residual of every constructed state.  Shooting runs fan out to the
// worker pool; output assembly stays ordered.
inline VerifyOutcome run_verify(const RunConfig& cfg) {
  if (cfg.n_max < 0) throw DomainError("verify: n_max must be >= 0");
  const IndicialPair pair = indicial_exponents({cfg.alpha});

  struct Task {
    BranchExponent branch;
    std::pair<double, double> bracket;
    int n;
  };
  std::vector<Task> tasks;
  for (const BranchExponent& b : {pair.minus, pair.plus}) {
    if (!detail::selected(cfg.branch, b.branch)) continue;
    if (b.admissibility != Admissibility::Admissible) {
      if (cfg.branch != BranchSelect::Both)
        throw BranchError(std::string("verify: requested ") +
                          to_string(b.branch) + " branch is " +
                          to_string(b.admissibility));
      continue;
    }
    const auto brackets = find_brackets(cfg.alpha, b, cfg.n_max);
    for (int n = 0; n <= cfg.n_max; ++n)
      tasks.push_back({b, brackets[static_cast<std::size_t>(n)], n});
  }
  if (tasks.empty()) throw BranchError("verify: no admissible branch selected");

  std::vector<VerifyCase> cases(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& task = tasks[i];
    const ShootingResult shot = shoot_eigenvalue(
        cfg.alpha, task.branch, task.bracket.first, task.bracket.second);
    const EigenState state = build_state(task.n, task.branch);
    VerifyCase& c = cases[i];
    c.alpha = cfg.alpha;
    c.branch = task.branch.branch;
    c.s = task.branch.s;
    c.n = task.n;
    c.closed_form = state.energy;
    c.shooting = shot.energy;
    c.abs_diff = std::abs(shot.energy - state.energy);
    c.residual = residual_check(state);
    c.pass = c.abs_diff <= cfg.tol && c.residual <= cfg.tol;
  });

  VerifyOutcome outcome;
  outcome.ok = true;
  outcome.max_abs_diff = 0.0;
  outcome.max_residual = 0.0;
  for (const VerifyCase& c : cases) {
    outcome.ok = outcome.ok && c.pass;
    outcome.max_abs_diff = std::max(outcome.max_abs_diff, c.abs_diff);
    outcome.max_residual = std::max(outcome.max_residual, c.residual);
  }

  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "verify";
    out["alpha"] = cfg.alpha;
    out["tol"] = cfg.tol;
    out["all_pass"] = outcome.ok;
    out["max_abs_diff"] = outcome.max_abs_diff;
    out["max_residual"] = outcome.max_residual;
    nlohmann::json rows = nlohmann::json::array();
    for (const VerifyCase& c : cases)
      rows.push_back({{"alpha", c.alpha},
                      {"branch", to_string(c.branch)},
                      {"s", c.s},
                      {"n", c.n},
                      {"E_closed_form", c.closed_form},
                      {"E_shooting", c.shooting},
                      {"abs_diff", c.abs_diff},
                      {"residual", c.residual},
                      {"pass", c.pass}});
    out["cases"] = rows;
    outcome.output = out.dump(2) + "\n";
    return outcome;
  }

  CsvBuilder csv;
  csv.field("alpha")
      .field("branch")
      .field("s")
      .field("n")
      .field("E_closed_form")
      .field("E_shooting")
      .field("abs_diff")
      .field("residual")
      .field("pass")
      .end_row();
  for (const VerifyCase& c : cases)
    csv.field(c.alpha)
        .field(to_string(c.branch))
        .field(c.s)
        .field(c.n)
        .field(c.closed_form)
        .field(c.shooting)
        .field(c.abs_diff)
        .field(c.residual)
        .field(c.pass ? "yes" : "no")
        .end_row();
  outcome.output = csv.str() + "# max_abs_diff=" +
                   format_double(outcome.max_abs_diff) +
                   " max_residual=" + format_double(outcome.max_residual) +
                   " status=" + (outcome.ok ? "PASS" : "FAIL") + "\n";
  return outcome;
}

// Hellmann-Feynman report for the selected branches (human-readable text,
// or JSON with --format json).
inline std::string run_hft(const RunConfig& cfg) {
  const IndicialPair pair = indicial_exponents({cfg.alpha});
  std::vector<HftReport> reports;
  for (const BranchExponent& b : {pair.minus, pair.plus}) {
    if (!detail::selected(cfg.branch, b.branch)) continue;
    if (b.admissibility != Admissibility::Admissible) {
      if (cfg.branch != BranchSelect::Both)
        throw BranchError(std::string("hft: requested ") +
                          to_string(b.branch) + " branch is " +
                          to_string(b.admissibility));
      continue;
    }
    reports.push_back(hft_check(cfg.alpha, b.branch, cfg.n, cfg.dalpha));
  }
  if (reports.empty()) throw BranchError("hft: no admissible branch selected");

  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "hft";
    out["alpha"] = cfg.alpha;
    out["n"] = cfg.n;
    out["dalpha"] = cfg.dalpha;
    nlohmann::json rows = nlohmann::json::array();
    for (const HftReport& r : reports) {
      nlohmann::json row;
      row["branch"] = to_string(r.branch);
      row["dE_dalpha_analytic"] = r.dE_dalpha_analytic;
      row["dE_dalpha_finite_difference"] = r.dE_dalpha_finite_difference;
      if (r.divergent()) {
        row["half_inverse_x2"] = "divergent";
        nlohmann::json scan = nlohmann::json::array();
        for (const CutoffSample& s : r.cutoff_scan)
          scan.push_back({{"epsilon", s.epsilon}, {"integral", s.integral}});
        row["cutoff_scan"] = scan;
        row["fitted_exponent"] = *r.fitted_exponent;
      } else {
        row["half_inverse_x2"] = *r.expectation_half_inverse_x2;
      }
      rows.push_back(row);
    }
    out["reports"] = rows;
    return out.dump(2) + "\n";
  }

  std::string text;
  for (const HftReport& r : reports) {
    text += std::string("branch ") + to_string(r.branch) +
            ", n = " + std::to_string(r.n) + ", alpha = " +
            format_double(r.alpha) + "\n";
    text += "  dE/dalpha (analytic)          = " +
            format_double(r.dE_dalpha_analytic) + "\n";
    text += "  dE/dalpha (central difference) = " +
            format_double(r.dE_dalpha_finite_difference) + "\n";
    if (r.divergent()) {
      text += "  (1/2) <x^-2>                   = divergent (s < 1/2)\n";
      text += "  cutoff scan of (1/2) int_eps x^-2 psi^2 dx:\n";
      for (const CutoffSample& s : r.cutoff_scan)
        text += "    eps = " + format_double(s.epsilon) +
                "  integral = " + format_double(s.integral) + "\n";
      text += "  fitted power-law exponent      = " +
              format_double(*r.fitted_exponent) + "\n";
    } else {
      text += "  (1/2) <x^-2>                   = " +
              format_double(*r.expectation_half_inverse_x2) + "\n";
    }
  }
  return text;
}

// Appendix-style growth bound report for an off-eigenvalue energy.
inline std::string run_bounds(const RunConfig& cfg) {
  const IndicialPair pair = indicial_exponents({cfg.alpha});
  std::vector<GrowthReport> reports;
  for (const BranchExponent& b : {pair.minus, pair.plus}) {
    if (!detail::selected(cfg.branch, b.branch)) continue;
    if (b.admissibility != Admissibility::Admissible) {
      if (cfg.branch != BranchSelect::Both)
        throw BranchError(std::string("bounds: requested ") +
                          to_string(b.branch) + " branch is " +
                          to_string(b.admissibility));
      continue;
    }
    reports.push_back(
        growth_implies_nonnormalizable(cfg.alpha, b, cfg.energy_off, cfg.beta));
  }
  if (reports.empty())
    throw BranchError("bounds: no admissible branch selected");

  if (cfg.format == OutputFormat::Json) {
    nlohmann::json out;
    out["command"] = "bounds";
    out["alpha"] = cfg.alpha;
    out["energy"] = cfg.energy_off;
    out["beta"] = cfg.beta;
    nlohmann::json rows = nlohmann::json::array();
    for (const GrowthReport& r : reports) {
      nlohmann::json row;
      row["s"] = r.s;
      row["threshold_index"] = r.k;
      row["constant"] = r.constant;
      row["growing"] = r.growing;
      nlohmann::json wit = nlohmann::json::array();
      for (const GrowthWitness& w : r.witnesses)
        wit.push_back({{"x", w.x},
                       {"series_lower_bound", w.series_lower_bound},
                       {"psi_sq_lower_bound", w.psi_sq_lower_bound}});
      row["witnesses"] = wit;
      rows.push_back(row);
    }
    out["reports"] = rows;
    return out.dump(2) + "\n";
  }

  std::string text;
  for (const GrowthReport& r : reports) {
    text += "s = " + format_double(r.s) + ", E = " +
            format_double(r.energy_off) + ", beta = " + format_double(r.beta) +
            ": threshold k = " + std::to_string(r.k) +
            ", C = " + format_double(r.constant) + "\n";
    text += "  psi^2 lower-bound witnesses (grow with x when the state is "
            "not square integrable):\n";
    for (const GrowthWitness& w : r.witnesses)
      text += "    x = " + format_double(w.x) +
              "  bound = " + format_double(w.psi_sq_lower_bound) + "\n";
    text += std::string("  verdict: ") +
            (r.growing ? "growing (not square integrable)" : "inconclusive") +
            "\n";
  }
  return text;
}

}  // namespace sho::cli
