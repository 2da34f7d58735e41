// Command-line front end for the singular harmonic oscillator library.
//
// Subcommands: spectrum, wavefn, verify, hft, bounds, figure1, figure2.
// Exit codes: 0 success, 1 verification failure, 2 configuration or
// domain error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sho/cli.hpp"

namespace {

using sho::cli::BranchSelect;
using sho::cli::Command;
using sho::cli::OutputFormat;
using sho::cli::RunConfig;

void add_branch_flag(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option_function<std::string>(
         "--branch",
         [&cfg](const std::string& v) {
           if (v == "plus")
             cfg.branch = BranchSelect::Plus;
           else if (v == "minus")
             cfg.branch = BranchSelect::Minus;
           else
             cfg.branch = BranchSelect::Both;
         },
         "Branch selection: plus, minus or both (default both)")
      ->check(CLI::IsMember({"plus", "minus", "both"}));
}

void add_format_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option_function<std::string>(
         "--format",
         [&cfg](const std::string& v) {
           cfg.format = v == "json" ? OutputFormat::Json : OutputFormat::Csv;
         },
         "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", cfg.out_path, "Write output to this path");
}

void add_grid_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--x-min", cfg.x_min, "Grid start (> 0)");
  cmd->add_option("--x-max", cfg.x_max, "Grid end");
  cmd->add_option("--points", cfg.points, "Number of grid points (>= 2)");
}

int emit(const RunConfig& cfg, const std::string& output) {
  if (cfg.out_path.empty()) {
    std::cout << output;
    return 0;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file " << cfg.out_path << "\n";
    return 2;
  }
  file << output;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{
      "Spectrum and eigenfunctions of the singular harmonic oscillator "
      "V(x) = alpha/(2x^2) + x^2/2 on x > 0"};
  app.require_subcommand(1);

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "List levels E = 2n + s + 1/2 for the admissible branches");
  spectrum->add_option("--alpha", cfg.alpha, "Coupling alpha (>= -1/4)");
  spectrum->add_option("--n-max", cfg.n_max, "Largest quantum number");
  add_branch_flag(spectrum, cfg);
  add_format_flags(spectrum, cfg);

  CLI::App* wavefn = app.add_subcommand(
      "wavefn", "Tabulate the normalized eigenfunction psi_{n,s} on a grid");
  wavefn->add_option("--alpha", cfg.alpha, "Coupling alpha (>= -1/4)");
  wavefn->add_option("--n", cfg.n, "Quantum number");
  add_branch_flag(wavefn, cfg);
  add_grid_flags(wavefn, cfg);
  add_format_flags(wavefn, cfg);

  CLI::App* verify = app.add_subcommand(
      "verify",
      "Check closed-form levels against the shooting oracle and the "
      "finite-difference Hamiltonian residual");
  verify->add_option("--alpha", cfg.alpha, "Coupling alpha (>= -1/4)");
  verify->add_option("--n-max", cfg.n_max, "Largest quantum number");
  verify->add_option("--tol", cfg.tol, "Tolerance on |dE| and the residual");
  add_branch_flag(verify, cfg);
  add_format_flags(verify, cfg);

  CLI::App* hft = app.add_subcommand(
      "hft",
      "Hellmann-Feynman report: dE/dalpha vs (1/2)<x^-2>, with a cutoff "
      "scan where the expectation value diverges");
  hft->add_option("--alpha", cfg.alpha, "Coupling alpha (> -1/4)");
  hft->add_option("--n", cfg.n, "Quantum number");
  hft->add_option("--dalpha", cfg.dalpha, "Central-difference step");
  add_branch_flag(hft, cfg);
  add_format_flags(hft, cfg);

  CLI::App* bounds = app.add_subcommand(
      "bounds",
      "Exponential lower bound on an off-eigenvalue series and growth "
      "witnesses at x = 3, 4, 5");
  bounds->add_option("--alpha", cfg.alpha, "Coupling alpha (>= -1/4)");
  bounds->add_option("--energy", cfg.energy_off, "Off-eigenvalue energy");
  bounds->add_option("--beta", cfg.beta, "Comparison exponent in (1/2, 1)");
  add_branch_flag(bounds, cfg);
  add_format_flags(bounds, cfg);

  CLI::App* figure1 = app.add_subcommand(
      "figure1", "Eigenvalue curves over an alpha range (both branches)");
  figure1->add_option("--alpha-min", cfg.alpha_min, "Scan start (>= -0.249)");
  figure1->add_option("--alpha-max", cfg.alpha_max, "Scan end");
  figure1->add_option("--alpha-steps", cfg.alpha_steps, "Sample count");
  figure1->add_option("--n-max", cfg.n_max, "Largest quantum number");
  add_format_flags(figure1, cfg);

  CLI::App* figure2 = app.add_subcommand(
      "figure2",
      "Ground-state eigenfunctions at alpha = -0.0475 next to the alpha = 0 "
      "states");
  add_grid_flags(figure2, cfg);
  add_format_flags(figure2, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return emit(cfg, sho::cli::run_spectrum(cfg));
    if (wavefn->parsed()) return emit(cfg, sho::cli::run_wavefn(cfg));
    if (hft->parsed()) return emit(cfg, sho::cli::run_hft(cfg));
    if (bounds->parsed()) return emit(cfg, sho::cli::run_bounds(cfg));
    if (figure1->parsed()) return emit(cfg, sho::cli::run_figure1(cfg));
    if (figure2->parsed()) return emit(cfg, sho::cli::run_figure2(cfg));
    if (verify->parsed()) {
      const sho::cli::VerifyOutcome outcome = sho::cli::run_verify(cfg);
      const int write_status = emit(cfg, outcome.output);
      if (write_status != 0) return write_status;
      return outcome.ok ? 0 : 1;
    }
  } catch (const sho::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}
