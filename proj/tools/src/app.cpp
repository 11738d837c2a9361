#include <CLI11.hpp>

#include <ostream>

#include "commands.hpp"

namespace kmono::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Least-squares estimation of k-monotone discrete distributions", "kmono"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kmono 0.1.0");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Fit the k-monotone least-squares estimator");
  fit->add_option("--input", fit_args.input, "Input file")->required();
  fit->add_option("--format", fit_args.format, "Input format")
      ->check(CLI::IsMember({"counts", "samples"}));
  fit->add_option("--k", fit_args.k, "Monotony degree")->required()->check(CLI::Range(1u, 64u));
  fit->add_option("--mode", fit_args.mode,
                  "prob: k-monotone pmfs; seq: k-monotone sequences (cone)")
      ->check(CLI::IsMember({"prob", "seq"}));
  fit->add_option("--out", fit_args.out, "Write the JSON result here");
  fit->add_option("--tol", fit_args.tol, "Directional derivative tolerance")
      ->check(CLI::PositiveNumber);

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Test k-monotony and list k-knots");
  check->add_option("--input", check_args.input, "Input file")->required();
  check->add_option("--k", check_args.k, "Monotony degree")->required()->check(CLI::Range(1u, 64u));
  check->add_option("--format", check_args.format,
                    "values: one real per line; counts or samples: empirical pmf")
      ->check(CLI::IsMember({"values", "counts", "samples"}));

  BasisArgs basis_args;
  auto* basis = app.add_subcommand("basis", "Print the spline sequence and its mass");
  basis->add_option("--k", basis_args.k, "Degree")->required()->check(CLI::Range(1u, 64u));
  basis->add_option("--j", basis_args.j, "Knot")->required();

  unsigned lmax = 5;
  auto* thresholds = app.add_subcommand("thresholds", "Poisson k-monotony thresholds");
  thresholds->add_option("--lmax", lmax, "Largest degree")->check(CLI::Range(1u, 10u));

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the Monte Carlo grid");
  auto* config = simulate->add_option("--config", sim.config, "JSON grid description");
  auto* target = simulate->add_option("--target", sim.targets,
                                      "spline:J:L or poisson:LAMBDA (repeatable)");
  auto* ns = simulate->add_option("--n", sim.ns, "Sample sizes (repeatable)");
  auto* ks = simulate->add_option("--k", sim.ks, "Degrees (repeatable)");
  simulate->add_option("--modes", sim.modes, "prob, seq, empirical")
      ->check(CLI::IsMember({"prob", "seq", "empirical"}));
  simulate->add_option("--reps", sim.reps, "Replications per cell")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--threads", sim.threads, "Worker threads (0: all cores)");
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();
  simulate->add_flag("--full", sim.full, "Add n = 1e4 and 1e5 to the grid");
  config->excludes(target)->excludes(ns)->excludes(ks);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    // help and version requests exit 0; everything else is a usage error
    return app.exit(e, out, err) == 0 ? kOk : kParseError;
  }

  if (fit->parsed()) return cmd_fit(fit_args, out, err);
  if (check->parsed()) return cmd_check(check_args, out, err);
  if (basis->parsed()) return cmd_basis(basis_args, out, err);
  if (thresholds->parsed()) return cmd_thresholds(lmax, out, err);
  return cmd_simulate(sim, out, err);
}

}  // namespace kmono::cli
