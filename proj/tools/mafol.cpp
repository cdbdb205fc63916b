// mafol: command-line driver for Monge-Ampere foliation checks on polynomial
// potentials. See `mafol --help`.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mafol/commands.hpp"

int main(int argc, char** argv) {
  using namespace mafol;

  CLI::App app{"Levi-form, Monge-Ampere and foliation checks for polynomial potentials"};
  app.footer(std::string(csv_columns_help()) +
             "Exit codes: 0 ok, 1 check failure, 2 input/usage error.");
  app.require_subcommand(1);

  ScanConfig cfg;
  bool serial = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed (printed in every report)");
    sub->add_option("--samples", cfg.samples, "random sample count")->check(CLI::PositiveNumber);
    sub->add_option("--grid-samples", cfg.samples_per_axis,
                    "use a cell-centred grid with this many points per real axis instead")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--box", cfg.box_radius, "half-width of the sampling cube")->check(CLI::PositiveNumber);
    sub->add_option("--tol-rank", cfg.tol_rank, "relative eigenvalue tolerance for rank decisions")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<double>(
           "--tol-ma", [&](double v) { cfg.tol_ma = v; cfg.tol_ma_set = true; },
           "Monge-Ampere residual threshold (analyze/suite 1e-9, burns 1e-8)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--step", cfg.step, "RK4 step size")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out_dir, "directory for CSV output");
    sub->add_flag("--serial", serial, "disable OpenMP and use the serial reference kernels");
  };

  std::string file;
  auto* analyze = app.add_subcommand("analyze", "Levi data, strata and MA/Euler residuals on samples");
  analyze->add_option("potential", file, "potential file")->required();
  add_common(analyze);

  TraceOptions topts;
  auto* trace = app.add_subcommand("trace", "trace a foliation leaf f(t+is) and check its flow laws");
  trace->add_option("potential", file, "potential file")->required();
  trace->add_option("--point", topts.point, "base point, e.g. 1,1 or 1+0.5i,-2i")->required();
  trace->add_option("--t-max", topts.t_max, "largest t");
  trace->add_option("--t-count", topts.t_count, "number of t nodes in [0, t-max]");
  trace->add_option("--s-max", topts.s_max, "largest s");
  trace->add_option("--s-count", topts.s_count, "number of s nodes in [0, s-max]");
  add_common(trace);

  auto* weights = app.add_subcommand("weights", "recover weighted-homogeneity weights");
  weights->add_option("potential", file, "potential file")->required();
  add_common(weights);

  bool burns_csv = false;
  auto* burns = app.add_subcommand("burns", "bidegree-(k,k) check for homogeneous potentials");
  burns->add_option("potential", file, "potential file")->required();
  burns->add_option("--grid", cfg.burns_grid, "grid points per real axis (grid has grid^(2n) points)")
      ->check(CLI::PositiveNumber);
  burns->add_flag("--csv", burns_csv, "write per-grid-point residuals to burns_grid.csv");
  add_common(burns);

  std::string dir;
  auto* suite = app.add_subcommand("suite", "run the invariant suite over a directory of *.pot files");
  suite->add_option("directory", dir, "corpus directory")->required();
  suite->add_option("--grid", cfg.burns_grid, "Burns grid points per axis (capped at 2e5 points)")
      ->check(CLI::PositiveNumber);
  add_common(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kInputError;
  }

  if (serial) cfg.exec = Execution::Serial;

  try {
    if (*analyze) return cmd_analyze(file, cfg, std::cout, std::cerr);
    if (*trace) return cmd_trace(file, topts, cfg, std::cout, std::cerr);
    if (*weights) return cmd_weights(file, cfg, std::cout, std::cerr);
    if (*burns) {
      if (burns->count("--box") == 0) cfg.box_radius = 1.0;
      return cmd_burns(file, cfg, burns_csv, std::cout, std::cerr);
    }
    if (*suite) return cmd_suite(dir, cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return exit_code::kInputError;
}
