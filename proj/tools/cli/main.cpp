#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "minimax/error.hpp"
#include "run_config.hpp"
#include "trace_io.hpp"

namespace {

using namespace minimax;
using namespace minimax::harness;

constexpr const char* kUsage =
    "usage: minimax [run] --problem P --solver S [options]\n"
    "       minimax batch CONFIG... [--jobs N]\n"
    "       minimax check-gradients --problem P [--points N] [--tol T]\n"
    "       minimax plot-data --trace FILE [--x COL] [--y COL] [-o FILE]\n"
    "Run `minimax run --help` for run options.\n";

std::string choices() {
  std::string s = "problems:";
  for (const auto& p : problem_names()) s += " " + p;
  s += "\nsolvers:";
  for (const auto& p : solver_names()) s += " " + p;
  return s + "\n";
}

int cmd_run(const std::vector<std::string>& args) {
  const RunConfig config = parse_config(args);
  const ExperimentOutcome out = run_experiment(config);
  std::cout << out.summary << " trace=" << out.trace_path.string() << '\n';
  return out.exit_code;
}

int cmd_batch(const std::vector<std::string>& args) {
  CLI::App app{"Run several config files, each a flat key=value list of run options", "batch"};
  std::vector<std::string> files;
  int jobs = 1;
  app.add_option("configs", files, "Config files")->required()->check(CLI::ExistingFile);
  app.add_option("--jobs,-j", jobs, "Concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitConverged;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::kUsage, e.what());
  }

  std::vector<RunConfig> configs;
  for (const auto& f : files) configs.push_back(parse_config({"--config", f}));
  int worst = kExitConverged;
  for (const auto& e : run_batch(std::move(configs), jobs)) {
    if (e.error.empty()) {
      std::cout << e.outcome.summary << " trace=" << e.outcome.trace_path.string() << '\n';
    } else {
      std::cerr << "minimax: " << e.config.problem << "/" << e.config.solver << ": " << e.error << '\n';
    }
    worst = std::max(worst, e.outcome.exit_code);
  }
  return worst;
}

int cmd_check_gradients(const std::vector<std::string>& args) {
  CLI::App app{"Compare analytic gradients with central differences", "check-gradients"};
  GradientCheckOptions options;
  double tol = 1e-5;
  app.allow_extras();
  app.set_help_flag();
  app.add_option("--points", options.points, "Random sample points")->capture_default_str();
  app.add_option("--spread", options.spread, "Sample from [-spread, spread] before projecting")->capture_default_str();
  app.add_option("--sample-seed", options.seed, "Sampling seed")->capture_default_str();
  app.add_option("--h", options.h, "Relative difference step")->capture_default_str();
  app.add_option("--tol", tol, "Pass threshold on the relative error")->capture_default_str();
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::kUsage, e.what());
  }

  const RunConfig config = parse_config(app.remaining(), /*require_solver=*/false);
  const MinimaxProblem problem = build_problem(config);
  const GradientCheckReport report = check_problem_gradients(problem, options);
  const bool pass = report.max_rel_error() <= tol;
  std::cout << (pass ? "pass" : "FAIL") << " problem=" << problem.name << " points=" << options.points
            << " max_rel_error_x=" << report.max_rel_error_x << " max_rel_error_y=" << report.max_rel_error_y
            << " tol=" << tol << '\n';
  return pass ? kExitConverged : kExitCheckFailed;
}

int cmd_plot_data(const std::vector<std::string>& args) {
  CLI::App app{"Extract two trace columns as gnuplot-ready text", "plot-data"};
  std::string trace, x_col = "k", y_col = "gap_norm", output;
  app.add_option("--trace", trace, "CSV trace file")->required();
  app.add_option("--x", x_col, "Abscissa column")->capture_default_str();
  app.add_option("--y", y_col, "Ordinate column")->capture_default_str();
  app.add_option("--output,-o", output, "Output file (default stdout)");
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitConverged;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::kUsage, e.what());
  }

  const auto records = read_trace_csv(trace);
  if (output.empty()) {
    write_plot_data(records, x_col, y_col, std::cout);
  } else {
    std::ofstream out(output);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + output);
    write_plot_data(records, x_col, y_col, out);
  }
  return kExitConverged;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cerr << "minimax: choose a problem and a solver\n" << kUsage << choices();
    return kExitUsage;
  }
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    std::cout << kUsage << choices();
    return kExitConverged;
  }

  std::string command = "run";
  if (args[0] == "run" || args[0] == "batch" || args[0] == "check-gradients" || args[0] == "plot-data") {
    command = args[0];
    args.erase(args.begin());
  }

  try {
    if (command == "batch") return cmd_batch(args);
    if (command == "check-gradients") return cmd_check_gradients(args);
    if (command == "plot-data") return cmd_plot_data(args);
    return cmd_run(args);
  } catch (const HelpRequested& help) {
    std::cout << help.what() << choices();
    return kExitConverged;
  } catch (const Error& e) {
    std::cerr << "minimax: " << e.what() << '\n';
    if (e.kind() == ErrorKind::kUsage) std::cerr << kUsage << choices();
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "minimax: " << e.what() << '\n';
    return kExitError;
  }
}
