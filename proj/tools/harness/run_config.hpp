#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "minimax/problem.hpp"
#include "minimax/solvers.hpp"
#include "trace_io.hpp"

namespace minimax::harness {

/// Everything needed to reproduce one run. Unset optionals take per-problem defaults.
struct RunConfig {
  std::string problem;
  std::string solver;

  // Problem parameters.
  double w_eps = 0.01;
  double w_lambda = 5.0;
  std::optional<double> y_box;  // 0 keeps Y unconstrained
  std::optional<unsigned> seed;
  int dim_x = 4;
  int dim_y = 3;
  double modulus = 0.5;
  double radius = 10.0;
  std::vector<std::string> data_files;
  double l2 = 1e-3;

  // Solver parameters.
  double epsilon = 1e-5;
  long max_iters = 1000000;
  double l11 = 0.01;
  double l12 = 0.01;
  double l22 = 0.01;
  double mu = 0.01;
  std::optional<std::vector<double>> x0;
  std::optional<std::vector<double>> y0;
  long trace_every = 1;
  std::string terminate_on = "auto";
  std::string step_rule = "every-trial";
  std::string nc_beta = "l22";
  std::optional<double> mu_true;
  std::optional<double> s_lower;
  std::optional<double> agp_alpha, agp_alpha_power;
  std::optional<double> agp_beta, agp_beta_power;
  std::optional<double> agp_c, agp_c_power;
  bool timing = false;

  // Output.
  std::optional<std::string> output;
  TraceFormat format = TraceFormat::kCsv;
};

const std::vector<std::string>& problem_names();
const std::vector<std::string>& solver_names();

/// Thrown by parse_config when help was requested; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Parses run options (program and subcommand names excluded). A `--config FILE`
 * token loads flat key=value lines first; command-line flags override them.
 * Throws Error(kUsage) on unknown keys, bad values, missing choices or conflicts.
 */
RunConfig parse_config(const std::vector<std::string>& args, bool require_solver = true);

/// Flat key=value text as `--key=value` tokens. Blank lines and '#' comments are skipped.
std::vector<std::string> read_config_file(const std::filesystem::path& path);

MinimaxProblem build_problem(const RunConfig& config);
SolverConfig build_solver_config(const RunConfig& config, const MinimaxProblem& problem);

/// The configured trace path, or `<problem>_<solver>.<format>`.
std::filesystem::path output_path(const RunConfig& config);

/// Directory holding the bundled datasets.
std::filesystem::path data_dir();

}  // namespace minimax::harness
