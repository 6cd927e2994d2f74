#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "minimax/error.hpp"
#include "minimax/problem.hpp"
#include "minimax/solvers.hpp"
#include "run_config.hpp"

namespace minimax::harness {

/// Process exit codes.
enum ExitCode : int {
  kExitConverged = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNotConverged = 3,
  kExitError = 4,
};

int exit_code(SolverStatus status);
int exit_code(const Error& error);

/// Dispatches on a solver name from solver_names().
SolverResult solve(const std::string& solver, const MinimaxProblem& problem, const SolverConfig& config);

struct ExperimentOutcome {
  SolverResult result;
  std::filesystem::path trace_path;
  std::string summary;
  int exit_code = kExitError;
};

/// One line: status, iterations, gradient calls, final gap and wall time.
std::string summary_line(const RunConfig& config, const SolverResult& result);

/// Builds the problem, runs the solver and writes the trace file.
ExperimentOutcome run_experiment(const RunConfig& config);

struct BatchEntry {
  RunConfig config;
  ExperimentOutcome outcome;
  std::string error;  // set when the run threw instead of returning
};

/**
 * Runs independent configurations on up to `jobs` threads. Results keep input order.
 * Throws Error(kUsage) if two runs would write the same trace file.
 */
std::vector<BatchEntry> run_batch(std::vector<RunConfig> configs, int jobs);

struct GradientCheckOptions {
  int points = 20;
  double spread = 2.0;
  unsigned seed = 1;
  double h = 1e-6;
};

/// Checks the oracles at random feasible points drawn from [-spread, spread] and projected.
GradientCheckReport check_problem_gradients(const MinimaxProblem& problem, const GradientCheckOptions& options);

/// Writes `x y` pairs from two trace columns, skipping records where either is empty.
void write_plot_data(const std::vector<TraceRecord>& records, std::string_view x_column,
                     std::string_view y_column, std::ostream& out);

}  // namespace minimax::harness
