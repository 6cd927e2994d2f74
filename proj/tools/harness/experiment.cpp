#include "experiment.hpp"

#include <atomic>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include "minimax/projections.hpp"

namespace minimax::harness {

int exit_code(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged: return kExitConverged;
    case SolverStatus::kMaxIters:
    case SolverStatus::kStalled: return kExitNotConverged;
    case SolverStatus::kError: return kExitError;
  }
  return kExitError;
}

int exit_code(const Error& error) { return error.kind() == ErrorKind::kUsage ? kExitUsage : kExitError; }

SolverResult solve(const std::string& solver, const MinimaxProblem& problem, const SolverConfig& config) {
  if (solver == "pf-agp-nsc") return pf_agp_nsc(problem, config);
  if (solver == "pf-agp-nc") return pf_agp_nc(problem, config);
  if (solver == "pf-agp-nl") return pf_agp_nl(problem, config);
  if (solver == "rpf-agp-nsc") return r_pf_agp_nsc(problem, config);
  if (solver == "agp") return agp_baseline(problem, config);
  throw Error(ErrorKind::kUsage, "unknown solver '" + solver + "'");
}

std::string summary_line(const RunConfig& config, const SolverResult& result) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "status=%s problem=%s solver=%s iterations=%ld grad_calls=%ld f_calls=%ld gap=%.6e "
                "grad_norm=%.6e wall_ms=%.3f",
                to_string(result.status), config.problem.c_str(), result.solver.c_str(), result.iterations,
                result.grad_calls, result.f_calls, result.gap.norm, result.grad_norm, result.elapsed_ms);
  std::string line = buf;
  if (result.restarts > 0) line += " restarts=" + std::to_string(result.restarts);
  if (result.reg_gap_norm) {
    std::snprintf(buf, sizeof buf, " reg_gap=%.6e", *result.reg_gap_norm);
    line += buf;
  }
  if (!result.message.empty()) line += " message=\"" + result.message + "\"";
  return line;
}

ExperimentOutcome run_experiment(const RunConfig& config) {
  const MinimaxProblem problem = build_problem(config);
  const SolverConfig solver_config = build_solver_config(config, problem);
  ExperimentOutcome out;
  out.result = solve(config.solver, problem, solver_config);
  out.trace_path = output_path(config);
  write_trace(out.result.trace, config.format, out.trace_path);
  out.summary = summary_line(config, out.result);
  out.exit_code = exit_code(out.result.status);
  return out;
}

std::vector<BatchEntry> run_batch(std::vector<RunConfig> configs, int jobs) {
  if (jobs < 1) throw Error(ErrorKind::kUsage, "--jobs must be at least 1");
  std::set<std::filesystem::path> paths;
  for (const auto& c : configs) {
    if (!paths.insert(std::filesystem::weakly_canonical(output_path(c))).second) {
      throw Error(ErrorKind::kUsage, "two batch runs write " + output_path(c).string());
    }
  }

  std::vector<BatchEntry> entries(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) entries[i].config = std::move(configs[i]);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      BatchEntry& e = entries[i];
      try {
        e.outcome = run_experiment(e.config);
      } catch (const Error& err) {
        e.error = err.what();
        e.outcome.exit_code = exit_code(err);
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(jobs), entries.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return entries;
}

GradientCheckReport check_problem_gradients(const MinimaxProblem& problem, const GradientCheckOptions& options) {
  problem.validate();
  if (options.points < 1) throw Error(ErrorKind::kParameter, "need at least one check point");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(-options.spread, options.spread);
  std::vector<std::pair<Vector, Vector>> points;
  for (int i = 0; i < options.points; ++i) {
    Vector x(problem.dim_x), y(problem.dim_y);
    for (auto& v : x) v = dist(rng);
    for (auto& v : y) v = dist(rng);
    points.emplace_back(project(problem.set_x, x), project(problem.set_y, y));
  }
  return check_gradients(problem, points, options.h);
}

void write_plot_data(const std::vector<TraceRecord>& records, std::string_view x_column,
                     std::string_view y_column, std::ostream& out) {
  const auto xi = trace_column(x_column);
  const auto yi = trace_column(y_column);
  if (!xi) throw Error(ErrorKind::kUsage, "unknown trace column '" + std::string(x_column) + "'");
  if (!yi) throw Error(ErrorKind::kUsage, "unknown trace column '" + std::string(y_column) + "'");
  out << "# " << x_column << ' ' << y_column << '\n';
  for (const auto& rec : records) {
    const TraceRow row = to_row(rec);
    if (!row[*xi] || !row[*yi]) continue;
    out << format_real(*row[*xi]) << ' ' << format_real(*row[*yi]) << '\n';
  }
}

}  // namespace minimax::harness
