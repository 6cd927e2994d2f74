#include "solver_common.hpp"

#include <cmath>

namespace minimax {

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::kConverged: return "converged";
    case SolverStatus::kMaxIters: return "max_iters";
    case SolverStatus::kStalled: return "stalled";
    case SolverStatus::kError: return "error";
  }
  return "unknown";
}

namespace internal {

namespace {

Vector start_point(const Vector& given, const FeasibleSet& set, const char* which) {
  Vector v = given.size() == 0 ? Vector::Zero(set.dimension()) : given;
  if (v.size() != set.dimension()) {
    throw Error(ErrorKind::kShape, std::string("initial ") + which + " has dimension " +
                                       std::to_string(v.size()) + ", expected " +
                                       std::to_string(set.dimension()));
  }
  require_finite(v, which);
  return project(set, v);
}

}  // namespace

RunContext::RunContext(const MinimaxProblem& problem, const SolverConfig& config,
                       std::string solver, bool needs_bounded_y)
    : problem_(problem), config_(config), oracle_(problem), start_(std::chrono::steady_clock::now()) {
  problem.validate();
  if (!(config.epsilon > 0.0)) throw Error(ErrorKind::kParameter, "epsilon must be positive");
  if (config.max_outer_iters < 1) throw Error(ErrorKind::kParameter, "max_outer_iters must be >= 1");
  if (config.trace_every < 1) throw Error(ErrorKind::kParameter, "trace_every must be >= 1");
  if (!(config.l11 > 0.0) || !(config.l12 > 0.0) || !(config.l22 > 0.0) || !(config.mu > 0.0)) {
    throw Error(ErrorKind::kParameter, "initial estimates must be positive");
  }
  if (needs_bounded_y && !problem.set_y.bounded()) {
    throw Error(ErrorKind::kUnbounded,
                solver + " needs a compact Y; " + problem.name + " has " + problem.set_y.describe());
  }
  x0_ = start_point(config.x0, problem.set_x, "x0");
  y0_ = start_point(config.y0, problem.set_y, "y0");
  result_.solver = std::move(solver);
}

double RunContext::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
      .count();
}

void RunContext::record(TraceRecord rec, bool force) {
  rec.grad_calls = oracle_.grad_calls();
  rec.f_calls = oracle_.f_calls();
  if (config_.record_time) rec.elapsed_ms = elapsed_ms();
  const bool scheduled = rec.k == 1 || rec.k % config_.trace_every == 0;
  if (scheduled || force) {
    result_.trace.push_back(rec);
    last_recorded_ = true;
  } else {
    last_recorded_ = false;
  }
  last_ = std::move(rec);
}

double RunContext::metric(const TraceRecord& rec) const {
  switch (config_.terminate_on) {
    case TerminationMetric::kGap: return rec.gap_norm;
    case TerminationMetric::kGradientNorm: return rec.grad_norm;
    case TerminationMetric::kRegularizedGap: return rec.reg_gap_norm.value_or(rec.gap_norm);
  }
  return rec.gap_norm;
}

bool RunContext::finish_iteration(TraceRecord rec, const Vector& x, const Vector& y,
                                  const StationarityGap& gap) {
  const double m = metric(rec);
  const bool converged = m <= config_.epsilon;
  const bool out_of_budget = rec.k >= config_.max_outer_iters;
  const long k = rec.k;
  const std::optional<double> reg = rec.reg_gap_norm;
  const double grad_norm = rec.grad_norm;
  record(std::move(rec), converged || out_of_budget);
  result_.iterations = k;
  if (!converged && !out_of_budget) return false;
  result_.x = x;
  result_.y = y;
  result_.gap = gap;
  result_.reg_gap_norm = reg;
  result_.grad_norm = grad_norm;
  result_.status = converged ? SolverStatus::kConverged : SolverStatus::kMaxIters;
  return true;
}

SolverResult RunContext::finish(SolverStatus status, std::string message) {
  if (status != SolverStatus::kConverged && status != SolverStatus::kMaxIters) {
    result_.status = status;
    if (!last_recorded_ && last_.k > 0) result_.trace.push_back(last_);
  }
  result_.message = std::move(message);
  result_.grad_calls = oracle_.grad_calls();
  result_.f_calls = oracle_.f_calls();
  result_.elapsed_ms = elapsed_ms();
  return std::move(result_);
}

void copy_estimates(const EstimateState& est, TraceRecord& rec, bool with_mu) {
  rec.l11 = est.l11;
  rec.l12 = est.l12;
  rec.l22 = est.l22;
  if (with_mu) rec.mu = est.mu;
  rec.l11_doublings = est.l11_doublings;
  rec.l12_doublings = est.l12_doublings;
  rec.l22_doublings = est.l22_doublings;
  rec.mu_halvings = est.mu_halvings;
}

}  // namespace internal
}  // namespace minimax
