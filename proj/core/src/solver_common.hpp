#pragma once

#include <chrono>
#include <string>

#include "minimax/error.hpp"
#include "minimax/solvers.hpp"

namespace minimax::internal {

/// Oracle access with call accounting and finiteness checks.
class CountingOracle {
 public:
  explicit CountingOracle(const MinimaxProblem& problem) : problem_(problem) {}

  Vector grad_x(const Vector& x, const Vector& y) {
    ++grad_calls_;
    Vector g = problem_.grad_x(x, y);
    require_finite(g, "grad_x");
    return g;
  }
  Vector grad_y(const Vector& x, const Vector& y) {
    ++grad_calls_;
    Vector g = problem_.grad_y(x, y);
    require_finite(g, "grad_y");
    return g;
  }
  double value(const Vector& x, const Vector& y) {
    ++f_calls_;
    const double v = problem_.value(x, y);
    require_finite(v, "objective value");
    return v;
  }

  long grad_calls() const { return grad_calls_; }
  long f_calls() const { return f_calls_; }
  void charge(long grad_calls, long f_calls) {
    grad_calls_ += grad_calls;
    f_calls_ += f_calls;
  }

 private:
  const MinimaxProblem& problem_;
  long grad_calls_ = 0;
  long f_calls_ = 0;
};

/// Bookkeeping shared by every solver: validation, start point, trace, termination.
class RunContext {
 public:
  RunContext(const MinimaxProblem& problem, const SolverConfig& config, std::string solver,
             bool needs_bounded_y);

  const MinimaxProblem& problem() const { return problem_; }
  const SolverConfig& config() const { return config_; }
  CountingOracle& oracle() { return oracle_; }
  const Vector& x0() const { return x0_; }
  const Vector& y0() const { return y0_; }
  SolverResult& result() { return result_; }

  double elapsed_ms() const;

  /// Completes `rec` (counters, timing) and appends it when the trace schedule asks for it.
  void record(TraceRecord rec, bool force);

  /// Value of the configured termination metric.
  double metric(const TraceRecord& rec) const;

  /**
   * Applies the termination test to iteration `rec.k` evaluated at (x, y).
   * Returns true when the run is over; the result then holds (x, y) and its status.
   */
  bool finish_iteration(TraceRecord rec, const Vector& x, const Vector& y,
                        const StationarityGap& gap);

  SolverResult finish(SolverStatus status, std::string message = {});

 private:
  const MinimaxProblem& problem_;
  const SolverConfig& config_;
  CountingOracle oracle_;
  Vector x0_;
  Vector y0_;
  std::chrono::steady_clock::time_point start_;
  SolverResult result_;
  bool last_recorded_ = false;
  TraceRecord last_;
};

/// Doubling / halving with the acceptance slack folded into the sign test.
inline double grow(double l, double value, double tol, int& counter) {
  const double next = update_estimate_up(l, value - tol);
  if (next > l) ++counter;
  return next;
}

inline double shrink(double mu, double value, double tol, int& counter) {
  const double next = update_estimate_down(mu, value - tol);
  if (next < mu) ++counter;
  return next;
}

void copy_estimates(const EstimateState& est, TraceRecord& rec, bool with_mu);

}  // namespace minimax::internal
