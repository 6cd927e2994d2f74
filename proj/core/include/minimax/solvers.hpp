#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "minimax/backtracking.hpp"
#include "minimax/problem.hpp"

namespace minimax {

enum class SolverStatus { kConverged, kMaxIters, kStalled, kError };

/// Quantity compared against epsilon at every outer iteration.
enum class TerminationMetric {
  kGap,             // ||grad G(x_k, y_k)|| with the iteration's step quantities
  kGradientNorm,    // ||(grad_x f, grad_y f)(x_k, y_k)||, unprojected
  kRegularizedGap,  // gap of f - (c_k/2)||y||^2 (same as kGap when c_k = 0)
};

/// When step quantities are refreshed from the estimates.
enum class StepRule {
  kEveryTrial,  // at every trial, including the first trial of each iteration
  kPrinted,     // first trial reuses the previous accepted quantities
};

/// Denominator of the second beta term in the nonconvex-concave solver.
enum class NcBetaVariant {
  kPreviousL22,  // previous accepted l22
  kPreviousL12,  // previous accepted l12
};

/// value(k) = scale / k^power.
struct PowerSchedule {
  double scale = 0.0;
  double power = 0.0;
  double at(long k) const { return power == 0.0 ? scale : scale / std::pow(static_cast<double>(k), power); }
};

struct SolverConfig {
  double epsilon = 1e-5;
  long max_outer_iters = 1'000'000;
  double l11 = 0.01;
  double l12 = 0.01;
  double l22 = 0.01;
  double mu = 0.01;
  /// Starting point; empty means the origin. Projected onto X x Y before iteration 1.
  Vector x0;
  Vector y0;
  long trace_every = 1;
  TerminationMetric terminate_on = TerminationMetric::kGap;
  StepRule step_rule = StepRule::kEveryTrial;
  NcBetaVariant nc_beta = NcBetaVariant::kPreviousL22;
  /// Fill TraceRecord::elapsed_ms. Off by default so traces are reproducible bit for bit.
  bool record_time = false;

  // Restarted solver: strong-concavity modulus and a lower bound on min_x max_y f.
  std::optional<double> mu_true;
  std::optional<double> s_lower;

  // Fixed-step baseline: x step alpha_x(k), y step beta_y(k), regularization c(k).
  PowerSchedule agp_step_x{0.1, 0.0};
  PowerSchedule agp_step_y{0.1, 0.0};
  PowerSchedule agp_c{0.0, 0.0};
};

struct TraceRecord {
  long k = 0;
  long grad_calls = 0;
  long f_calls = 0;
  std::optional<long> trials;
  std::optional<double> l11, l12, l22, mu;
  std::optional<double> beta, gamma, c, d;
  double f_value = 0.0;
  double gap_norm = 0.0;
  double gap_x_norm = 0.0;
  double gap_y_norm = 0.0;
  std::optional<double> reg_gap_norm;
  std::optional<double> elapsed_ms;

  // Diagnostics kept in memory only; not part of the trace file schema.
  double grad_norm = 0.0;
  std::optional<double> rho;
  std::optional<int> stage;
  ConditionValues conditions;
  int l11_doublings = 0;
  int l12_doublings = 0;
  int l22_doublings = 0;
  int mu_halvings = 0;
};

/// Counts of runtime-checked properties that failed. All zero on a healthy run.
struct InvariantReport {
  long descent_violations = 0;     // f(x_{k+1}, y_k) - f(x_k, y_k) <= -(beta - l11/2)||dx||^2
  long gamma_decreases = 0;        // gamma_k nondecreasing
  long estimate_order_violations = 0;  // l's nondecreasing, mu nonincreasing
  long beta_bound_violations = 0;  // beta - l11/2 - l12^2/c >= rho^2/c
};

struct SolverResult {
  SolverStatus status = SolverStatus::kError;
  std::string solver;
  std::string message;
  Vector x;
  Vector y;
  StationarityGap gap;
  std::optional<double> reg_gap_norm;
  double grad_norm = 0.0;
  long iterations = 0;
  long grad_calls = 0;
  long f_calls = 0;
  int restarts = 0;
  double elapsed_ms = 0.0;
  EstimateState estimates;
  InvariantReport invariants;
  std::vector<TraceRecord> trace;
};

const char* to_string(SolverStatus status);

/// Backtracking alternating gradient projection for nonconvex-strongly concave problems.
SolverResult pf_agp_nsc(const MinimaxProblem& problem, const SolverConfig& config);

/// Backtracking variant for nonconvex-concave problems, using f - (c_k/2)||y||^2 in the y-step.
SolverResult pf_agp_nc(const MinimaxProblem& problem, const SolverConfig& config);

/// Nonconvex-linear problems: backtracking x-step, exact regularized y-maximization.
SolverResult pf_agp_nl(const MinimaxProblem& problem, const SolverConfig& config);

/**
 * argmax_{y in Y} f(x, y) - (c/2)||y||^2 - (d/2)||y - y_k||^2 for f linear in y,
 * i.e. P_Y((g + d y_k) / (c + d)) with g = grad_y f(x, .).
 */
Vector inner_max_regularized(const MinimaxProblem& problem, const Vector& x, const Vector& y_k,
                             double c, double d);

/// Restarted fixed-step variant; needs config.mu_true and config.s_lower.
SolverResult r_pf_agp_nsc(const MinimaxProblem& problem, const SolverConfig& config);

/// Alternating gradient projection with caller-supplied step schedules.
SolverResult agp_baseline(const MinimaxProblem& problem, const SolverConfig& config);

/// Stage quantities of the restarted solver for estimate l and modulus mu.
struct RestartStage {
  double l = 0.0;
  double beta = 0.0;   // y step 1/beta
  double alpha = 0.0;  // x step 1/alpha
  double eta = 0.0;
  double d1 = 0.0;
  double budget = 0.0;  // inner iteration budget; <= 0 means none
};
RestartStage restart_stage(double l, double mu, double s1, double s_lower, double epsilon);

/// max_{y in Y} f(x, y) by projected gradient ascent with a doubling step estimate.
struct BestResponse {
  Vector y;
  double value = 0.0;
  long grad_calls = 0;
  long f_calls = 0;
  long iterations = 0;
};
BestResponse best_response(const MinimaxProblem& problem, const Vector& x, const Vector& y_start,
                           double l_start, double tolerance = 1e-8, long max_iters = 1'000'000);

}  // namespace minimax
