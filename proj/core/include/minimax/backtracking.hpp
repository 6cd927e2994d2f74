#pragma once

#include <optional>

#include "minimax/problem.hpp"

namespace minimax {

/// +1 if x > 0, -1 otherwise (so sgn(0) == -1).
int sgn(double x);

/// Running smoothness / strong-concavity estimates of one solver run.
struct EstimateState {
  double l11 = 0.01;
  double l12 = 0.01;
  double l22 = 0.01;
  double mu = 0.01;
  int trial_index = 0;

  int l11_doublings = 0;
  int l12_doublings = 0;
  int l22_doublings = 0;
  int mu_halvings = 0;
};

/// Condition values of one backtracking trial; absent entries were not evaluated.
struct ConditionValues {
  std::optional<double> c1, c2, c3, c4, c5;
};

/**
 * Descent-lemma test on x:
 *   f(x_trial, y_k) - f(x_k, y_k) - <grad_x f(x_k, y_k), x_trial - x_k> - (l11/2)||x_trial - x_k||^2.
 */
double eval_c1(const MinimaxProblem& problem, const Vector& x_k, const Vector& y_k,
               const Vector& x_trial, double l11);

/// ||grad_y f(x_trial, y_k) - grad_y f(x_k, y_k)|| - l12 ||x_trial - x_k||.
double eval_c2(const MinimaxProblem& problem, const Vector& x_k, const Vector& y_k,
               const Vector& x_trial, double l12);

/**
 * Cocoercivity test of the l22 estimate, with g = grad_y f(x_trial, y_trial) - grad_y f(x_trial, y_k):
 *   l22 <g, y_trial - y_k> + ||g||^2.
 * The second gradient is taken at y_k; the same-argument difference would vanish identically.
 */
double eval_c3(const MinimaxProblem& problem, const Vector& x_trial, const Vector& y_k,
               const Vector& y_trial, double l22);

/// <g, y_trial - y_k> + mu ||y_trial - y_k||^2 with g as in eval_c3.
double eval_c4(const MinimaxProblem& problem, const Vector& x_trial, const Vector& y_k,
               const Vector& y_trial, double mu);

/// eval_c3 applied to f - (c/2)||y||^2, with (l22 + c) in place of l22.
double eval_c5(const MinimaxProblem& problem, const Vector& x_trial, const Vector& y_k,
               const Vector& y_trial, double l22, double c);

// Same conditions from precomputed quantities; these are what the solvers call.
double c1_from(double f_trial, double f_base, const Vector& grad_x_base, const Vector& dx,
               double l11);
double c2_from(const Vector& grad_y_trial_x, const Vector& grad_y_base, const Vector& dx,
               double l12);
double c3_from(const Vector& grad_y_trial_xy, const Vector& grad_y_trial_x, const Vector& dy,
               double l22);
double c4_from(const Vector& grad_y_trial_xy, const Vector& grad_y_trial_x, const Vector& dy,
               double mu);
double c5_from(const Vector& grad_y_trial_xy, const Vector& grad_y_trial_x, const Vector& y_trial,
               const Vector& y_k, double l22, double c);

/// ((sgn(c_value) + 3) / 2) * l: doubles on a violated condition.
double update_estimate_up(double l, double c_value);

/// (2 / (sgn(c4_value) + 3)) * mu: halves on a violated condition.
double update_estimate_down(double mu, double c4_value);

/// Slack below which a condition counts as satisfied: 1e-12 (1 + |f(x_k, y_k)|).
double acceptance_tolerance(double f_base);

/// Inner trials allowed per outer iteration before the run is declared stalled.
inline constexpr int kMaxBacktrackingTrials = 200;

}  // namespace minimax
