#include "minimax/backtracking.hpp"

#include <cmath>

#include "minimax/error.hpp"

namespace minimax {

int sgn(double x) { return x > 0.0 ? 1 : -1; }

double c1_from(double f_trial, double f_base, const Vector& grad_x_base, const Vector& dx,
               double l11) {
  return f_trial - f_base - grad_x_base.dot(dx) - 0.5 * l11 * dx.squaredNorm();
}

double c2_from(const Vector& grad_y_trial_x, const Vector& grad_y_base, const Vector& dx,
               double l12) {
  return (grad_y_trial_x - grad_y_base).norm() - l12 * dx.norm();
}

double c3_from(const Vector& grad_y_trial_xy, const Vector& grad_y_trial_x, const Vector& dy,
               double l22) {
  const Vector g = grad_y_trial_xy - grad_y_trial_x;
  return l22 * g.dot(dy) + g.squaredNorm();
}

double c4_from(const Vector& grad_y_trial_xy, const Vector& grad_y_trial_x, const Vector& dy,
               double mu) {
  const Vector g = grad_y_trial_xy - grad_y_trial_x;
  return g.dot(dy) + mu * dy.squaredNorm();
}

double c5_from(const Vector& grad_y_trial_xy, const Vector& grad_y_trial_x, const Vector& y_trial,
               const Vector& y_k, double l22, double c) {
  const Vector dy = y_trial - y_k;
  if (c == 0.0) return c3_from(grad_y_trial_xy, grad_y_trial_x, dy, l22);
  const Vector g = (grad_y_trial_xy - c * y_trial) - (grad_y_trial_x - c * y_k);
  return (l22 + c) * g.dot(dy) + g.squaredNorm();
}

double eval_c1(const MinimaxProblem& problem, const Vector& x_k, const Vector& y_k,
               const Vector& x_trial, double l11) {
  const double f_base = problem.value(x_k, y_k);
  const double f_trial = problem.value(x_trial, y_k);
  const Vector gx = problem.grad_x(x_k, y_k);
  require_finite(f_base, "value");
  require_finite(f_trial, "value");
  require_finite(gx, "grad_x");
  return c1_from(f_trial, f_base, gx, x_trial - x_k, l11);
}

double eval_c2(const MinimaxProblem& problem, const Vector& x_k, const Vector& y_k,
               const Vector& x_trial, double l12) {
  const Vector g_base = problem.grad_y(x_k, y_k);
  const Vector g_trial = problem.grad_y(x_trial, y_k);
  require_finite(g_base, "grad_y");
  require_finite(g_trial, "grad_y");
  return c2_from(g_trial, g_base, x_trial - x_k, l12);
}

namespace {

std::pair<Vector, Vector> y_pair(const MinimaxProblem& problem, const Vector& x_trial,
                                 const Vector& y_k, const Vector& y_trial) {
  Vector at_trial = problem.grad_y(x_trial, y_trial);
  Vector at_base = problem.grad_y(x_trial, y_k);
  require_finite(at_trial, "grad_y");
  require_finite(at_base, "grad_y");
  return {std::move(at_trial), std::move(at_base)};
}

}  // namespace

double eval_c3(const MinimaxProblem& problem, const Vector& x_trial, const Vector& y_k,
               const Vector& y_trial, double l22) {
  const auto [g_trial, g_base] = y_pair(problem, x_trial, y_k, y_trial);
  return c3_from(g_trial, g_base, y_trial - y_k, l22);
}

double eval_c4(const MinimaxProblem& problem, const Vector& x_trial, const Vector& y_k,
               const Vector& y_trial, double mu) {
  const auto [g_trial, g_base] = y_pair(problem, x_trial, y_k, y_trial);
  return c4_from(g_trial, g_base, y_trial - y_k, mu);
}

double eval_c5(const MinimaxProblem& problem, const Vector& x_trial, const Vector& y_k,
               const Vector& y_trial, double l22, double c) {
  if (!(c >= 0.0)) throw Error(ErrorKind::kParameter, "regularization c must be nonnegative");
  const auto [g_trial, g_base] = y_pair(problem, x_trial, y_k, y_trial);
  return c5_from(g_trial, g_base, y_trial, y_k, l22, c);
}

double update_estimate_up(double l, double c_value) {
  return (sgn(c_value) + 3) / 2.0 * l;
}

double update_estimate_down(double mu, double c4_value) {
  return 2.0 / (sgn(c4_value) + 3) * mu;
}

double acceptance_tolerance(double f_base) { return 1e-12 * (1.0 + std::abs(f_base)); }

}  // namespace minimax
