#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minimax/projections.hpp"

namespace minimax {

/// Smoothness and strong-concavity constants, when known analytically.
struct KnownConstants {
  double l11 = 0.0;
  double l12 = 0.0;
  double l22 = 0.0;
  double mu = 0.0;
};

/**
 * min_{x in X} max_{y in Y} f(x, y) through value and partial-gradient oracles.
 *
 * Oracles must be pure: identical inputs give bitwise-identical outputs and
 * no oracle mutates shared state, so one problem may be evaluated from
 * several threads.
 */
struct MinimaxProblem {
  using ValueFn = std::function<double(const Vector& x, const Vector& y)>;
  using GradFn = std::function<Vector(const Vector& x, const Vector& y)>;

  std::string name;
  int dim_x = 0;
  int dim_y = 0;
  ValueFn value;
  GradFn grad_x;
  GradFn grad_y;
  FeasibleSet set_x = FeasibleSet::unconstrained(1);
  FeasibleSet set_y = FeasibleSet::unconstrained(1);
  /// grad_y(x, .) does not depend on y.
  bool linear_in_y = false;
  std::optional<KnownConstants> known_constants;

  /// Throws Error(kShape) when the dimensions, sets and oracles disagree.
  void validate() const;
};

struct StationarityGap {
  Vector gap_x;
  Vector gap_y;
  double norm = 0.0;
  double norm_x() const { return gap_x.norm(); }
  double norm_y() const { return gap_y.norm(); }
};

/**
 * Projected-gradient stationarity measure
 *   gap_x = beta  (x - P_X(x - grad_x / beta)),
 *   gap_y = gamma (y - P_Y(y + grad_y / gamma)).
 * It vanishes exactly at the projection fixed points.
 */
StationarityGap stationarity_gap(const MinimaxProblem& problem, const Vector& x, const Vector& y,
                                 double beta, double gamma);

/// Same measure for f(x, y) - (c/2)||y||^2.
StationarityGap regularized_gap(const MinimaxProblem& problem, const Vector& x, const Vector& y,
                                double beta, double gamma, double c);

/// Gap from gradients that have already been evaluated. No feasibility checks.
StationarityGap gap_from_gradients(const FeasibleSet& set_x, const FeasibleSet& set_y,
                                   const Vector& x, const Vector& y, const Vector& grad_x,
                                   const Vector& grad_y, double beta, double gamma);

struct GradientCheckPoint {
  Vector x;
  Vector y;
  double rel_error_x = 0.0;
  double rel_error_y = 0.0;
};

struct GradientCheckReport {
  double max_rel_error_x = 0.0;
  double max_rel_error_y = 0.0;
  std::vector<GradientCheckPoint> points;
  double max_rel_error() const { return std::max(max_rel_error_x, max_rel_error_y); }
};

/**
 * Compares grad_x / grad_y against central differences of `value`.
 *
 * Coordinate i uses the step h_i = h * max(1, |v_i|). The error of one
 * component is |fd - analytic| / max(1, |analytic|). Points are not
 * projected; sets are ignored. Throws Error(kNumeric) naming the point if an
 * oracle returns a non-finite value.
 */
GradientCheckReport check_gradients(const MinimaxProblem& problem,
                                    const std::vector<std::pair<Vector, Vector>>& sample_points,
                                    double h = 1e-6);

/// Throws Error(kNumeric) if `v` has a non-finite entry.
void require_finite(const Vector& v, const char* what);
void require_finite(double v, const char* what);

}  // namespace minimax
