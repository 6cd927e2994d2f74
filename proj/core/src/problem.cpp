#include "minimax/problem.hpp"

#include <cmath>
#include <sstream>

#include "minimax/error.hpp"

namespace minimax {

namespace {

std::string point_string(const Vector& x, const Vector& y) {
  std::ostringstream os;
  os.precision(17);
  os << "x=(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ") y=(";
  for (Eigen::Index i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
  os << ")";
  return os.str();
}

// scale (v - P(v + d / scale)); exactly -d when the projection is the identity.
Vector gap_block(const FeasibleSet& set, const Vector& v, const Vector& d, double scale) {
  if (std::holds_alternative<Unconstrained>(set.variant())) return -d;
  return scale * (v - project(set, v + d / scale));
}

void check_gap_inputs(const MinimaxProblem& problem, const Vector& x, const Vector& y,
                      double beta, double gamma) {
  if (!(beta > 0.0) || !(gamma > 0.0)) {
    throw Error(ErrorKind::kParameter, "gap step quantities beta and gamma must be positive");
  }
  if (!contains(problem.set_x, x)) {
    throw Error(ErrorKind::kFeasibility, "x outside " + problem.set_x.describe());
  }
  if (!contains(problem.set_y, y)) {
    throw Error(ErrorKind::kFeasibility, "y outside " + problem.set_y.describe());
  }
}

}  // namespace

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw Error(ErrorKind::kNumeric, std::string("non-finite ") + what);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorKind::kNumeric, std::string("non-finite ") + what);
}

void MinimaxProblem::validate() const {
  if (dim_x < 1 || dim_y < 1) throw Error(ErrorKind::kShape, name + ": dimensions must be >= 1");
  if (set_x.dimension() != dim_x || set_y.dimension() != dim_y) {
    throw Error(ErrorKind::kShape, name + ": feasible set dimensions disagree with dim_x/dim_y");
  }
  if (!value || !grad_x || !grad_y) throw Error(ErrorKind::kShape, name + ": missing oracle");
}

StationarityGap gap_from_gradients(const FeasibleSet& set_x, const FeasibleSet& set_y,
                                   const Vector& x, const Vector& y, const Vector& grad_x,
                                   const Vector& grad_y, double beta, double gamma) {
  StationarityGap gap;
  gap.gap_x = gap_block(set_x, x, -grad_x, beta);
  gap.gap_y = gap_block(set_y, y, grad_y, gamma);
  gap.norm = std::sqrt(gap.gap_x.squaredNorm() + gap.gap_y.squaredNorm());
  return gap;
}

StationarityGap stationarity_gap(const MinimaxProblem& problem, const Vector& x, const Vector& y,
                                 double beta, double gamma) {
  return regularized_gap(problem, x, y, beta, gamma, 0.0);
}

StationarityGap regularized_gap(const MinimaxProblem& problem, const Vector& x, const Vector& y,
                                double beta, double gamma, double c) {
  check_gap_inputs(problem, x, y, beta, gamma);
  if (!(c >= 0.0)) throw Error(ErrorKind::kParameter, "regularization c must be nonnegative");
  const Vector gx = problem.grad_x(x, y);
  Vector gy = problem.grad_y(x, y);
  require_finite(gx, "grad_x");
  require_finite(gy, "grad_y");
  if (c != 0.0) gy -= c * y;
  return gap_from_gradients(problem.set_x, problem.set_y, x, y, gx, gy, beta, gamma);
}

GradientCheckReport check_gradients(const MinimaxProblem& problem,
                                    const std::vector<std::pair<Vector, Vector>>& sample_points,
                                    double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::kParameter, "finite-difference step must be positive");
  GradientCheckReport report;
  report.points.reserve(sample_points.size());

  // Differences that hit a non-finite value are reported against the sample point.
  auto eval = [&](const Vector& xe, const Vector& ye, const Vector& x, const Vector& y) {
    const double v = problem.value(xe, ye);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kNumeric, "non-finite value near sample " + point_string(x, y));
    }
    return v;
  };
  auto component_error = [](double fd, double analytic) {
    return std::abs(fd - analytic) / std::max(1.0, std::abs(analytic));
  };

  for (const auto& [x, y] : sample_points) {
    const Vector gx = problem.grad_x(x, y);
    const Vector gy = problem.grad_y(x, y);
    if (!gx.allFinite() || !gy.allFinite()) {
      throw Error(ErrorKind::kNumeric, "non-finite gradient at " + point_string(x, y));
    }
    GradientCheckPoint pt{x, y, 0.0, 0.0};
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double step = h * std::max(1.0, std::abs(x[i]));
      Vector xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      const double fd = (eval(xp, y, x, y) - eval(xm, y, x, y)) / (xp[i] - xm[i]);
      pt.rel_error_x = std::max(pt.rel_error_x, component_error(fd, gx[i]));
    }
    for (Eigen::Index j = 0; j < y.size(); ++j) {
      const double step = h * std::max(1.0, std::abs(y[j]));
      Vector yp = y, ym = y;
      yp[j] += step;
      ym[j] -= step;
      const double fd = (eval(x, yp, x, y) - eval(x, ym, x, y)) / (yp[j] - ym[j]);
      pt.rel_error_y = std::max(pt.rel_error_y, component_error(fd, gy[j]));
    }
    report.max_rel_error_x = std::max(report.max_rel_error_x, pt.rel_error_x);
    report.max_rel_error_y = std::max(report.max_rel_error_y, pt.rel_error_y);
    report.points.push_back(std::move(pt));
  }
  return report;
}

}  // namespace minimax
