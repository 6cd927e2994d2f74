#include "minimax/projections.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "minimax/error.hpp"

namespace minimax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dimension(const FeasibleSet& set, const Vector& v) {
  if (v.size() != set.dimension()) {
    std::ostringstream os;
    os << "point of dimension " << v.size() << " for " << set.describe();
    throw Error(ErrorKind::kShape, os.str());
  }
}

}  // namespace

FeasibleSet FeasibleSet::unconstrained(int dimension) {
  if (dimension < 1) throw Error(ErrorKind::kShape, "unconstrained set needs dimension >= 1");
  return FeasibleSet(Unconstrained{dimension});
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    throw Error(ErrorKind::kShape, "box bounds must be nonempty and of equal length");
  }
  if ((lower.array() > upper.array()).any()) {
    throw Error(ErrorKind::kParameter, "box requires lower <= upper componentwise");
  }
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::box(int dimension, double lower, double upper) {
  if (dimension < 1) throw Error(ErrorKind::kShape, "box needs dimension >= 1");
  return box(Vector::Constant(dimension, lower), Vector::Constant(dimension, upper));
}

FeasibleSet FeasibleSet::ball(Vector center, double radius) {
  if (center.size() < 1) throw Error(ErrorKind::kShape, "ball needs dimension >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::kParameter, "ball radius must be positive and finite");
  }
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::simplex(int dimension) {
  if (dimension < 1) throw Error(ErrorKind::kShape, "simplex needs dimension >= 1");
  return FeasibleSet(Simplex{dimension});
}

int FeasibleSet::dimension() const {
  return std::visit(overloaded{
                        [](const Unconstrained& s) { return s.dimension; },
                        [](const Box& s) { return static_cast<int>(s.lower.size()); },
                        [](const Ball& s) { return static_cast<int>(s.center.size()); },
                        [](const Simplex& s) { return s.dimension; },
                    },
                    set_);
}

std::string FeasibleSet::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Unconstrained& s) { os << "unconstrained(" << s.dimension << ")"; },
                 [&](const Box& s) { os << "box(" << s.lower.size() << ")"; },
                 [&](const Ball& s) { os << "ball(" << s.center.size() << ", r=" << s.radius << ")"; },
                 [&](const Simplex& s) { os << "simplex(" << s.dimension << ")"; },
             },
             set_);
  return os.str();
}

namespace detail {

Vector project_simplex(const Vector& v, double total) {
  const Eigen::Index n = v.size();
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());

  // Largest rho with sorted[rho] - (cumsum_rho - total) / (rho + 1) > 0.
  double cumsum = 0.0;
  double threshold = (sorted[0] - total);
  for (Eigen::Index i = 0; i < n; ++i) {
    cumsum += sorted[i];
    const double t = (cumsum - total) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) threshold = t;
  }
  return (v.array() - threshold).cwiseMax(0.0).matrix();
}

}  // namespace detail

Vector project(const FeasibleSet& set, const Vector& v) {
  require_dimension(set, v);
  return std::visit(overloaded{
                        [&](const Unconstrained&) -> Vector { return v; },
                        [&](const Box& s) -> Vector {
                          return v.cwiseMax(s.lower).cwiseMin(s.upper);
                        },
                        [&](const Ball& s) -> Vector {
                          const Vector offset = v - s.center;
                          const double dist = offset.norm();
                          if (dist <= s.radius) return v;
                          return s.center + (s.radius / dist) * offset;
                        },
                        [&](const Simplex&) -> Vector { return detail::project_simplex(v); },
                    },
                    set.variant());
}

double diameter(const FeasibleSet& set) {
  return std::visit(overloaded{
                        [](const Unconstrained&) { return std::numeric_limits<double>::infinity(); },
                        [](const Box& s) { return (s.upper - s.lower).norm(); },
                        [](const Ball& s) { return 2.0 * s.radius; },
                        // Vertices e_i, e_j are the farthest pair; a 1-simplex is a point.
                        [](const Simplex& s) { return s.dimension >= 2 ? std::sqrt(2.0) : 0.0; },
                    },
                    set.variant());
}

double max_norm(const FeasibleSet& set) {
  return std::visit(overloaded{
                        [](const Unconstrained&) { return std::numeric_limits<double>::infinity(); },
                        [](const Box& s) {
                          return s.lower.cwiseAbs().cwiseMax(s.upper.cwiseAbs()).norm();
                        },
                        [](const Ball& s) { return s.center.norm() + s.radius; },
                        [](const Simplex&) { return 1.0; },
                    },
                    set.variant());
}

bool contains(const FeasibleSet& set, const Vector& v, double tol) {
  if (v.size() != set.dimension() || !v.allFinite()) return false;
  return (project(set, v) - v).norm() <= tol * (1.0 + v.norm());
}

}  // namespace minimax
