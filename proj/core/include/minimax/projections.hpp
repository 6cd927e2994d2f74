#pragma once

#include <Eigen/Core>

#include <string>
#include <variant>

namespace minimax {

using Vector = Eigen::VectorXd;

/// The whole of R^n. Projection is the identity.
struct Unconstrained {
  int dimension = 1;
};

/// Axis-aligned box lower <= v <= upper.
struct Box {
  Vector lower;
  Vector upper;
};

/// Closed Euclidean ball.
struct Ball {
  Vector center;
  double radius = 1.0;
};

/// Probability simplex {v >= 0, sum v = 1}.
struct Simplex {
  int dimension = 1;
};

/**
 * A closed convex set with an exact Euclidean projection.
 *
 * Construct through the factory functions, which validate the variant's
 * invariants (lower <= upper, radius > 0, dimension >= 1) and throw
 * Error(kShape / kParameter) otherwise.
 */
class FeasibleSet {
 public:
  using Variant = std::variant<Unconstrained, Box, Ball, Simplex>;

  static FeasibleSet unconstrained(int dimension);
  static FeasibleSet box(Vector lower, Vector upper);
  static FeasibleSet box(int dimension, double lower, double upper);
  static FeasibleSet ball(Vector center, double radius);
  static FeasibleSet simplex(int dimension);

  int dimension() const;
  bool bounded() const { return !std::holds_alternative<Unconstrained>(set_); }
  const Variant& variant() const { return set_; }
  std::string describe() const;

 private:
  explicit FeasibleSet(Variant set) : set_(std::move(set)) {}
  Variant set_;
};

/// Euclidean nearest point of `set` to `v`. Throws Error(kShape) on a dimension mismatch.
Vector project(const FeasibleSet& set, const Vector& v);

/// max ||u - w|| over the set; +infinity when unconstrained.
double diameter(const FeasibleSet& set);

/// max ||v|| over the set; +infinity when unconstrained.
double max_norm(const FeasibleSet& set);

/// True when ||project(v) - v|| <= tol * (1 + ||v||).
bool contains(const FeasibleSet& set, const Vector& v, double tol = 1e-9);

namespace detail {
// Sort-and-threshold projection onto {v >= 0, sum v = total}.
Vector project_simplex(const Vector& v, double total = 1.0);
}  // namespace detail

}  // namespace minimax
