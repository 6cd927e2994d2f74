#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minimax/problem.hpp"

namespace minimax {

// ---------------------------------------------------------------------------
// Synthetic nonconvex-strongly concave problem
//   f(x, y) = w(x3) - y1^2/40 + x1 y1 - 5 y2^2/2 + x2 y2
// with a C^1 piecewise-cubic w whose origin is a strict saddle.
// ---------------------------------------------------------------------------

struct SyntheticParams {
  double eps = 0.01;
  double lambda = 5.0;
  /// Half-width of a box around y; unset keeps Y = R^2.
  std::optional<double> y_box;
};

struct ValueAndDerivative {
  double value;
  double derivative;
};

/// w and w'. Breakpoints are -lambda sqrt(eps), -sqrt(eps), 0, sqrt(eps), lambda sqrt(eps);
/// a point on a breakpoint takes the branch to its left.
ValueAndDerivative w_eval(double x, const SyntheticParams& params);

/// Breakpoints of w in increasing order.
std::vector<double> w_breakpoints(const SyntheticParams& params);

MinimaxProblem make_synthetic(const SyntheticParams& params = {});

// ---------------------------------------------------------------------------
// Dirac-GAN: L(x, y) = -log(1 + exp(-x y)) + log 2, unique stationary point (0, 0).
// ---------------------------------------------------------------------------

/// y is restricted to [-y_box, y_box]; unset keeps Y = R.
MinimaxProblem make_dirac_gan(std::optional<double> y_box = 10.0);

// ---------------------------------------------------------------------------
// Robust learning over M domains: min_x max_{y in simplex} sum_m y_m f_m(x).
// ---------------------------------------------------------------------------

struct DomainLoss {
  std::string name;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

struct RobustDomainsSpec {
  int dim_x = 0;
  std::vector<DomainLoss> domains;
  /// Defaults to R^dim_x.
  std::optional<FeasibleSet> set_x;
};

MinimaxProblem make_robust_domains(const RobustDomainsSpec& spec);

/// f_m(x) = 1/2 ||x - target||^2.
DomainLoss quadratic_domain(Vector target);

/// Three planar quadratic domains used by the acceptance suite and the CLI.
RobustDomainsSpec three_quadratic_domains();

/// Labelled samples: one row per sample.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  int num_classes() const;
};

/**
 * Reads a plain-text table, one sample per line: comma-separated features,
 * then an integer label >= 0. Blank lines and lines starting with '#' are skipped.
 * Throws Error(kIo) if unreadable and Error(kShape) on ragged or malformed rows.
 */
Dataset load_dataset(const std::filesystem::path& path);

/**
 * Mean multinomial logistic loss plus (l2/2)||x||^2. x stacks one weight row
 * (features + bias) per class, so dim_x = classes * (features + 1).
 */
DomainLoss logistic_domain(Dataset data, int num_classes, double l2 = 1e-3, std::string name = {});

/// One logistic domain per file; all files must agree on the feature count.
RobustDomainsSpec logistic_domains(const std::vector<std::filesystem::path>& files, double l2 = 1e-3);

// ---------------------------------------------------------------------------
// Quadratic oracle with known constants:
//   f = 1/2 x'Qx + x'By - (a/2)||y||^2 on balls,
//   L11 = ||Q||_2, L12 = ||B||_2, L22 = mu = a.
// ---------------------------------------------------------------------------

struct QuadraticOracleSpec {
  Eigen::MatrixXd q;
  Eigen::MatrixXd b;
  double a = 1.0;
  double radius_x = 10.0;
  double radius_y = 10.0;
};

MinimaxProblem make_quadratic_oracle(const QuadraticOracleSpec& spec);

/// Q = diag(2, -2), B = I, a = 0.5.
QuadraticOracleSpec reference_quadratic_spec();

/// Symmetric indefinite Q and dense B with entries drawn from `seed`.
QuadraticOracleSpec random_quadratic_spec(int n, int m, double a, unsigned seed);

}  // namespace minimax
