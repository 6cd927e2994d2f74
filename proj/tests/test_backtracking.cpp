#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "minimax/backtracking.hpp"
#include "minimax/error.hpp"
#include "minimax/problems.hpp"
#include "oracles/oracles.hpp"

using namespace minimax;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

// One-dimensional problem from f and its partial derivatives.
MinimaxProblem scalar_problem(std::function<double(double, double)> f, std::function<double(double, double)> fx,
                              std::function<double(double, double)> fy) {
  MinimaxProblem p;
  p.name = "scalar";
  p.dim_x = 1;
  p.dim_y = 1;
  p.value = [f](const Vector& x, const Vector& y) { return f(x(0), y(0)); };
  p.grad_x = [fx](const Vector& x, const Vector& y) { return scalar(fx(x(0), y(0))); };
  p.grad_y = [fy](const Vector& x, const Vector& y) { return scalar(fy(x(0), y(0))); };
  p.set_x = FeasibleSet::unconstrained(1);
  p.set_y = FeasibleSet::unconstrained(1);
  return p;
}

MinimaxProblem x_squared() {
  return scalar_problem([](double x, double) { return x * x; }, [](double x, double) { return 2.0 * x; },
                        [](double, double) { return 0.0; });
}

MinimaxProblem coupling(double k) {
  return scalar_problem([k](double x, double y) { return k * x * y; }, [k](double, double y) { return k * y; },
                        [k](double x, double) { return k * x; });
}

MinimaxProblem concave_y(double a) {
  return scalar_problem([a](double, double y) { return -0.5 * a * y * y; }, [](double, double) { return 0.0; },
                        [a](double, double y) { return -a * y; });
}

MinimaxProblem linear_y(double slope) {
  return scalar_problem([slope](double x, double y) { return slope * x * y + x * x; },
                        [slope](double x, double y) { return slope * y + 2.0 * x; },
                        [slope](double x, double) { return slope * x; });
}

}  // namespace

TEST(Sgn, Examples) {
  EXPECT_EQ(sgn(0.5), 1);
  EXPECT_EQ(sgn(0.0), -1);
  EXPECT_EQ(sgn(-0.0), -1);
  EXPECT_EQ(sgn(-3.0), -1);
  EXPECT_EQ(sgn(1e-300), 1);
}

TEST(EvalC1, Examples) {
  const MinimaxProblem p = x_squared();
  EXPECT_EQ(eval_c1(p, scalar(1.0), scalar(0.0), scalar(0.5), 2.0), 0.0);
  EXPECT_EQ(eval_c1(p, scalar(1.0), scalar(0.0), scalar(1.0), 2.0), 0.0);
  EXPECT_DOUBLE_EQ(eval_c1(p, scalar(1.0), scalar(0.0), scalar(0.5), 1.0), 0.125);
}

TEST(EvalC2, Examples) {
  EXPECT_EQ(eval_c2(coupling(1.0), scalar(0.0), scalar(0.0), scalar(1.0), 1.0), 0.0);
  EXPECT_EQ(eval_c2(coupling(1.0), scalar(0.3), scalar(0.0), scalar(0.3), 1.0), 0.0);
  EXPECT_EQ(eval_c2(coupling(2.0), scalar(0.0), scalar(0.0), scalar(1.0), 1.0), 1.0);
}

TEST(EvalC3, Examples) {
  const double a = 0.8;
  const MinimaxProblem p = concave_y(a);
  const Vector yk = scalar(0.5), yt = scalar(-0.25);
  const double dy2 = 0.75 * 0.75;
  EXPECT_NEAR(eval_c3(p, scalar(0.0), yk, yt, a), 0.0, 1e-15);
  EXPECT_EQ(eval_c3(p, scalar(0.0), yk, yk, a), 0.0);
  EXPECT_NEAR(eval_c3(p, scalar(0.0), yk, yt, a / 2.0), a * a / 2.0 * dy2, 1e-15);
}

TEST(EvalC4, Examples) {
  const double a = 0.8;
  const MinimaxProblem p = concave_y(a);
  const Vector yk = scalar(0.5), yt = scalar(-0.25);
  const double dy2 = 0.75 * 0.75;
  EXPECT_NEAR(eval_c4(p, scalar(0.0), yk, yt, a), 0.0, 1e-15);
  EXPECT_EQ(eval_c4(p, scalar(0.0), yk, yk, a), 0.0);
  EXPECT_NEAR(eval_c4(p, scalar(0.0), yk, yt, 2.0 * a), a * dy2, 1e-15);
}

TEST(EvalC5, ZeroCIsBitwiseC3) {
  const MinimaxProblem p = make_quadratic_oracle(random_quadratic_spec(3, 3, 0.7, 4));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const Vector x = oracles::random_vector(rng, 3);
    const Vector yk = oracles::random_vector(rng, 3);
    const Vector yt = oracles::random_vector(rng, 3);
    EXPECT_EQ(eval_c5(p, x, yk, yt, 0.9, 0.0), eval_c3(p, x, yk, yt, 0.9));
  }
}

TEST(EvalC5, LinearInYIsAcceptedWhenL22CoversC) {
  const MinimaxProblem p = linear_y(1.7);
  const Vector yk = scalar(0.4), yt = scalar(-1.1);
  const double dy2 = 1.5 * 1.5;
  for (double c : {0.1, 0.5, 2.0}) {
    for (double l22 : {c, 2.0 * c, 10.0}) {
      const double v = eval_c5(p, scalar(0.3), yk, yt, l22, c);
      EXPECT_NEAR(v, -(l22 + c) * c * dy2 + c * c * dy2, 1e-13);
      EXPECT_LE(v, 1e-13);
    }
  }
  EXPECT_EQ(eval_c5(p, scalar(0.3), yk, yk, 1.0, 0.5), 0.0);
}

TEST(EvalConditions, PrecomputedFormsAgree) {
  const MinimaxProblem p = make_quadratic_oracle(random_quadratic_spec(3, 2, 0.5, 12));
  std::mt19937_64 rng(14);
  for (int i = 0; i < 20; ++i) {
    const Vector xk = oracles::random_vector(rng, 3), xt = oracles::random_vector(rng, 3);
    const Vector yk = oracles::random_vector(rng, 2), yt = oracles::random_vector(rng, 2);
    const Vector gyt_x = p.grad_y(xt, yk), gyt_xy = p.grad_y(xt, yt);
    EXPECT_EQ(c1_from(p.value(xt, yk), p.value(xk, yk), p.grad_x(xk, yk), xt - xk, 1.5),
              eval_c1(p, xk, yk, xt, 1.5));
    EXPECT_EQ(c2_from(gyt_x, p.grad_y(xk, yk), xt - xk, 0.7), eval_c2(p, xk, yk, xt, 0.7));
    EXPECT_EQ(c3_from(gyt_xy, gyt_x, yt - yk, 0.3), eval_c3(p, xt, yk, yt, 0.3));
    EXPECT_EQ(c4_from(gyt_xy, gyt_x, yt - yk, 0.3), eval_c4(p, xt, yk, yt, 0.3));
    EXPECT_EQ(c5_from(gyt_xy, gyt_x, yt, yk, 0.3, 0.2), eval_c5(p, xt, yk, yt, 0.3, 0.2));
  }
}

TEST(EvalConditions, NonFiniteOracleIsNumericError) {
  MinimaxProblem p = x_squared();
  p.value = [](const Vector& x, const Vector&) { return x(0) > 0.7 ? INFINITY : 0.0; };
  try {
    (void)eval_c1(p, scalar(0.0), scalar(0.0), scalar(1.0), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNumeric);
  }
  p = coupling(1.0);
  p.grad_y = [](const Vector&, const Vector&) { return scalar(NAN); };
  EXPECT_THROW((void)eval_c3(p, scalar(0.0), scalar(0.0), scalar(1.0), 1.0), Error);
}

TEST(UpdateEstimate, Examples) {
  EXPECT_EQ(update_estimate_up(0.01, 0.3), 0.02);
  EXPECT_EQ(update_estimate_up(0.01, 0.0), 0.01);
  EXPECT_EQ(update_estimate_up(1.0, -5.0), 1.0);
  EXPECT_EQ(update_estimate_down(0.01, 1.0), 0.005);
  EXPECT_EQ(update_estimate_down(0.01, 0.0), 0.01);
  EXPECT_EQ(update_estimate_down(2.0, -0.1), 2.0);
}

TEST(UpdateEstimate, OnlyExactFactors) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double l = std::abs(d(rng)) + 1e-3;
    const double v = d(rng);
    const double up = update_estimate_up(l, v);
    const double down = update_estimate_down(l, v);
    EXPECT_TRUE(up == l || up == 2.0 * l);
    EXPECT_TRUE(down == l || down == 0.5 * l);
    EXPECT_EQ(up == 2.0 * l, v > 0.0);
    EXPECT_EQ(down == 0.5 * l, v > 0.0);
  }
}

TEST(AcceptanceTolerance, ScalesWithObjective) {
  EXPECT_DOUBLE_EQ(acceptance_tolerance(0.0), 1e-12);
  EXPECT_DOUBLE_EQ(acceptance_tolerance(-3.0), 4e-12);
}

TEST(EstimateState, DefaultsArePositive) {
  const EstimateState s;
  EXPECT_EQ(s.l11, 0.01);
  EXPECT_EQ(s.l12, 0.01);
  EXPECT_EQ(s.l22, 0.01);
  EXPECT_EQ(s.mu, 0.01);
}

// Whenever the estimates reach the true constants the conditions hold, which is
// what bounds the accepted estimates by twice the constants.
TEST(Conditions, HoldAtTrueConstantsOnQuadraticOracle) {
  const QuadraticOracleSpec spec = random_quadratic_spec(4, 3, 0.6, 31);
  const MinimaxProblem p = make_quadratic_oracle(spec);
  const double l11 = oracles::spectral_norm(spec.q);
  const double l12 = oracles::spectral_norm(spec.b);
  const double a = spec.a;
  std::mt19937_64 rng(32);
  for (int i = 0; i < 500; ++i) {
    const Vector xk = oracles::random_vector(rng, 4, 3.0), xt = oracles::random_vector(rng, 4, 3.0);
    const Vector yk = oracles::random_vector(rng, 3, 3.0), yt = oracles::random_vector(rng, 3, 3.0);
    const double tol = acceptance_tolerance(p.value(xk, yk)) * 10.0;
    EXPECT_LE(eval_c1(p, xk, yk, xt, l11 * (1.0 + 1e-12)), tol);
    EXPECT_LE(eval_c2(p, xk, yk, xt, l12 * (1.0 + 1e-12)), tol);
    EXPECT_LE(eval_c3(p, xt, yk, yt, a), tol);
    EXPECT_LE(eval_c4(p, xt, yk, yt, a), tol);
  }
}
