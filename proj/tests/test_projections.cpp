#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "minimax/error.hpp"
#include "minimax/projections.hpp"
#include "oracles/oracles.hpp"

using minimax::Error;
using minimax::ErrorKind;
using minimax::FeasibleSet;
using minimax::Vector;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::vector<FeasibleSet> variants() {
  return {
      FeasibleSet::unconstrained(4),
      FeasibleSet::box(vec({-1.0, 0.0, -2.0, 0.5}), vec({1.0, 0.0, 3.0, 2.0})),
      FeasibleSet::ball(vec({0.5, -1.0, 0.0, 2.0}), 1.5),
      FeasibleSet::simplex(4),
  };
}

}  // namespace

TEST(Project, SimplexFeasiblePointIsFixed) {
  const Vector p = project(FeasibleSet::simplex(3), vec({1.0, 0.0, 0.0}));
  EXPECT_EQ(p, vec({1.0, 0.0, 0.0}));
}

TEST(Project, SimplexThreshold) {
  const Vector p = project(FeasibleSet::simplex(3), vec({0.5, 0.5, 1.0}));
  EXPECT_NEAR(p(0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(p(1), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(p(2), 2.0 / 3.0, 1e-15);
  EXPECT_LE((p - oracles::brute_force_simplex(vec({0.5, 0.5, 1.0}))).norm(), 1e-12);
}

TEST(Project, BallRadialScaling) {
  const Vector p = project(FeasibleSet::ball(Vector::Zero(2), 1.0), vec({3.0, 4.0}));
  EXPECT_NEAR(p(0), 0.6, 1e-15);
  EXPECT_NEAR(p(1), 0.8, 1e-15);
}

TEST(Project, BoxClampsComponentwise) {
  const FeasibleSet box = FeasibleSet::box(vec({0.0, -1.0}), vec({1.0, 1.0}));
  EXPECT_EQ(project(box, vec({2.0, -3.0})), vec({1.0, -1.0}));
  EXPECT_EQ(project(box, vec({0.25, 0.5})), vec({0.25, 0.5}));
}

TEST(Project, UnconstrainedIsIdentity) {
  const Vector v = vec({1e300, -3.0, 0.0});
  EXPECT_EQ(project(FeasibleSet::unconstrained(3), v), v);
}

TEST(Project, DimensionMismatchIsShapeError) {
  for (const auto& set : variants()) {
    try {
      (void)project(set, Vector::Zero(3));
      FAIL() << "expected a shape error for " << set.describe();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kShape);
    }
  }
}

TEST(Project, SimplexTiesAreBenign) {
  const Vector p = project(FeasibleSet::simplex(4), vec({0.3, 0.3, 0.3, 0.3}));
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(p(i), 0.25, 1e-15);
  const Vector q = project(FeasibleSet::simplex(4), vec({2.0, 2.0, -1.0, -1.0}));
  EXPECT_NEAR(q(0), 0.5, 1e-15);
  EXPECT_NEAR(q(1), 0.5, 1e-15);
  EXPECT_EQ(q(2), 0.0);
  EXPECT_EQ(q(3), 0.0);
}

TEST(Project, SimplexDimensionOne) {
  EXPECT_EQ(project(FeasibleSet::simplex(1), vec({-7.0})), vec({1.0}));
}

TEST(Project, SimplexMatchesBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(2, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = dim(rng);
    const Vector v = oracles::random_vector(rng, m, 3.0);
    const Vector p = project(FeasibleSet::simplex(m), v);
    EXPECT_LE((p - oracles::brute_force_simplex(v)).norm(), 1e-9) << "trial " << trial;
  }
}

TEST(Diameter, Examples) {
  EXPECT_DOUBLE_EQ(diameter(FeasibleSet::ball(Vector::Zero(3), 5.0)), 10.0);
  for (int m = 2; m <= 6; ++m) EXPECT_DOUBLE_EQ(diameter(FeasibleSet::simplex(m)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(diameter(FeasibleSet::box(Vector::Zero(2), Vector::Ones(2))), std::sqrt(2.0));
  EXPECT_EQ(diameter(FeasibleSet::unconstrained(2)), std::numeric_limits<double>::infinity());
  EXPECT_EQ(diameter(FeasibleSet::simplex(1)), 0.0);
}

TEST(Diameter, SimplexEqualsLargestVertexDistance) {
  for (int m = 2; m <= 6; ++m) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) best = std::max(best, (id.col(i) - id.col(j)).norm());
    }
    EXPECT_DOUBLE_EQ(diameter(FeasibleSet::simplex(m)), best);
  }
}

TEST(FeasibleSetFactory, RejectsInvalidParameters) {
  EXPECT_THROW((void)FeasibleSet::box(vec({1.0}), vec({0.0})), Error);
  EXPECT_THROW((void)FeasibleSet::box(vec({0.0, 0.0}), vec({1.0})), Error);
  EXPECT_THROW((void)FeasibleSet::ball(Vector::Zero(2), 0.0), Error);
  EXPECT_THROW((void)FeasibleSet::ball(Vector::Zero(2), -1.0), Error);
  EXPECT_THROW((void)FeasibleSet::simplex(0), Error);
  EXPECT_THROW((void)FeasibleSet::unconstrained(0), Error);
}

TEST(FeasibleSetFactory, Boundedness) {
  EXPECT_FALSE(FeasibleSet::unconstrained(2).bounded());
  EXPECT_TRUE(FeasibleSet::box(2, -1.0, 1.0).bounded());
  EXPECT_TRUE(FeasibleSet::ball(Vector::Zero(2), 1.0).bounded());
  EXPECT_TRUE(FeasibleSet::simplex(2).bounded());
}

TEST(Contains, AgreesWithProjection) {
  EXPECT_TRUE(contains(FeasibleSet::simplex(3), vec({0.2, 0.3, 0.5})));
  EXPECT_FALSE(contains(FeasibleSet::simplex(3), vec({0.2, 0.3, 0.6})));
  EXPECT_TRUE(contains(FeasibleSet::ball(Vector::Zero(2), 1.0), vec({0.6, 0.8})));
  EXPECT_FALSE(contains(FeasibleSet::ball(Vector::Zero(2), 1.0), vec({0.6, 0.81})));
}

class ProjectionProperties : public ::testing::TestWithParam<int> {};

TEST_P(ProjectionProperties, IdempotentNonExpansiveVariational) {
  const FeasibleSet set = variants()[static_cast<std::size_t>(GetParam())];
  std::mt19937_64 rng(100 + GetParam());
  const Eigen::Index n = set.dimension();
  for (int s = 0; s < 1000; ++s) {
    const Vector u = oracles::random_vector(rng, n, 4.0);
    const Vector v = oracles::random_vector(rng, n, 4.0);
    const Vector pu = project(set, u);
    const Vector pv = project(set, v);
    EXPECT_LE((project(set, pu) - pu).norm(), 1e-12 * (1.0 + pu.norm())) << set.describe();
    EXPECT_LE((pu - pv).norm(), (u - v).norm() + 1e-12) << set.describe();
    if (s < 100) {
      for (int t = 0; t < 100; ++t) {
        const Vector w = project(set, oracles::random_vector(rng, n, 4.0));
        EXPECT_LE((u - pu).dot(w - pu), 1e-10) << set.describe();
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(AllVariants, ProjectionProperties, ::testing::Values(0, 1, 2, 3));
