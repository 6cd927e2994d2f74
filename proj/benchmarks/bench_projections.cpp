#include <benchmark/benchmark.h>

#include <random>

#include "minimax/projections.hpp"

using namespace minimax;

namespace {

Vector random_input(Eigen::Index n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> d(0.0, 2.0);
  Vector v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

void BM_ProjectSimplex(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const FeasibleSet set = FeasibleSet::simplex(n);
  const Vector v = random_input(n);
  for (auto _ : state) benchmark::DoNotOptimize(project(set, v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectSimplex)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity(benchmark::oNLogN);

void BM_ProjectBall(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const FeasibleSet set = FeasibleSet::ball(Vector::Zero(n), 1.0);
  const Vector v = random_input(n);
  for (auto _ : state) benchmark::DoNotOptimize(project(set, v));
}
BENCHMARK(BM_ProjectBall)->RangeMultiplier(8)->Range(8, 1 << 15);

void BM_ProjectBox(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const FeasibleSet set = FeasibleSet::box(n, -1.0, 1.0);
  const Vector v = random_input(n);
  for (auto _ : state) benchmark::DoNotOptimize(project(set, v));
}
BENCHMARK(BM_ProjectBox)->RangeMultiplier(8)->Range(8, 1 << 15);

}  // namespace
