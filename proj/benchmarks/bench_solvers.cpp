#include <benchmark/benchmark.h>

#include "minimax/problems.hpp"
#include "minimax/solvers.hpp"

using namespace minimax;

namespace {

void report(benchmark::State& state, const SolverResult& r) {
  state.counters["iterations"] = static_cast<double>(r.iterations);
  state.counters["grad_calls"] = static_cast<double>(r.grad_calls);
}

void BM_NscSynthetic(benchmark::State& state) {
  const MinimaxProblem p = make_synthetic({0.01, 5.0, 100.0});
  SolverConfig c;
  c.x0 = Vector::Zero(3);
  c.x0(2) = 2.0;
  c.terminate_on = TerminationMetric::kGradientNorm;
  c.trace_every = 1000;
  SolverResult r;
  for (auto _ : state) r = pf_agp_nsc(p, c);
  report(state, r);
}
BENCHMARK(BM_NscSynthetic)->Unit(benchmark::kMillisecond);

void BM_NcDiracGan(benchmark::State& state) {
  const MinimaxProblem p = make_dirac_gan();
  SolverConfig c;
  c.x0 = Vector::Ones(1);
  c.y0 = Vector::Ones(1);
  c.terminate_on = TerminationMetric::kGradientNorm;
  c.trace_every = 1000;
  SolverResult r;
  for (auto _ : state) r = pf_agp_nc(p, c);
  report(state, r);
}
BENCHMARK(BM_NcDiracGan)->Unit(benchmark::kMillisecond);

void BM_NlRobustDomains(benchmark::State& state) {
  const MinimaxProblem p = make_robust_domains(three_quadratic_domains());
  SolverConfig c;
  c.y0 = Vector::Constant(3, 1.0 / 3.0);
  c.epsilon = 1e-4;
  c.terminate_on = TerminationMetric::kRegularizedGap;
  c.trace_every = 1000;
  SolverResult r;
  for (auto _ : state) r = pf_agp_nl(p, c);
  report(state, r);
}
BENCHMARK(BM_NlRobustDomains)->Unit(benchmark::kMillisecond);

void BM_RestartedQuadratic(benchmark::State& state) {
  const QuadraticOracleSpec spec = reference_quadratic_spec();
  const MinimaxProblem p = make_quadratic_oracle(spec);
  SolverConfig c;
  c.x0 = Vector::Ones(2);
  c.mu_true = spec.a;
  c.s_lower = 0.0;
  c.trace_every = 1000;
  SolverResult r;
  for (auto _ : state) r = r_pf_agp_nsc(p, c);
  report(state, r);
}
BENCHMARK(BM_RestartedQuadratic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
