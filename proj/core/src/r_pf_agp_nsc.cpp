#include <algorithm>
#include <cmath>
#include <limits>

#include "solver_common.hpp"

namespace minimax {

RestartStage restart_stage(double l, double mu, double s1, double s_lower, double epsilon) {
  RestartStage st;
  st.l = l;
  st.beta = 3.0 * l;
  st.alpha = 158.0 * l * l * l / (mu * mu);
  st.eta = (2.0 * st.beta + mu) * (st.beta + l) / (mu * st.beta);
  const double lb = l + st.beta;
  const double first =
      (st.alpha - l * lb * lb * st.eta * st.eta / (st.beta * st.beta) - l * l / mu - 1.5 * l) /
      (2.0 * st.alpha * st.alpha);
  const double second = (st.beta - 1.5 * l) / (st.beta * st.beta + 2.0 * l * l);
  st.d1 = std::min(first, second);
  st.budget = st.d1 > 0.0 ? (s1 - s_lower) / (epsilon * epsilon * st.d1) : 0.0;
  return st;
}

BestResponse best_response(const MinimaxProblem& problem, const Vector& x, const Vector& y_start,
                           double l_start, double tolerance, long max_iters) {
  if (!(l_start > 0.0)) throw Error(ErrorKind::kParameter, "best response needs a positive start estimate");
  BestResponse out;
  internal::CountingOracle oracle(problem);
  double l = l_start;
  Vector y = project(problem.set_y, y_start);
  double fy = oracle.value(x, y);
  for (out.iterations = 0; out.iterations < max_iters; ++out.iterations) {
    const Vector g = oracle.grad_y(x, y);
    Vector y_next = project(problem.set_y, y + g / l);
    if (l * (y_next - y).norm() <= tolerance) break;
    // Ascent version of the descent lemma; double l until it holds.
    for (int trial = 0; trial < kMaxBacktrackingTrials; ++trial) {
      const Vector dy = y_next - y;
      const double f_next = oracle.value(x, y_next);
      if (f_next >= fy + g.dot(dy) - 0.5 * l * dy.squaredNorm() - acceptance_tolerance(fy)) {
        y = std::move(y_next);
        fy = f_next;
        break;
      }
      l *= 2.0;
      y_next = project(problem.set_y, y + g / l);
    }
  }
  out.y = std::move(y);
  out.value = fy;
  out.grad_calls = oracle.grad_calls();
  out.f_calls = oracle.f_calls();
  return out;
}

SolverResult r_pf_agp_nsc(const MinimaxProblem& problem, const SolverConfig& config) {
  if (!config.mu_true || !config.s_lower) {
    throw Error(ErrorKind::kParameter, "rpf-agp-nsc needs mu_true and s_lower");
  }
  const double mu = *config.mu_true;
  const double s_lower = *config.s_lower;
  if (!(mu > 0.0)) throw Error(ErrorKind::kParameter, "mu_true must be positive");
  internal::RunContext run(problem, config, "rpf-agp-nsc", /*needs_bounded_y=*/true);
  auto& oracle = run.oracle();
  const FeasibleSet& set_x = problem.set_x;
  const FeasibleSet& set_y = problem.set_y;
  const Vector& x1 = run.x0();
  const Vector& y1 = run.y0();

  Vector x = x1;
  Vector y = y1;
  try {
    const BestResponse br = best_response(problem, x1, y1, config.l11);
    oracle.charge(br.grad_calls, br.f_calls);
    const double s1 = 2.0 * br.value - oracle.value(x1, y1);
    if (s1 < s_lower) {
      throw Error(ErrorKind::kParameter, "s_lower exceeds the initial potential S_1");
    }

    long k_total = 0;
    double l = config.l11;
    for (int stage = 1;; ++stage) {
      const RestartStage st = restart_stage(l, mu, s1, s_lower, config.epsilon);
      x = x1;
      y = y1;
      for (long k = 1;; ++k) {
        ++k_total;
        const Vector gx = oracle.grad_x(x, y);
        const Vector gy = oracle.grad_y(x, y);
        const StationarityGap gap = gap_from_gradients(set_x, set_y, x, y, gx, gy, st.alpha, st.beta);
        TraceRecord rec;
        rec.k = k_total;
        rec.stage = stage;
        rec.l11 = st.l;
        rec.l12 = st.l;
        rec.l22 = st.l;
        rec.mu = mu;
        rec.beta = st.beta;
        rec.gamma = st.alpha;
        rec.f_value = oracle.value(x, y);
        rec.gap_norm = gap.norm;
        rec.gap_x_norm = gap.norm_x();
        rec.gap_y_norm = gap.norm_y();
        rec.grad_norm = std::sqrt(gx.squaredNorm() + gy.squaredNorm());
        run.result().restarts = stage - 1;
        if (run.finish_iteration(rec, x, y, gap)) return run.finish(run.result().status);
        if (static_cast<double>(k) >= st.budget) break;

        y = project(set_y, y + gy / st.beta);
        x = project(set_x, x - oracle.grad_x(x, y) / st.alpha);
      }
      l *= 2.0;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNumeric) throw;
    auto& res = run.result();
    res.x = x;
    res.y = y;
    return run.finish(SolverStatus::kError, e.what());
  }
}

}  // namespace minimax
