#include <cmath>

#include "solver_common.hpp"

namespace minimax {

SolverResult agp_baseline(const MinimaxProblem& problem, const SolverConfig& config) {
  internal::RunContext run(problem, config, "agp", /*needs_bounded_y=*/false);
  auto& oracle = run.oracle();
  const FeasibleSet& set_x = problem.set_x;
  const FeasibleSet& set_y = problem.set_y;

  Vector x = run.x0();
  Vector y = run.y0();
  try {
    for (long k = 1;; ++k) {
      const double step_x = config.agp_step_x.at(k);
      const double step_y = config.agp_step_y.at(k);
      const double c = config.agp_c.at(k);
      if (!(step_x > 0.0) || !(step_y > 0.0) || !(c >= 0.0)) {
        throw Error(ErrorKind::kParameter, "baseline schedule produced a nonpositive step at k=" +
                                               std::to_string(k));
      }

      const Vector gx = oracle.grad_x(x, y);
      const Vector gy = oracle.grad_y(x, y);
      const StationarityGap gap =
          gap_from_gradients(set_x, set_y, x, y, gx, gy, 1.0 / step_x, 1.0 / step_y);
      TraceRecord rec;
      rec.k = k;
      rec.beta = 1.0 / step_x;
      rec.gamma = 1.0 / step_y;
      rec.c = c;
      rec.f_value = oracle.value(x, y);
      rec.gap_norm = gap.norm;
      rec.gap_x_norm = gap.norm_x();
      rec.gap_y_norm = gap.norm_y();
      rec.reg_gap_norm =
          gap_from_gradients(set_x, set_y, x, y, gx, gy - c * y, 1.0 / step_x, 1.0 / step_y).norm;
      rec.grad_norm = std::sqrt(gx.squaredNorm() + gy.squaredNorm());
      if (run.finish_iteration(rec, x, y, gap)) return run.finish(run.result().status);

      x = project(set_x, x - step_x * gx);
      y = project(set_y, y + step_y * (oracle.grad_y(x, y) - c * y));
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
