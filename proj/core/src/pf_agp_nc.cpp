#include <cmath>

#include "solver_common.hpp"

namespace minimax {

namespace {

struct NcSteps {
  double beta;
  double gamma;
  double c;
};

NcSteps nc_steps(const EstimateState& est, long k, double l12_prev, double l22_prev,
                 NcBetaVariant variant) {
  const double kd = static_cast<double>(k);
  const double second_denominator = variant == NcBetaVariant::kPreviousL22 ? l22_prev : l12_prev;
  return {est.l12 / (20.0 * l22_prev) + 2.0 * est.l12 * est.l12 * std::sqrt(kd) / second_denominator,
          20.0 * est.l22, 19.0 * est.l22 / std::pow(kd, 0.25)};
}

}  // namespace

SolverResult pf_agp_nc(const MinimaxProblem& problem, const SolverConfig& config) {
  internal::RunContext run(problem, config, "pf-agp-nc", /*needs_bounded_y=*/true);
  auto& oracle = run.oracle();
  const FeasibleSet& set_x = problem.set_x;
  const FeasibleSet& set_y = problem.set_y;

  EstimateState est{config.l11, config.l12, config.l22, config.mu};
  double l11_prev = est.l11;
  double l12_prev = est.l12;
  double l22_prev = est.l22;
  NcSteps prev_steps = nc_steps(est, 1, l12_prev, l22_prev, config.nc_beta);

  Vector x = run.x0();
  Vector y = run.y0();
  std::optional<Vector> grad_y_cache;

  try {
    for (long k = 1;; ++k) {
      const Vector gx = oracle.grad_x(x, y);
      const Vector gy = grad_y_cache ? *grad_y_cache : oracle.grad_y(x, y);
      const double f_base = oracle.value(x, y);
      const double tol = acceptance_tolerance(f_base);

      bool accepted = false;
      NcSteps steps{};
      Vector x_trial, y_trial, gy_trial_xy;
      double f_trial = 0.0;
      ConditionValues cond;
      int trials = 0;
      for (est.trial_index = 0; est.trial_index < kMaxBacktrackingTrials; ++est.trial_index) {
        ++trials;
        if (config.step_rule == StepRule::kPrinted && est.trial_index == 0) {
          steps = prev_steps;
        } else {
          steps = nc_steps(est, k, l12_prev, l22_prev, config.nc_beta);
        }
        x_trial = project(set_x, x - gx / steps.beta);
        const Vector gy_trial_x = oracle.grad_y(x_trial, y);
        y_trial = project(set_y, y + (gy_trial_x - steps.c * y) / steps.gamma);
        gy_trial_xy = oracle.grad_y(x_trial, y_trial);
        f_trial = oracle.value(x_trial, y);

        const Vector dx = x_trial - x;
        const double c1 = c1_from(f_trial, f_base, gx, dx, est.l11);
        const double c2 = c2_from(gy_trial_x, gy, dx, est.l12);
        const double c5 = c5_from(gy_trial_xy, gy_trial_x, y_trial, y, est.l22, steps.c);
        require_finite(c1, "condition C1");
        cond = {c1, c2, std::nullopt, std::nullopt, c5};

        est.l11 = internal::grow(est.l11, c1, tol, est.l11_doublings);
        est.l12 = internal::grow(est.l12, c2, tol, est.l12_doublings);
        est.l22 = internal::grow(est.l22, c5, tol, est.l22_doublings);

        if (c1 <= tol && c2 <= tol && c5 <= tol) {
          accepted = true;
          break;
        }
      }

      const StationarityGap gap =
          gap_from_gradients(set_x, set_y, x, y, gx, gy, steps.beta, steps.gamma);
      const StationarityGap reg_gap =
          gap_from_gradients(set_x, set_y, x, y, gx, gy - steps.c * y, steps.beta, steps.gamma);
      TraceRecord rec;
      rec.k = k;
      rec.trials = trials;
      internal::copy_estimates(est, rec, /*with_mu=*/false);
      rec.beta = steps.beta;
      rec.gamma = steps.gamma;
      rec.c = steps.c;
      rec.f_value = f_base;
      rec.gap_norm = gap.norm;
      rec.gap_x_norm = gap.norm_x();
      rec.gap_y_norm = gap.norm_y();
      rec.reg_gap_norm = reg_gap.norm;
      rec.grad_norm = std::sqrt(gx.squaredNorm() + gy.squaredNorm());
      rec.conditions = cond;

      if (!accepted) {
        run.record(rec, /*force=*/true);
        auto& res = run.result();
        res.x = x;
        res.y = y;
        res.gap = gap;
        res.reg_gap_norm = reg_gap.norm;
        res.grad_norm = rec.grad_norm;
        res.iterations = k;
        res.estimates = est;
        return run.finish(SolverStatus::kStalled,
                          "backtracking stalled after " + std::to_string(trials) + " trials");
      }

      auto& inv = run.result().invariants;
      if (k > 1 && steps.gamma < prev_steps.gamma) ++inv.gamma_decreases;
      if (est.l11 < l11_prev || est.l12 < l12_prev || est.l22 < l22_prev) {
        ++inv.estimate_order_violations;
      }

      run.result().estimates = est;
      if (run.finish_iteration(rec, x, y, gap)) return run.finish(run.result().status);

      x = std::move(x_trial);
      y = std::move(y_trial);
      grad_y_cache = std::move(gy_trial_xy);
      l11_prev = est.l11;
      l12_prev = est.l12;
      l22_prev = est.l22;
      prev_steps = steps;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNumeric) throw;
    auto& res = run.result();
    res.x = x;
    res.y = y;
    res.estimates = est;
    return run.finish(SolverStatus::kError, e.what());
  }
}

}  // namespace minimax
