#include <algorithm>
#include <cmath>

#include "solver_common.hpp"

namespace minimax {

namespace {

struct NlSteps {
  double rho;
  double beta;
  double c;
  double d;
};

NlSteps nl_steps(const EstimateState& est, long k) {
  const double rho = 2.0 * std::max(est.l11, est.l12);
  const double k3 = std::cbrt(static_cast<double>(k));
  return {rho, 2.0 * rho * k3 + rho, rho / k3, rho / (16.0 * k3)};
}

void require_linear(const MinimaxProblem& problem, const char* who) {
  if (!problem.linear_in_y) {
    throw Error(ErrorKind::kStructure,
                std::string(who) + " needs a problem linear in y; " + problem.name + " is not");
  }
}

Vector regularized_argmax(const FeasibleSet& set_y, const Vector& g, const Vector& y_k, double c,
                          double d) {
  return project(set_y, (g + d * y_k) / (c + d));
}

}  // namespace

Vector inner_max_regularized(const MinimaxProblem& problem, const Vector& x, const Vector& y_k,
                             double c, double d) {
  require_linear(problem, "inner_max_regularized");
  if (!(c >= 0.0) || !(d >= 0.0) || !(c + d > 0.0)) {
    throw Error(ErrorKind::kParameter, "inner maximization needs c, d >= 0 and c + d > 0");
  }
  const Vector g = problem.grad_y(x, y_k);
  require_finite(g, "grad_y");
  return regularized_argmax(problem.set_y, g, y_k, c, d);
}

SolverResult pf_agp_nl(const MinimaxProblem& problem, const SolverConfig& config) {
  require_linear(problem, "pf-agp-nl");
  internal::RunContext run(problem, config, "pf-agp-nl", /*needs_bounded_y=*/true);
  auto& oracle = run.oracle();
  const FeasibleSet& set_x = problem.set_x;
  const FeasibleSet& set_y = problem.set_y;

  EstimateState est{config.l11, config.l12, config.l22, config.mu};
  double l11_prev = est.l11;
  double l12_prev = est.l12;
  NlSteps prev_steps = nl_steps(est, 1);

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
      NlSteps steps{};
      Vector x_trial, y_trial, gy_trial;
      double f_trial = 0.0;
      ConditionValues cond;
      int trials = 0;
      for (est.trial_index = 0; est.trial_index < kMaxBacktrackingTrials; ++est.trial_index) {
        ++trials;
        if (config.step_rule == StepRule::kPrinted && est.trial_index == 0) {
          steps = prev_steps;
        } else {
          steps = nl_steps(est, k);
        }
        x_trial = project(set_x, x - gx / steps.beta);
        // Linear in y: this is grad_y f(x_trial, .) at every y.
        gy_trial = oracle.grad_y(x_trial, y);
        y_trial = regularized_argmax(set_y, gy_trial, y, steps.c, steps.d);
        f_trial = oracle.value(x_trial, y);

        const Vector dx = x_trial - x;
        const double c1 = c1_from(f_trial, f_base, gx, dx, est.l11);
        const double c2 = c2_from(gy_trial, gy, dx, est.l12);
        require_finite(c1, "condition C1");
        cond = {c1, c2, std::nullopt, std::nullopt, std::nullopt};

        est.l11 = internal::grow(est.l11, c1, tol, est.l11_doublings);
        est.l12 = internal::grow(est.l12, c2, tol, est.l12_doublings);

        if (c1 <= tol && c2 <= tol) {
          accepted = true;
          break;
        }
      }

      // The y-block of both gaps is scaled by rho.
      const StationarityGap gap =
          gap_from_gradients(set_x, set_y, x, y, gx, gy, steps.beta, steps.rho);
      const StationarityGap reg_gap =
          gap_from_gradients(set_x, set_y, x, y, gx, gy - steps.c * y, steps.beta, steps.rho);
      TraceRecord rec;
      rec.k = k;
      rec.trials = trials;
      rec.l11 = est.l11;
      rec.l12 = est.l12;
      rec.l11_doublings = est.l11_doublings;
      rec.l12_doublings = est.l12_doublings;
      rec.beta = steps.beta;
      rec.gamma = steps.rho;
      rec.rho = steps.rho;
      rec.c = steps.c;
      rec.d = steps.d;
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
      const double lhs = steps.beta - est.l11 / 2.0 - est.l12 * est.l12 / steps.c;
      const double rhs = steps.rho * steps.rho / steps.c;
      if (lhs < rhs - 1e-12 * std::abs(rhs)) ++inv.beta_bound_violations;
      if (est.l11 < l11_prev || est.l12 < l12_prev) ++inv.estimate_order_violations;

      run.result().estimates = est;
      if (run.finish_iteration(rec, x, y, gap)) return run.finish(run.result().status);

      x = std::move(x_trial);
      y = std::move(y_trial);
      grad_y_cache = std::move(gy_trial);
      l11_prev = est.l11;
      l12_prev = est.l12;
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
