// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "experiment.hpp"
#include "minimax/minimax.hpp"
#include "oracles/oracles.hpp"
#include "run_config.hpp"

using namespace minimax;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "NOT ") + what;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string num(double v) { return fmt("%.4g", v); }

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int ceil_log2(double v) { return static_cast<int>(std::ceil(std::log2(v))); }

// 1 ---------------------------------------------------------------------------

Verdict synthetic_replication() {
  SyntheticParams sp{0.01, 5.0, 100.0};
  const MinimaxProblem p = make_synthetic(sp);
  SolverConfig c;
  c.x0 = vec({0.0, 0.0, 2.0});
  c.y0 = vec({0.0, 0.0});
  c.terminate_on = TerminationMetric::kGradientNorm;
  c.trace_every = 1000;
  const auto t0 = std::chrono::steady_clock::now();
  const SolverResult r = pf_agp_nsc(p, c);
  const double secs = elapsed_s(t0);
  const double dist = std::sqrt(r.x.squaredNorm() + r.y.squaredNorm());

  Verdict v;
  v.require(r.status == SolverStatus::kConverged && r.grad_norm <= 1e-5,
            "||grad f|| <= 1e-5 (" + num(r.grad_norm) + " after " + std::to_string(r.iterations) + " iterations)");
  v.require(dist <= 1e-2, "within 1e-2 of the origin (distance " + num(dist) + ", x3 = " + num(r.x(2)) + ")");
  v.require(secs < 30.0, "wall time < 30 s (" + fmt("%.2f", secs) + " s)");
  return v;
}

// 2 ---------------------------------------------------------------------------

Verdict dirac_replication() {
  const MinimaxProblem p = make_dirac_gan(10.0);
  SolverConfig c;
  c.x0 = vec({1.0});
  c.y0 = vec({1.0});
  c.terminate_on = TerminationMetric::kGradientNorm;
  c.trace_every = 1000;
  const SolverResult nc = pf_agp_nc(p, c);
  c.agp_step_x = {0.8, 0.5};
  c.agp_step_y = {0.3, 0.0};
  c.agp_c = {0.5, 0.25};
  const SolverResult agp = agp_baseline(p, c);

  Verdict v;
  const double dist = std::hypot(nc.x(0), nc.y(0));
  v.require(nc.status == SolverStatus::kConverged && nc.grad_norm <= 1e-5,
            "PF-AGP-NC ||grad f|| <= 1e-5 (" + num(nc.grad_norm) + ")");
  v.require(dist <= 1e-2, "PF-AGP-NC within 1e-2 of (0,0) (" + num(dist) + ")");
  v.require(agp.status == SolverStatus::kConverged, "AGP baseline converges (" + std::string(to_string(agp.status)) + ")");
  v.require(nc.grad_calls <= 10 * agp.grad_calls,
            "grad calls " + std::to_string(nc.grad_calls) + " <= 10 x " + std::to_string(agp.grad_calls));
  return v;
}

// 3, 4 ------------------------------------------------------------------------

SolverResult reference_quadratic_run(double epsilon, long max_iters) {
  const MinimaxProblem p = make_quadratic_oracle(reference_quadratic_spec());
  SolverConfig c;
  c.x0 = Vector::Ones(2);
  c.mu = 4.0;
  c.epsilon = epsilon;
  c.max_outer_iters = max_iters;
  return pf_agp_nsc(p, c);
}

Verdict backtracking_counts(const SolverResult& r) {
  const QuadraticOracleSpec spec = reference_quadratic_spec();
  const double l11 = oracles::spectral_norm(spec.q);
  const double l12 = oracles::spectral_norm(spec.b);
  const TraceRecord& last = r.trace.back();
  Verdict v;
  v.require(r.status == SolverStatus::kConverged, std::string("run ") + to_string(r.status));
  const auto check = [&](const char* name, int count, int bound) {
    v.require(count <= bound, std::string(name) + " " + std::to_string(count) + " <= " + std::to_string(bound));
  };
  check("l11 doublings", last.l11_doublings, ceil_log2(2.0 * l11 / 0.01));
  check("l12 doublings", last.l12_doublings, ceil_log2(2.0 * l12 / 0.01));
  check("l22 doublings", last.l22_doublings, ceil_log2(2.0 * spec.a / 0.01));
  check("mu halvings", last.mu_halvings, ceil_log2(2.0 * 4.0 / spec.a));
  return v;
}

Verdict estimate_sandwich(const SolverResult& r) {
  const QuadraticOracleSpec spec = reference_quadratic_spec();
  const double q = oracles::spectral_norm(spec.q);
  const double b = oracles::spectral_norm(spec.b);
  long violations = 0;
  for (const auto& t : r.trace) {
    const bool ok = *t.l11 >= 0.01 && *t.l11 <= std::max(0.01, 2.0 * q) && *t.l12 <= 2.0 * b &&
                    *t.l22 <= 2.0 * spec.a && *t.mu >= std::min(4.0, spec.a / 2.0);
    if (!ok) ++violations;
  }
  Verdict v;
  v.require(violations == 0, std::to_string(violations) + " violations over " + std::to_string(r.trace.size()) +
                                 " accepted iterations");
  return v;
}

// 5 ---------------------------------------------------------------------------

Verdict descent_everywhere() {
  struct Case {
    std::string name;
    MinimaxProblem problem;
    SolverConfig config;
  };
  std::vector<Case> cases;
  const auto add = [&](std::string name, MinimaxProblem p, SolverConfig c) {
    c.max_outer_iters = std::min<long>(c.max_outer_iters, 20000);
    c.trace_every = 1000;
    cases.push_back({std::move(name), std::move(p), std::move(c)});
  };
  SolverConfig synth;
  synth.x0 = vec({0.0, 0.0, 2.0});
  add("synthetic", make_synthetic({0.01, 5.0, 100.0}), synth);
  SolverConfig dirac;
  dirac.x0 = vec({1.0});
  dirac.y0 = vec({1.0});
  add("dirac-gan", make_dirac_gan(10.0), dirac);
  SolverConfig robust;
  robust.y0 = Vector::Constant(3, 1.0 / 3.0);
  add("robust-domains", make_robust_domains(three_quadratic_domains()), robust);
  const fs::path data(harness::data_dir());
  add("robust-logistic",
      make_robust_domains(logistic_domains({data / "domain_a.csv", data / "domain_b.csv", data / "domain_c.csv"})),
      robust);
  SolverConfig quad;
  quad.x0 = Vector::Ones(2);
  add("quadratic", make_quadratic_oracle(reference_quadratic_spec()), quad);
  SolverConfig rq;
  rq.x0 = Vector::Ones(4);
  add("random quadratic", make_quadratic_oracle(random_quadratic_spec(4, 3, 0.5, 1)), rq);

  Verdict v;
  for (const auto& cs : cases) {
    const SolverResult r = pf_agp_nsc(cs.problem, cs.config);
    v.require(r.status != SolverStatus::kError && r.invariants.descent_violations == 0,
              cs.name + ": " + std::to_string(r.invariants.descent_violations) + " violations in " +
                  std::to_string(r.iterations) + " iterations");
  }
  return v;
}

// 6 ---------------------------------------------------------------------------

Verdict projection_equivalence() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(2, 8);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int m = dim(rng);
    const Vector u = oracles::random_vector(rng, m, 3.0);
    worst = std::max(worst, (project(FeasibleSet::simplex(m), u) - oracles::brute_force_simplex(u)).norm());
  }
  v.require(worst <= 1e-9, "simplex vs brute force max error " + num(worst));

  const std::vector<FeasibleSet> sets = {
      FeasibleSet::unconstrained(4),
      FeasibleSet::box(vec({-1.0, 0.0, -2.0, 0.5}), vec({1.0, 0.0, 3.0, 2.0})),
      FeasibleSet::ball(vec({0.5, -1.0, 0.0, 2.0}), 1.5),
      FeasibleSet::simplex(4),
  };
  for (const auto& set : sets) {
    long bad = 0;
    for (int s = 0; s < 1000; ++s) {
      const Vector a = oracles::random_vector(rng, 4, 4.0);
      const Vector b = oracles::random_vector(rng, 4, 4.0);
      const Vector w = project(set, oracles::random_vector(rng, 4, 4.0));
      const Vector pa = project(set, a);
      const Vector pb = project(set, b);
      if ((project(set, pa) - pa).norm() > 1e-12 * (1.0 + pa.norm())) ++bad;
      if ((pa - pb).norm() > (a - b).norm() + 1e-12) ++bad;
      if ((a - pa).dot(w - pa) > 1e-10) ++bad;
    }
    v.require(bad == 0, set.describe() + " property failures " + std::to_string(bad));
  }
  return v;
}

// 7 ---------------------------------------------------------------------------

Verdict gradient_checks() {
  Verdict v;
  std::mt19937_64 rng(7);
  const auto sample = [&](const MinimaxProblem& p, int count, double spread) {
    std::vector<std::pair<Vector, Vector>> pts;
    for (int i = 0; i < count; ++i) {
      pts.emplace_back(oracles::random_vector(rng, p.dim_x, spread), oracles::random_vector(rng, p.dim_y, spread));
    }
    return pts;
  };
  const fs::path data(harness::data_dir());
  const std::vector<std::pair<std::string, MinimaxProblem>> problems = {
      {"synthetic", make_synthetic()},
      {"dirac-gan", make_dirac_gan()},
      {"robust-domains", make_robust_domains(three_quadratic_domains())},
      {"robust-logistic", make_robust_domains(logistic_domains(
                              {data / "domain_a.csv", data / "domain_b.csv", data / "domain_c.csv"}))},
      {"quadratic", make_quadratic_oracle(reference_quadratic_spec())},
      {"random quadratic", make_quadratic_oracle(random_quadratic_spec(5, 3, 0.5, 3))},
  };
  const double h = 1e-6;
  for (const auto& [name, p] : problems) {
    const double err = check_gradients(p, sample(p, 50, 2.0), h).max_rel_error();
    v.require(err <= 1e-5, name + " " + num(err));
  }

  // w breakpoints: points within h use the looser bound.
  const SyntheticParams sp;
  const MinimaxProblem synth = make_synthetic(sp);
  std::uniform_real_distribution<double> offset(-h, h);
  std::vector<std::pair<Vector, Vector>> near;
  for (double b : w_breakpoints(sp)) {
    for (int i = 0; i < 20; ++i) near.emplace_back(vec({0.3, -0.2, b + offset(rng)}), vec({0.1, 0.4}));
  }
  const double err = check_gradients(synth, near, h).max_rel_error();
  v.require(err <= 1e-4, "synthetic within h of breakpoints " + num(err));
  return v;
}

// 8 ---------------------------------------------------------------------------

Verdict nl_robust_domains() {
  const MinimaxProblem p = make_robust_domains(three_quadratic_domains());
  SolverConfig c;
  c.x0 = Vector::Zero(2);
  c.y0 = Vector::Constant(3, 1.0 / 3.0);
  c.epsilon = 1e-4;
  c.max_outer_iters = 100000;
  c.terminate_on = TerminationMetric::kRegularizedGap;
  c.trace_every = 1000;
  const SolverResult r = pf_agp_nl(p, c);
  const auto worst = [&](const Vector& x) { return p.grad_y(x, c.y0).maxCoeff(); };

  Verdict v;
  v.require(r.status == SolverStatus::kConverged && r.reg_gap_norm && *r.reg_gap_norm <= 1e-4,
            "regularized gap " + num(r.reg_gap_norm.value_or(NAN)) + " after " + std::to_string(r.iterations) +
                " iterations");
  v.require(worst(r.x) <= worst(c.x0), "worst domain loss " + num(worst(r.x)) + " <= " + num(worst(c.x0)));
  v.require(r.invariants.beta_bound_violations == 0,
            "beta bound violations " + std::to_string(r.invariants.beta_bound_violations));
  return v;
}

// 9 ---------------------------------------------------------------------------

Verdict rate_shape() {
  const SolverResult r = reference_quadratic_run(1e-300, 10000);
  std::vector<double> best_at(static_cast<std::size_t>(r.iterations) + 1, std::numeric_limits<double>::infinity());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : r.trace) {
    best = std::min(best, t.gap_norm);
    best_at[static_cast<std::size_t>(t.k)] = best;
  }
  std::vector<double> ks, gs;
  for (int i = 0; i <= 20; ++i) {
    const double k = std::pow(10.0, 2.0 + i * 0.1);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::lround(k)), best_at.size() - 1);
    ks.push_back(k);
    gs.push_back(std::max(best_at[idx], std::numeric_limits<double>::min()));
  }
  const double slope = oracles::log_log_slope(ks, gs);
  Verdict v;
  v.require(slope <= -0.4, "log-log slope " + num(slope) + " <= -0.4 (" + std::to_string(r.iterations) + " iterations)");
  return v;
}

// 10 --------------------------------------------------------------------------

Verdict restart_variant() {
  const QuadraticOracleSpec spec = reference_quadratic_spec();
  const MinimaxProblem p = make_quadratic_oracle(spec);
  SolverConfig c;
  c.x0 = Vector::Ones(2);
  c.mu_true = spec.a;
  c.s_lower = 0.0;
  const SolverResult r = r_pf_agp_nsc(p, c);
  const double big_l = std::max({oracles::spectral_norm(spec.q), oracles::spectral_norm(spec.b), spec.a});
  const int bound = ceil_log2(2.0 * big_l / c.l11) + 1;

  long mismatches = 0;
  for (const auto& t : r.trace) {
    const double l = c.l11 * std::ldexp(1.0, *t.stage - 1);
    if (*t.l11 != l || *t.beta != 3.0 * l || *t.gamma != 158.0 * l * l * l / (spec.a * spec.a)) ++mismatches;
  }
  Verdict v;
  v.require(r.status == SolverStatus::kConverged, std::string("run ") + to_string(r.status) + " gap " + num(r.gap.norm));
  v.require(r.restarts <= bound, "restarts " + std::to_string(r.restarts) + " <= " + std::to_string(bound));
  v.require(mismatches == 0, "stage parameter mismatches " + std::to_string(mismatches) + " over " +
                                 std::to_string(r.trace.size()) + " records");
  return v;
}

// 11 --------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict determinism() {
  const fs::path dir = fs::temp_directory_path() / "minimax_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> runs = {
      {"--problem", "synthetic", "--solver", "pf-agp-nsc"},
      {"--problem", "dirac-gan", "--solver", "pf-agp-nc", "--max-iters", "2000"},
      {"--problem", "robust-domains", "--solver", "pf-agp-nl", "--max-iters", "2000"},
      {"--problem", "quadratic", "--solver", "rpf-agp-nsc"},
      {"--problem", "dirac-gan", "--solver", "agp", "--format", "json"},
      {"--problem", "quadratic", "--solver", "pf-agp-nsc", "--seed", "5", "--max-iters", "2000"},
  };
  Verdict v;
  int index = 0;
  for (const auto& args : runs) {
    std::string files[2];
    for (int rep = 0; rep < 2; ++rep) {
      auto a = args;
      const fs::path out = dir / (std::to_string(index) + "_" + std::to_string(rep) + ".trace");
      a.insert(a.end(), {"-o", out.string()});
      (void)harness::run_experiment(harness::parse_config(a));
      files[rep] = slurp(out);
    }
    v.require(!files[0].empty() && files[0] == files[1], args[1] + "/" + args[3] + " identical (" +
                                                             std::to_string(files[0].size()) + " bytes)");
    ++index;
  }
  fs::remove_all(dir);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> check;
  };
  SolverResult reference;
  const std::vector<Criterion> criteria = {
      {1, "synthetic replication", synthetic_replication},
      {2, "Dirac-GAN replication", dirac_replication},
      {3, "backtracking-count bound",
       [&] {
         reference = reference_quadratic_run(1e-5, 1000000);
         return backtracking_counts(reference);
       }},
      {4, "estimate sandwich", [&] { return estimate_sandwich(reference); }},
      {5, "descent inequality", descent_everywhere},
      {6, "projection oracle equivalence", projection_equivalence},
      {7, "gradient checks", gradient_checks},
      {8, "NL robust domains", nl_robust_domains},
      {9, "rate shape", rate_shape},
      {10, "restart variant", restart_variant},
      {11, "determinism", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
