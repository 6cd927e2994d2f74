#include "run_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "minimax/error.hpp"
#include "minimax/problems.hpp"

#ifndef MINIMAX_DATA_DIR
#define MINIMAX_DATA_DIR "data"
#endif

namespace minimax::harness {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view tok = trim(rest.substr(0, comma));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
      throw CLI::ValidationError(flag, "expected comma-separated reals, got '" + text + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<std::string> split_paths(const std::string& text) {
  std::vector<std::string> out;
  std::string_view rest(text);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view tok = trim(rest.substr(0, comma));
    if (!tok.empty()) out.emplace_back(tok);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

void add_run_options(CLI::App& app, RunConfig& cfg, std::string& config_file) {
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  app.add_option("--config", config_file, "Flat key=value file read before the command line");
  app.add_option("--problem", cfg.problem, "Problem: " + join(problem_names()))
      ->check(CLI::IsMember(problem_names()));
  app.add_option("--solver", cfg.solver, "Solver: " + join(solver_names()))
      ->check(CLI::IsMember(solver_names()));

  auto* problem = "Problem";
  app.add_option("--w-eps", cfg.w_eps, "Synthetic w parameter eps")->capture_default_str()->group(problem);
  app.add_option("--w-lambda", cfg.w_lambda, "Synthetic w parameter lambda")->capture_default_str()->group(problem);
  app.add_option("--y-box", cfg.y_box,
                 "Half-width of the y box for synthetic (default 100) and dirac-gan (default 10); 0 leaves y free")
      ->group(problem);
  app.add_option("--seed", cfg.seed, "Random quadratic instance seed (quadratic only)")->group(problem);
  app.add_option("--dim-x", cfg.dim_x, "Random quadratic x dimension")->capture_default_str()->group(problem);
  app.add_option("--dim-y", cfg.dim_y, "Random quadratic y dimension")->capture_default_str()->group(problem);
  app.add_option("--modulus", cfg.modulus, "Random quadratic concavity modulus")->capture_default_str()->group(problem);
  app.add_option("--radius", cfg.radius, "Quadratic ball radius for x and y")->capture_default_str()->group(problem);
  app.add_option_function<std::string>(
         "--data", [&cfg](const std::string& s) { cfg.data_files = split_paths(s); },
         "Comma-separated dataset files (robust-logistic only)")
      ->group(problem);
  app.add_option("--l2", cfg.l2, "Logistic l2 weight")->capture_default_str()->group(problem);

  auto* solver = "Solver";
  app.add_option("--eps", cfg.epsilon, "Target tolerance")->capture_default_str()->group(solver);
  app.add_option("--max-iters", cfg.max_iters, "Outer iteration budget")->capture_default_str()->group(solver);
  auto* l0 = app.add_option_function<double>(
                    "--l0", [&cfg](double v) { cfg.l11 = cfg.l12 = cfg.l22 = v; },
                    "Initial value of l11, l12 and l22")
                 ->group(solver);
  auto* l11 = app.add_option("--l11", cfg.l11, "Initial l11")->capture_default_str()->group(solver);
  auto* l12 = app.add_option("--l12", cfg.l12, "Initial l12")->capture_default_str()->group(solver);
  auto* l22 = app.add_option("--l22", cfg.l22, "Initial l22")->capture_default_str()->group(solver);
  l0->excludes(l11)->excludes(l12)->excludes(l22);
  app.add_option("--mu0", cfg.mu, "Initial mu estimate")->capture_default_str()->group(solver);
  app.add_option_function<std::string>(
         "--x0", [&cfg](const std::string& s) { cfg.x0 = parse_list("--x0", s); },
         "Initial x as comma-separated reals")
      ->group(solver);
  app.add_option_function<std::string>(
         "--y0", [&cfg](const std::string& s) { cfg.y0 = parse_list("--y0", s); },
         "Initial y as comma-separated reals")
      ->group(solver);
  app.add_option("--trace-every", cfg.trace_every, "Record every n-th iteration")->capture_default_str()->group(solver);
  app.add_option("--terminate-on", cfg.terminate_on,
                 "auto, gap, grad-norm or reg-gap; auto uses grad-norm for synthetic and dirac-gan")
      ->check(CLI::IsMember({"auto", "gap", "grad-norm", "reg-gap"}))
      ->capture_default_str()
      ->group(solver);
  app.add_option("--step-rule", cfg.step_rule, "every-trial or printed")
      ->check(CLI::IsMember({"every-trial", "printed"}))
      ->capture_default_str()
      ->group(solver);
  app.add_option("--nc-beta", cfg.nc_beta, "Denominator of the second beta term: l22 or l12")
      ->check(CLI::IsMember({"l22", "l12"}))
      ->capture_default_str()
      ->group(solver);
  app.add_option("--mu-true", cfg.mu_true, "Strong concavity modulus for rpf-agp-nsc")->group(solver);
  app.add_option("--s-lower", cfg.s_lower, "Lower bound on min_x max_y f for rpf-agp-nsc")->group(solver);
  app.add_option("--agp-alpha", cfg.agp_alpha, "Baseline x step scale")->group(solver);
  app.add_option("--agp-alpha-power", cfg.agp_alpha_power, "Baseline x step decay power")->group(solver);
  app.add_option("--agp-beta", cfg.agp_beta, "Baseline y step scale")->group(solver);
  app.add_option("--agp-beta-power", cfg.agp_beta_power, "Baseline y step decay power")->group(solver);
  app.add_option("--agp-c", cfg.agp_c, "Baseline regularization scale")->group(solver);
  app.add_option("--agp-c-power", cfg.agp_c_power, "Baseline regularization decay power")->group(solver);
  app.add_flag("--timing", cfg.timing, "Record elapsed_ms in the trace (breaks bitwise reproducibility)")
      ->group(solver);

  auto* output = "Output";
  app.add_option("--output,-o", cfg.output, "Trace file path")->group(output);
  app.add_option_function<std::string>(
         "--format", [&cfg](const std::string& s) { cfg.format = parse_trace_format(s); }, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->group(output);
}

std::string choices_message() {
  return "problems: " + join(problem_names()) + "; solvers: " + join(solver_names());
}

std::vector<double> or_default(const std::optional<std::vector<double>>& given, std::vector<double> fallback) {
  return given ? *given : std::move(fallback);
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::optional<double> box_or_free(const std::optional<double>& given, double fallback) {
  const double v = given.value_or(fallback);
  if (v == 0.0) return std::nullopt;
  return v;
}

}  // namespace

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"synthetic", "dirac-gan", "robust-domains", "robust-logistic",
                                                 "quadratic"};
  return names;
}

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {"pf-agp-nsc", "pf-agp-nc", "pf-agp-nl", "rpf-agp-nsc", "agp"};
  return names;
}

std::vector<std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kUsage, "cannot read config file " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    const std::string_view key = eq == std::string_view::npos ? std::string_view{} : trim(text.substr(0, eq));
    if (key.empty() || key.front() == '-') {
      throw Error(ErrorKind::kUsage,
                  path.string() + ":" + std::to_string(line_no) + ": expected key=value, got '" + std::string(text) + "'");
    }
    tokens.push_back("--" + std::string(key) + "=" + std::string(trim(text.substr(eq + 1))));
  }
  return tokens;
}

RunConfig parse_config(const std::vector<std::string>& args, bool require_solver) {
  RunConfig cfg;
  std::string config_file;
  CLI::App app{"Run one minimax solver on one problem", "run"};
  add_run_options(app, cfg, config_file);

  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      tokens = read_config_file(args[i + 1]);
    } else if (args[i].rfind("--config=", 0) == 0) {
      tokens = read_config_file(args[i].substr(9));
    }
  }
  if (tokens.empty() && args.empty()) {
    throw Error(ErrorKind::kUsage, "choose a problem and a solver (" + choices_message() + ")");
  }
  tokens.insert(tokens.end(), args.begin(), args.end());
  std::reverse(tokens.begin(), tokens.end());

  try {
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::kUsage, e.what());
  }

  if (cfg.problem.empty()) throw Error(ErrorKind::kUsage, "--problem is required (" + choices_message() + ")");
  if (require_solver && cfg.solver.empty()) {
    throw Error(ErrorKind::kUsage, "--solver is required (" + choices_message() + ")");
  }
  if (cfg.seed && cfg.problem != "quadratic") {
    throw Error(ErrorKind::kUsage, "--seed applies only to the quadratic problem");
  }
  if (!cfg.data_files.empty() && cfg.problem != "robust-logistic") {
    throw Error(ErrorKind::kUsage, "--data applies only to the robust-logistic problem");
  }
  if (cfg.y_box && cfg.problem != "synthetic" && cfg.problem != "dirac-gan") {
    throw Error(ErrorKind::kUsage, "--y-box applies only to synthetic and dirac-gan");
  }
  if (cfg.y_box && *cfg.y_box < 0.0) throw Error(ErrorKind::kUsage, "--y-box must be nonnegative");
  return cfg;
}

std::filesystem::path data_dir() { return MINIMAX_DATA_DIR; }

MinimaxProblem build_problem(const RunConfig& config) {
  const std::string& name = config.problem;
  if (name == "synthetic") {
    SyntheticParams p;
    p.eps = config.w_eps;
    p.lambda = config.w_lambda;
    p.y_box = box_or_free(config.y_box, 100.0);
    return make_synthetic(p);
  }
  if (name == "dirac-gan") return make_dirac_gan(box_or_free(config.y_box, 10.0));
  if (name == "robust-domains") return make_robust_domains(three_quadratic_domains());
  if (name == "robust-logistic") {
    std::vector<std::filesystem::path> files(config.data_files.begin(), config.data_files.end());
    if (files.empty()) {
      for (const char* f : {"domain_a.csv", "domain_b.csv", "domain_c.csv"}) files.push_back(data_dir() / f);
    }
    MinimaxProblem p = make_robust_domains(logistic_domains(files, config.l2));
    p.name = "robust-logistic";
    return p;
  }
  if (name == "quadratic") {
    QuadraticOracleSpec spec = config.seed
                                   ? random_quadratic_spec(config.dim_x, config.dim_y, config.modulus, *config.seed)
                                   : reference_quadratic_spec();
    spec.radius_x = config.radius;
    spec.radius_y = config.radius;
    return make_quadratic_oracle(spec);
  }
  throw Error(ErrorKind::kUsage, "unknown problem '" + name + "' (" + choices_message() + ")");
}

SolverConfig build_solver_config(const RunConfig& config, const MinimaxProblem& problem) {
  SolverConfig s;
  s.epsilon = config.epsilon;
  s.max_outer_iters = config.max_iters;
  s.l11 = config.l11;
  s.l12 = config.l12;
  s.l22 = config.l22;
  s.mu = config.mu;
  s.trace_every = config.trace_every;
  s.record_time = config.timing;
  s.step_rule = config.step_rule == "printed" ? StepRule::kPrinted : StepRule::kEveryTrial;
  s.nc_beta = config.nc_beta == "l12" ? NcBetaVariant::kPreviousL12 : NcBetaVariant::kPreviousL22;

  const std::string& name = config.problem;
  const bool section4 = name == "synthetic" || name == "dirac-gan";
  if (config.terminate_on == "gap") {
    s.terminate_on = TerminationMetric::kGap;
  } else if (config.terminate_on == "grad-norm") {
    s.terminate_on = TerminationMetric::kGradientNorm;
  } else if (config.terminate_on == "reg-gap") {
    s.terminate_on = TerminationMetric::kRegularizedGap;
  } else {
    s.terminate_on = section4 ? TerminationMetric::kGradientNorm : TerminationMetric::kGap;
  }

  std::vector<double> x0(static_cast<std::size_t>(problem.dim_x), 0.0);
  std::vector<double> y0(static_cast<std::size_t>(problem.dim_y), 0.0);
  PowerSchedule ax{0.1, 0.0}, by{0.1, 0.0}, ck{0.0, 0.0};
  if (name == "synthetic") {
    x0 = {0.0, 0.0, 2.0};
    ax = {0.14, 0.0};
    by = {1.1, 0.0};
  } else if (name == "dirac-gan") {
    x0 = {1.0};
    y0 = {1.0};
    ax = {0.8, 0.5};
    by = {0.3, 0.0};
    ck = {0.5, 0.25};
  } else if (name == "robust-domains" || name == "robust-logistic") {
    y0.assign(y0.size(), 1.0 / static_cast<double>(problem.dim_y));
  } else if (name == "quadratic") {
    x0.assign(x0.size(), 1.0);
  }
  s.x0 = to_vector(or_default(config.x0, x0));
  s.y0 = to_vector(or_default(config.y0, y0));
  s.agp_step_x = {config.agp_alpha.value_or(ax.scale), config.agp_alpha_power.value_or(ax.power)};
  s.agp_step_y = {config.agp_beta.value_or(by.scale), config.agp_beta_power.value_or(by.power)};
  s.agp_c = {config.agp_c.value_or(ck.scale), config.agp_c_power.value_or(ck.power)};

  s.mu_true = config.mu_true;
  s.s_lower = config.s_lower;
  if (problem.known_constants && name == "quadratic") {
    // f(x, 0) bounds max_y f from below on the x ball.
    if (!s.mu_true) s.mu_true = problem.known_constants->mu;
    if (!s.s_lower) s.s_lower = -0.5 * problem.known_constants->l11 * config.radius * config.radius;
  }
  return s;
}

std::filesystem::path output_path(const RunConfig& config) {
  if (config.output) return *config.output;
  return config.problem + "_" + config.solver + "." + to_string(config.format);
}

}  // namespace minimax::harness
