#include "minimax/problems.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "minimax/error.hpp"

namespace minimax {

namespace {

void validate(const SyntheticParams& p) {
  if (!(p.eps > 0.0) || !std::isfinite(p.eps)) throw Error(ErrorKind::kParameter, "synthetic eps must be positive");
  if (!(p.lambda > 1.0) || !std::isfinite(p.lambda)) {
    throw Error(ErrorKind::kParameter, "synthetic lambda must exceed 1");
  }
  if (p.y_box && !(*p.y_box > 0.0)) throw Error(ErrorKind::kParameter, "synthetic y box must be positive");
}

double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_size(const Vector& v, Eigen::Index n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorKind::kShape, std::string(what) + " has length " + std::to_string(v.size()) +
                                       ", expected " + std::to_string(n));
  }
}

}  // namespace

ValueAndDerivative w_eval(double x, const SyntheticParams& params) {
  const double eps = params.eps;
  const double lam = params.lambda;
  const double s = std::sqrt(eps);
  const double e32 = eps * s;
  if (x <= -lam * s) {
    const double u = x + (lam + 1.0) * s;
    return {s * u * u - u * u * u / 3.0 - (3.0 * lam + 1.0) * e32 / 3.0, 2.0 * s * u - u * u};
  }
  if (x <= -s) return {eps * x + e32 / 3.0, eps};
  if (x <= 0.0) return {-s * x * x - x * x * x / 3.0, -2.0 * s * x - x * x};
  if (x <= s) return {-s * x * x + x * x * x / 3.0, -2.0 * s * x + x * x};
  if (x <= lam * s) return {-eps * x + e32 / 3.0, -eps};
  const double u = x - (lam + 1.0) * s;
  return {s * u * u + u * u * u / 3.0 - (3.0 * lam + 1.0) * e32 / 3.0, 2.0 * s * u + u * u};
}

std::vector<double> w_breakpoints(const SyntheticParams& params) {
  const double s = std::sqrt(params.eps);
  return {-params.lambda * s, -s, 0.0, s, params.lambda * s};
}

MinimaxProblem make_synthetic(const SyntheticParams& params) {
  validate(params);
  MinimaxProblem p;
  p.name = "synthetic";
  p.dim_x = 3;
  p.dim_y = 2;
  p.value = [params](const Vector& x, const Vector& y) {
    return w_eval(x(2), params).value - y(0) * y(0) / 40.0 + x(0) * y(0) - 2.5 * y(1) * y(1) +
           x(1) * y(1);
  };
  p.grad_x = [params](const Vector& x, const Vector& y) {
    Vector g(3);
    g << y(0), y(1), w_eval(x(2), params).derivative;
    return g;
  };
  p.grad_y = [](const Vector& x, const Vector& y) {
    Vector g(2);
    g << x(0) - y(0) / 20.0, x(1) - 5.0 * y(1);
    return g;
  };
  p.set_x = FeasibleSet::unconstrained(3);
  p.set_y = params.y_box ? FeasibleSet::box(2, -*params.y_box, *params.y_box) : FeasibleSet::unconstrained(2);
  return p;
}

MinimaxProblem make_dirac_gan(std::optional<double> y_box) {
  if (y_box && !(*y_box > 0.0)) throw Error(ErrorKind::kParameter, "dirac-gan y box must be positive");
  MinimaxProblem p;
  p.name = "dirac-gan";
  p.dim_x = 1;
  p.dim_y = 1;
  p.value = [](const Vector& x, const Vector& y) {
    return -softplus(-x(0) * y(0)) + std::numbers::ln2;
  };
  p.grad_x = [](const Vector& x, const Vector& y) {
    return Vector::Constant(1, y(0) * sigmoid(-x(0) * y(0)));
  };
  p.grad_y = [](const Vector& x, const Vector& y) {
    return Vector::Constant(1, x(0) * sigmoid(-x(0) * y(0)));
  };
  p.set_x = FeasibleSet::unconstrained(1);
  p.set_y = y_box ? FeasibleSet::box(1, -*y_box, *y_box) : FeasibleSet::unconstrained(1);
  return p;
}

MinimaxProblem make_robust_domains(const RobustDomainsSpec& spec) {
  const auto m = static_cast<int>(spec.domains.size());
  if (m < 2) throw Error(ErrorKind::kShape, "robust domains need at least two domains, got " + std::to_string(m));
  if (spec.dim_x <= 0) throw Error(ErrorKind::kShape, "robust domains need a positive x dimension");
  for (const auto& d : spec.domains) {
    if (!d.value || !d.gradient) throw Error(ErrorKind::kParameter, "domain '" + d.name + "' lacks an oracle");
  }
  if (spec.set_x && spec.set_x->dimension() != spec.dim_x) {
    throw Error(ErrorKind::kShape, "robust domains: X dimension does not match dim_x");
  }

  auto domains = std::make_shared<const std::vector<DomainLoss>>(spec.domains);
  const int n = spec.dim_x;
  MinimaxProblem p;
  p.name = "robust-domains";
  p.dim_x = n;
  p.dim_y = m;
  p.linear_in_y = true;
  p.value = [domains](const Vector& x, const Vector& y) {
    double v = 0.0;
    for (std::size_t i = 0; i < domains->size(); ++i) v += y(static_cast<Eigen::Index>(i)) * (*domains)[i].value(x);
    return v;
  };
  p.grad_x = [domains, n](const Vector& x, const Vector& y) {
    Vector g = Vector::Zero(n);
    for (std::size_t i = 0; i < domains->size(); ++i) {
      const Vector gi = (*domains)[i].gradient(x);
      check_size(gi, n, "domain gradient");
      g += y(static_cast<Eigen::Index>(i)) * gi;
    }
    return g;
  };
  p.grad_y = [domains](const Vector& x, const Vector&) {
    Vector g(static_cast<Eigen::Index>(domains->size()));
    for (std::size_t i = 0; i < domains->size(); ++i) g(static_cast<Eigen::Index>(i)) = (*domains)[i].value(x);
    return g;
  };
  p.set_x = spec.set_x ? *spec.set_x : FeasibleSet::unconstrained(n);
  p.set_y = FeasibleSet::simplex(m);
  return p;
}

DomainLoss quadratic_domain(Vector target) {
  DomainLoss d;
  std::ostringstream name;
  name << "quadratic(" << target.transpose() << ")";
  d.name = name.str();
  d.value = [target](const Vector& x) {
    check_size(x, target.size(), "x");
    return 0.5 * (x - target).squaredNorm();
  };
  d.gradient = [target](const Vector& x) {
    check_size(x, target.size(), "x");
    return Vector(x - target);
  };
  return d;
}

RobustDomainsSpec three_quadratic_domains() {
  RobustDomainsSpec spec;
  spec.dim_x = 2;
  spec.domains.push_back(quadratic_domain(Eigen::Vector2d(2.0, 0.0)));
  spec.domains.push_back(quadratic_domain(Eigen::Vector2d(-1.0, 1.0)));
  spec.domains.push_back(quadratic_domain(Eigen::Vector2d(0.0, -2.0)));
  return spec;
}

int Dataset::num_classes() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read dataset " + path.string());

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::vector<double> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      std::string_view tok = rest.substr(0, comma);
      while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
      while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) tok.remove_suffix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::kShape, path.string() + ":" + std::to_string(line_no) + ": malformed field '" +
                                           std::string(tok) + "'");
      }
      fields.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() < 2) {
      throw Error(ErrorKind::kShape, path.string() + ":" + std::to_string(line_no) + ": need features and a label");
    }
    const double label = fields.back();
    fields.pop_back();
    if (label < 0.0 || label != std::floor(label)) {
      throw Error(ErrorKind::kShape, path.string() + ":" + std::to_string(line_no) + ": label must be a nonnegative integer");
    }
    if (!rows.empty() && fields.size() != rows.front().size()) {
      throw Error(ErrorKind::kShape, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                         std::to_string(rows.front().size()) + " features");
    }
    rows.push_back(std::move(fields));
    labels.push_back(static_cast<int>(label));
  }
  if (rows.empty()) throw Error(ErrorKind::kShape, "dataset " + path.string() + " has no samples");

  Dataset data;
  data.features.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  data.labels = std::move(labels);
  return data;
}

DomainLoss logistic_domain(Dataset data, int num_classes, double l2, std::string name) {
  if (num_classes < 2) throw Error(ErrorKind::kParameter, "logistic domain needs at least two classes");
  if (num_classes < data.num_classes()) throw Error(ErrorKind::kShape, "dataset label exceeds the class count");
  if (!(l2 >= 0.0)) throw Error(ErrorKind::kParameter, "l2 weight must be nonnegative");
  if (data.features.rows() == 0) throw Error(ErrorKind::kShape, "logistic domain needs samples");

  const Eigen::Index n = data.features.rows();
  const Eigen::Index p = data.features.cols() + 1;
  auto z = std::make_shared<Eigen::MatrixXd>(n, p);
  z->leftCols(p - 1) = data.features;
  z->col(p - 1).setOnes();
  auto labels = std::make_shared<const std::vector<int>>(std::move(data.labels));
  const Eigen::Index k = num_classes;

  // Softmax probabilities minus one-hot labels, plus the mean loss.
  auto residual = [z, labels, k, p, n](const Vector& x, Eigen::MatrixXd* r) {
    check_size(x, k * p, "x");
    const Eigen::Map<const Eigen::MatrixXd> w(x.data(), p, k);
    Eigen::MatrixXd s = (*z) * w;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double top = s.row(i).maxCoeff();
      const double lse = top + std::log((s.row(i).array() - top).exp().sum());
      const int y = (*labels)[static_cast<std::size_t>(i)];
      loss += lse - s(i, y);
      if (r) {
        s.row(i) = (s.row(i).array() - lse).exp();
        s(i, y) -= 1.0;
      }
    }
    if (r) *r = std::move(s);
    return loss / static_cast<double>(n);
  };

  DomainLoss d;
  d.name = name.empty() ? "logistic" : std::move(name);
  d.value = [residual, l2](const Vector& x) { return residual(x, nullptr) + 0.5 * l2 * x.squaredNorm(); };
  d.gradient = [residual, z, l2, k, p, n](const Vector& x) {
    Eigen::MatrixXd r;
    residual(x, &r);
    const Eigen::MatrixXd gw = z->transpose() * r / static_cast<double>(n);
    Vector g = Eigen::Map<const Vector>(gw.data(), k * p);
    return Vector(g + l2 * x);
  };
  return d;
}

RobustDomainsSpec logistic_domains(const std::vector<std::filesystem::path>& files, double l2) {
  std::vector<Dataset> sets;
  int classes = 2;
  for (const auto& f : files) {
    sets.push_back(load_dataset(f));
    classes = std::max(classes, sets.back().num_classes());
    if (sets.back().features.cols() != sets.front().features.cols()) {
      throw Error(ErrorKind::kShape, "dataset " + f.string() + " has a different feature count");
    }
  }
  RobustDomainsSpec spec;
  if (!sets.empty()) spec.dim_x = classes * static_cast<int>(sets.front().features.cols() + 1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    spec.domains.push_back(logistic_domain(std::move(sets[i]), classes, l2, files[i].stem().string()));
  }
  return spec;
}

MinimaxProblem make_quadratic_oracle(const QuadraticOracleSpec& spec) {
  const Eigen::MatrixXd& q = spec.q;
  const Eigen::MatrixXd& b = spec.b;
  if (q.rows() == 0 || q.rows() != q.cols()) throw Error(ErrorKind::kShape, "Q must be square and nonempty");
  if (b.rows() != q.rows() || b.cols() == 0) throw Error(ErrorKind::kShape, "B must have as many rows as Q");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::kShape, "Q must be symmetric");
  }
  if (!(spec.a > 0.0)) throw Error(ErrorKind::kParameter, "modulus a must be positive");
  if (!(spec.radius_x > 0.0) || !(spec.radius_y > 0.0)) {
    throw Error(ErrorKind::kParameter, "ball radii must be positive");
  }

  const auto n = static_cast<int>(q.rows());
  const auto m = static_cast<int>(b.cols());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
  const double l11 = eig.eigenvalues().cwiseAbs().maxCoeff();
  const double l12 = Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues()(0);
  const double a = spec.a;

  MinimaxProblem p;
  p.name = "quadratic";
  p.dim_x = n;
  p.dim_y = m;
  p.value = [q, b, a](const Vector& x, const Vector& y) {
    return 0.5 * x.dot(q * x) + x.dot(b * y) - 0.5 * a * y.squaredNorm();
  };
  p.grad_x = [q, b](const Vector& x, const Vector& y) { return Vector(q * x + b * y); };
  p.grad_y = [b, a](const Vector& x, const Vector& y) { return Vector(b.transpose() * x - a * y); };
  p.set_x = FeasibleSet::ball(Vector::Zero(n), spec.radius_x);
  p.set_y = FeasibleSet::ball(Vector::Zero(m), spec.radius_y);
  p.known_constants = KnownConstants{l11, l12, a, a};
  return p;
}

QuadraticOracleSpec reference_quadratic_spec() {
  QuadraticOracleSpec spec;
  spec.q = Eigen::Vector2d(2.0, -2.0).asDiagonal();
  spec.b = Eigen::MatrixXd::Identity(2, 2);
  spec.a = 0.5;
  return spec;
}

QuadraticOracleSpec random_quadratic_spec(int n, int m, double a, unsigned seed) {
  if (n < 2 || m < 1) throw Error(ErrorKind::kShape, "random quadratic needs n >= 2 and m >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  const Eigen::MatrixXd g = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return unit(rng); });
  const Eigen::MatrixXd v = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Vector lam(n);
  for (int i = 0; i < n; ++i) lam(i) = (i % 2 == 0 ? 1.0 : -1.0) * mag(rng);

  QuadraticOracleSpec spec;
  spec.q = v * lam.asDiagonal() * v.transpose();
  spec.q = 0.5 * (spec.q + spec.q.transpose()).eval();
  spec.b = Eigen::MatrixXd::NullaryExpr(n, m, [&] { return unit(rng); });
  spec.a = a;
  return spec;
}

}  // namespace minimax
