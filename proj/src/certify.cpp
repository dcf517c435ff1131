#include "plap/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "plap/energy.hpp"
#include "plap/parallel.hpp"
#include "plap/testfn.hpp"

namespace plap {

Strategy parse_strategy(const std::string& name) {
  if (name == "fixed" || name == "fixed_metric") return Strategy::fixed_metric;
  if (name == "conformal") return Strategy::conformal;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string to_string(Strategy strategy) {
  return strategy == Strategy::conformal ? "conformal" : "fixed_metric";
}

namespace {

DistanceMetric metric_for(Strategy strategy) {
  return strategy == Strategy::conformal ? DistanceMetric::background : DistanceMetric::rescaled;
}

std::vector<double> flat_lumped_measure(const Mesh& mesh) {
  std::vector<double> m(mesh.vertex_count(), 0.0);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    for (Vertex v : mesh.triangles()[t]) m[static_cast<std::size_t>(v)] += mesh.flat_area(t) / 3.0;
  }
  return m;
}

void check_arguments(std::span<const double> ps, int k, Strategy strategy, double kappa) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be nonnegative");
  for (double p : ps) {
    if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
    if (strategy == Strategy::conformal && p > 2.0)
      throw std::invalid_argument("conformal strategy not possible for p > n");
  }
}

std::vector<int> select_capacitors(const Mesh& mesh, const DiscreteSpace& space,
                                   const DecompositionCertificate& decomposition, int k, Strategy strategy,
                                   bool& feasible) {
  const auto& caps = decomposition.capacitors;
  std::vector<double> key(caps.size());
  const double total = space.total_measure();
  std::vector<double> flat;
  double flat_total = 0.0;
  if (strategy == Strategy::conformal) {
    flat = flat_lumped_measure(mesh);
    flat_total = std::accumulate(flat.begin(), flat.end(), 0.0);
  }
  for (std::size_t i = 0; i < caps.size(); ++i) {
    key[i] = caps[i].outer.measure() / total;
    if (strategy == Strategy::conformal) {
      double m0 = 0.0;
      for (Vertex v : caps[i].outer.members()) m0 += flat[static_cast<std::size_t>(v)];
      key[i] = std::max(key[i], m0 / flat_total);
    }
  }
  std::vector<int> order(caps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]; });
  order.resize(static_cast<std::size_t>(k));
  feasible = true;
  for (int i : order) {
    if (key[static_cast<std::size_t>(i)] > (1.0 / k) * (1.0 + 1e-12)) feasible = false;
  }
  std::sort(order.begin(), order.end());
  return order;
}

void evaluate(const Mesh& mesh, const std::vector<TestFunction>& family, BoundCertificate& cert) {
  cert.per_capacitor_rayleigh.clear();
  cert.lipschitz_budgets.clear();
  cert.holder_majorants.clear();
  cert.c0 = 0.0;
  cert.value = 0.0;
  for (const auto& u : family) {
    const double R = rayleigh(mesh, u.values, cert.p);
    cert.per_capacitor_rayleigh.push_back(R);
    cert.value = std::max(cert.value, R);
    cert.lipschitz_budgets.push_back(u.lipschitz_budget);
    cert.c0 = std::max(cert.c0, u.c0);
    if (cert.p <= 2.0)
      cert.holder_majorants.push_back(holder_split_bound(mesh, u.values, cert.p, gradient_support_measure(mesh, u.values)));
  }
  if (cert.kappa > 0.0 && cert.decomposition.form == DecompositionForm::ball_unions)
    cert.kappa_constant = cert.value / std::pow(cert.kappa, cert.p);
}

}  // namespace

std::vector<BoundCertificate> certify_bounds(const Mesh& mesh, std::span<const double> ps, int k, Strategy strategy,
                                             double kappa, const CertifyOptions& options) {
  check_arguments(ps, k, strategy, kappa);
  const DiscreteSpace space = space_from_mesh(mesh, metric_for(strategy));
  std::vector<BoundCertificate> out;

  if (k == 1) {
    const TestFunction one = constant_function(space);
    Capacitor whole;
    whole.inner = one.support;
    whole.outer = one.support;
    whole.separation = kInfinity;
    for (double p : ps) {
      BoundCertificate cert;
      cert.p = p;
      cert.k = 1;
      cert.kappa = kappa;
      cert.strategy = strategy;
      cert.decomposition.k = 1;
      cert.decomposition.capacitors = {whole};
      cert.decomposition.measure_floor = space.total_measure();
      cert.decomposition.certified_c = 1.0;
      cert.decomposition.disjoint = cert.decomposition.separated = true;
      cert.decomposition.note = "constant function";
      cert.selected = {0};
      evaluate(mesh, {one}, cert);
      out.push_back(std::move(cert));
    }
    return out;
  }

  const double a = kappa > 0.0 ? 1.0 / kappa : kInfinity;
  const int count = std::max(1, options.overprovision) * k;
  DecompositionCertificate decomposition = merged_decomposition(space, count, a, options.merged);
  verify_certificate(space, decomposition);
  if (!decomposition.disjoint || !decomposition.separated)
    throw std::logic_error("decomposition outer sets are not separated");

  bool feasible = true;
  const std::vector<int> selected = select_capacitors(mesh, space, decomposition, k, strategy, feasible);
  std::vector<TestFunction> family;
  for (int i : selected) family.push_back(capacitor_function(space, decomposition.capacitors[static_cast<std::size_t>(i)]));
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (!family[j].support.is_subset_of(decomposition.capacitors[static_cast<std::size_t>(selected[j])].outer))
      throw std::logic_error("test function support leaves its capacitor");
  }
  const bool separated = supports_separated(space, family);
  if (!separated) throw std::logic_error("test function supports are not separated");

  for (double p : ps) {
    BoundCertificate cert;
    cert.p = p;
    cert.k = k;
    cert.kappa = kappa;
    cert.strategy = strategy;
    cert.decomposition = decomposition;
    cert.selected = selected;
    cert.supports_disjoint = separated;
    cert.measure_feasible = feasible;
    evaluate(mesh, family, cert);
    out.push_back(std::move(cert));
  }
  return out;
}

BoundCertificate certify_bound(const Mesh& mesh, double p, int k, Strategy strategy, double kappa,
                               const CertifyOptions& options) {
  const double ps[] = {p};
  return std::move(certify_bounds(mesh, ps, k, strategy, kappa, options).front());
}

void verify_bound(const Mesh& mesh, const BoundCertificate& cert) {
  const DiscreteSpace space = space_from_mesh(mesh, metric_for(cert.strategy));
  if (cert.k == 1) {
    if (cert.value != 0.0) throw std::logic_error("k = 1 certificate must have value 0");
    return;
  }
  verify_certificate(space, cert.decomposition);
  std::vector<TestFunction> family;
  for (int i : cert.selected)
    family.push_back(capacitor_function(space, cert.decomposition.capacitors.at(static_cast<std::size_t>(i))));
  if (!supports_separated(space, family)) throw std::logic_error("test function supports are not separated");
  double value = 0.0;
  for (std::size_t j = 0; j < family.size(); ++j) {
    const double R = rayleigh(mesh, family[j].values, cert.p);
    if (R != cert.per_capacitor_rayleigh.at(j)) throw std::logic_error("Rayleigh quotient does not match recomputation");
    value = std::max(value, R);
  }
  if (value != cert.value) throw std::logic_error("certificate value is not the maximum Rayleigh quotient");
}

ConsistencyReport bound_consistency(const Spectrum& spectrum, const BoundCertificate& cert) {
  return bound_consistency(spectrum, std::span<const BoundCertificate>(&cert, 1));
}

ConsistencyReport bound_consistency(const Spectrum& spectrum, std::span<const BoundCertificate> certs) {
  std::vector<std::pair<int, double>> pairs;
  for (const auto& c : certs) {
    if (c.p != spectrum.p) throw std::invalid_argument("certificate and spectrum use different p");
    pairs.emplace_back(c.k, c.value);
  }
  return bound_consistency(spectrum, std::span<const std::pair<int, double>>(pairs));
}

SlopeFit slope_fit(std::span<const std::pair<int, double>> entries, std::optional<int> k_min) {
  SlopeFit fit;
  if (entries.empty()) return fit;
  const int lo = entries.front().first, hi = entries.back().first;
  fit.k_min = k_min ? *k_min : std::max(8, static_cast<int>(std::ceil(0.5 * (lo + hi))));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [k, v] : entries) {
    if (k < fit.k_min || !(v > 0.0)) continue;
    const double x = std::log(static_cast<double>(k)), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++fit.points;
  }
  const double n = fit.points;
  const double den = n * sxx - sx * sx;
  if (fit.points < 2 || !(den > 1e-12 * n * sxx)) return fit;
  fit.defined = true;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

std::vector<BoundCurve> bound_curves(const Mesh& mesh, std::span<const double> ps, std::span<const int> k_range,
                                     Strategy strategy, double kappa, const CertifyOptions& options) {
  if (k_range.empty()) throw std::invalid_argument("k range must be nonempty");
  if (!std::is_sorted(k_range.begin(), k_range.end()) ||
      std::adjacent_find(k_range.begin(), k_range.end()) != k_range.end())
    throw std::invalid_argument("k range must be strictly ascending");
  std::vector<std::vector<BoundCertificate>> per_k(k_range.size());
  parallel_for(k_range.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) per_k[i] = certify_bounds(mesh, ps, k_range[i], strategy, kappa, options);
  });
  std::vector<BoundCurve> curves;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    BoundCurve curve;
    curve.p = ps[j];
    for (std::size_t i = 0; i < k_range.size(); ++i) {
      curve.entries.emplace_back(k_range[i], per_k[i][j].value);
      curve.certificates.push_back(std::move(per_k[i][j]));
    }
    curve.fit = slope_fit(curve.entries);
    curves.push_back(std::move(curve));
  }
  return curves;
}

BoundCurve bound_curve(const Mesh& mesh, double p, std::span<const int> k_range, Strategy strategy, double kappa,
                       const CertifyOptions& options) {
  const double ps[] = {p};
  return std::move(bound_curves(mesh, ps, k_range, strategy, kappa, options).front());
}

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double kroger_constant(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  const double w = unit_ball_volume(n);
  return std::pow((2.0 + n) / 2.0, 2.0 / n) * 4.0 * std::numbers::pi * std::numbers::pi * std::pow(w, -2.0 / n);
}

double beta_constant(double p, int n) {
  if (!(p > 1.0) || p > n) throw std::invalid_argument("beta constant needs 1 < p <= n");
  const double w = unit_ball_volume(n);
  const double e = (n - 1.0) * p / n;
  return std::pow(2.0, e) * std::pow(w, p / n) * std::exp(e);
}

double beta_prime_constant(double p, int n, double c_prime) {
  if (!(p > 1.0) || p > n) throw std::invalid_argument("beta constant needs 1 < p <= n");
  if (!(c_prime > 0.0)) throw std::invalid_argument("c' must be positive");
  const double w = unit_ball_volume(n);
  return std::pow(2.0, 2.0 * p) * std::pow(w * std::exp(n - 1.0) / c_prime, p / n);
}

double weyl_reference(int n, double volume) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (!(volume > 0.0)) throw std::invalid_argument("volume must be positive");
  const double w = unit_ball_volume(n);
  return 4.0 * std::numbers::pi * std::numbers::pi * std::pow(w, -2.0 / n) * std::pow(volume, -2.0 / n);
}

}  // namespace plap
