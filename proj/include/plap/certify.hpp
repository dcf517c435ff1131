#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plap/decomposition.hpp"
#include "plap/eigensolve.hpp"
#include "plap/geometry.hpp"

namespace plap {

enum class Strategy { conformal, fixed_metric };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy strategy);

struct BoundCertificate {
  double p = 2.0;
  int k = 1;
  double kappa = 0.0;
  Strategy strategy = Strategy::fixed_metric;
  double value = 0.0;
  std::vector<double> per_capacitor_rayleigh;
  std::vector<int> selected;  // indices into decomposition.capacitors
  DecompositionCertificate decomposition;

  bool supports_disjoint = true;
  // Both measures of every selected outer set are at most 1/k of the total.
  bool measure_feasible = true;
  std::vector<double> lipschitz_budgets;
  std::vector<double> holder_majorants;  // empty for p > 2
  double c0 = 0.0;                       // max measured c0 over ball-union cutoffs
  std::optional<double> kappa_constant;  // value / kappa^p for ball-union forms
};

struct CertifyOptions {
  int overprovision = 3;
  MergedOptions merged = default_merged();

  static MergedOptions default_merged() {
    MergedOptions m;
    m.annuli.c_target = 0.1;
    return m;
  }
};

/// Upper bound for the discrete mu_{k,p}: maximum Rayleigh quotient over k
/// disjointly supported cutoffs built on a merged decomposition.
BoundCertificate certify_bound(const Mesh& mesh, double p, int k, Strategy strategy, double kappa,
                               const CertifyOptions& options = {});

/// Certificates for several exponents sharing one decomposition.
std::vector<BoundCertificate> certify_bounds(const Mesh& mesh, std::span<const double> ps, int k, Strategy strategy,
                                             double kappa, const CertifyOptions& options = {});

/// Recomputes the value from the stored decomposition and re-checks support
/// separation; throws std::logic_error on mismatch.
void verify_bound(const Mesh& mesh, const BoundCertificate& cert);

ConsistencyReport bound_consistency(const Spectrum& spectrum, const BoundCertificate& cert);
ConsistencyReport bound_consistency(const Spectrum& spectrum, std::span<const BoundCertificate> certs);

struct SlopeFit {
  bool defined = false;
  double slope = 0.0;
  double intercept = 0.0;
  int k_min = 0;
  int points = 0;
};

/// Least squares of log value on log k over entries with k ≥ k_min (default
/// max(8, midpoint of the k range)).
SlopeFit slope_fit(std::span<const std::pair<int, double>> entries, std::optional<int> k_min = std::nullopt);

struct BoundCurve {
  double p = 2.0;
  int n = 2;
  std::vector<std::pair<int, double>> entries;
  SlopeFit fit;
  std::vector<BoundCertificate> certificates;
};

BoundCurve bound_curve(const Mesh& mesh, double p, std::span<const int> k_range, Strategy strategy, double kappa,
                       const CertifyOptions& options = {});
std::vector<BoundCurve> bound_curves(const Mesh& mesh, std::span<const double> ps, std::span<const int> k_range,
                                     Strategy strategy, double kappa, const CertifyOptions& options = {});

double unit_ball_volume(int n);
double kroger_constant(int n);
double beta_constant(double p, int n);
double beta_prime_constant(double p, int n, double c_prime);
double weyl_reference(int n, double volume);

}  // namespace plap
