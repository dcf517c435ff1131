#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "plap/geometry.hpp"

namespace plap {

enum class SpectrumMethod { dense_sym, descent, closed_form };

std::string to_string(SpectrumMethod method);

struct Spectrum {
  double p = 2.0;
  std::vector<double> values;
  std::vector<double> residuals;
  SpectrumMethod method = SpectrumMethod::dense_sym;
};

inline constexpr std::size_t kDenseVertexCap = 5000;

/// Smallest kmax eigenvalues of K u = mu M u (P1 stiffness, lumped mass).
Spectrum neumann_spectrum_p2(const Mesh& mesh, int kmax);
/// Same, also returning M-orthonormal eigenvectors as columns.
Spectrum neumann_spectrum_p2(const Mesh& mesh, int kmax, Eigen::MatrixXd& vectors);

struct FirstEigOptions {
  int max_iterations = 2000;
  std::optional<Eigen::VectorXd> initial;
};

struct FirstEigResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> history;  // Rayleigh quotient after each accepted step
  Eigen::VectorXd u;
};

/// Second variational eigenvalue: minimises R_p under the constraint
/// Σ m |u|^{p-2} u = 0 by preconditioned descent.
FirstEigResult first_eig_p(const Mesh& mesh, double p, double tol, const FirstEigOptions& options = {});

/// Shift t making Σ m |u + t|^{p-2} (u + t) vanish.
double constraint_shift(const Eigen::VectorXd& u, const Eigen::VectorXd& m, double p);

struct ConsistencyEntry {
  int k = 0;
  double eigenvalue = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound / eigenvalue (inf when the eigenvalue is 0)
};

struct ConsistencyReport {
  bool ok = true;
  std::vector<ConsistencyEntry> entries;
  std::vector<ConsistencyEntry> violations;
};

/// Checks spectrum.values[k-1] ≤ bound for every (k, bound) pair available.
ConsistencyReport bound_consistency(const Spectrum& spectrum, std::span<const std::pair<int, double>> bounds);

}  // namespace plap
