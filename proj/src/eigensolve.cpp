#include "plap/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#include <lapacke.h>

#include "plap/energy.hpp"

namespace plap {

std::string to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::dense_sym: return "dense_sym";
    case SpectrumMethod::descent: return "descent";
    case SpectrumMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

Spectrum neumann_spectrum_p2(const Mesh& mesh, int kmax) {
  Eigen::MatrixXd vectors;
  return neumann_spectrum_p2(mesh, kmax, vectors);
}

Spectrum neumann_spectrum_p2(const Mesh& mesh, int kmax, Eigen::MatrixXd& vectors) {
  const auto n = static_cast<lapack_int>(mesh.vertex_count());
  if (mesh.vertex_count() > kDenseVertexCap) throw std::invalid_argument("mesh exceeds dense solver size cap");
  if (kmax < 1 || kmax > n) throw std::invalid_argument("kmax must lie in [1, vertex count]");

  const Eigen::SparseMatrix<double> K = stiffness_matrix(mesh);
  const Eigen::VectorXd m = lumped_mass(mesh);
  const Eigen::VectorXd s = m.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd S = Eigen::MatrixXd(K);
  S = s.asDiagonal() * S * s.asDiagonal();
  S = 0.5 * (S + S.transpose()).eval();

  std::vector<double> w(static_cast<std::size_t>(n));
  Eigen::MatrixXd Z(n, kmax);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(kmax));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, S.data(), n, 0.0, 0.0, 1, kmax, 0.0,
                                         &found, w.data(), Z.data(), n, isuppz.data());
  if (info != 0 || found != kmax) throw std::runtime_error("dense eigensolver did not converge");

  Spectrum out;
  out.p = 2.0;
  out.method = SpectrumMethod::dense_sym;
  vectors = s.asDiagonal() * Z;
  for (lapack_int i = 0; i < kmax; ++i) {
    const Eigen::VectorXd u = vectors.col(i);
    const Eigen::VectorXd Mu = m.cwiseProduct(u);
    const double res = (K * u - w[static_cast<std::size_t>(i)] * Mu).norm() / Mu.norm();
    out.values.push_back(w[static_cast<std::size_t>(i)]);
    out.residuals.push_back(res);
    if (!(res <= 1e-8)) throw std::runtime_error("eigenpair residual above 1e-8");
  }
  // The constants span the kernel exactly; round-off in w[0] is replaced by
  // the exact value and the residual of the constant vector is reported.
  if (std::abs(out.values[0]) <= 1e-9 * std::max(1.0, std::abs(out.values.back()))) {
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(n);
    out.values[0] = 0.0;
    out.residuals[0] = (K * one).norm() / m.norm();
    vectors.col(0) = one / std::sqrt(m.sum());
  }
  return out;
}

double constraint_shift(const Eigen::VectorXd& u, const Eigen::VectorXd& m, double p) {
  if (p == 2.0) return -m.dot(u) / m.sum();
  auto c = [&](double t) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double x = u[i] + t;
      s += m[i] * std::copysign(std::pow(std::abs(x), p - 1.0), x);
    }
    return s;
  };
  double lo = -u.maxCoeff(), hi = -u.minCoeff();
  if (lo == hi) return lo;
  const double scale = hi - lo;
  while (hi - lo > 1e-12 * scale) {
    const double mid = 0.5 * (lo + hi);
    if (c(mid) > 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct Normalized {
  Eigen::VectorXd u;
  double R = 0.0;
};

Normalized project(const Mesh& mesh, const Eigen::VectorXd& m, Eigen::VectorXd u, double p) {
  u.array() += constraint_shift(u, m, p);
  double mass = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) mass += m[i] * std::pow(std::abs(u[i]), p);
  if (!(mass > 0.0)) throw std::runtime_error("descent iterate collapsed to zero");
  u /= std::pow(mass, 1.0 / p);
  const std::span<const double> view(u.data(), static_cast<std::size_t>(u.size()));
  return {u, p_dirichlet(mesh, view, p)};
}

}  // namespace

FirstEigResult first_eig_p(const Mesh& mesh, double p, double tol, const FirstEigOptions& options) {
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!space_from_mesh(mesh).is_connected()) throw std::invalid_argument("disconnected domain");
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  const Eigen::SparseMatrix<double> K = stiffness_matrix(mesh);
  const Eigen::VectorXd m = lumped_mass(mesh);
  Eigen::SparseMatrix<double> P = K;
  for (Eigen::Index i = 0; i < n; ++i) P.coeffRef(i, i) += m[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(P);
  if (solver.info() != Eigen::Success) throw std::runtime_error("preconditioner factorisation failed");

  Eigen::VectorXd u0;
  if (options.initial) {
    if (options.initial->size() != n) throw std::invalid_argument("initial guess has wrong size");
    u0 = *options.initial;
  } else {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    u0.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) u0[i] = dist(rng);
    for (int it = 0; it < 30; ++it) {
      u0.array() -= m.dot(u0) / m.sum();
      u0 = solver.solve(m.cwiseProduct(u0)).eval();
      u0 /= std::sqrt(u0.dot(m.cwiseProduct(u0)));
    }
  }

  FirstEigResult out;
  Normalized cur = project(mesh, m, u0, p);
  out.history.push_back(cur.R);
  double alpha = 1.0;
  int quiet = 0;
  for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
    const std::span<const double> view(cur.u.data(), static_cast<std::size_t>(n));
    // With Σ m |u|^p = 1 the gradient of R is grad E - p R m |u|^{p-2} u.
    Eigen::VectorXd g = p_dirichlet_gradient(mesh, view, p);
    for (Eigen::Index i = 0; i < n; ++i)
      g[i] -= p * cur.R * m[i] * std::copysign(std::pow(std::abs(cur.u[i]), p - 1.0), cur.u[i]);
    const Eigen::VectorXd d = -solver.solve(g);
    const double slope = g.dot(d);
    if (!(slope < 0.0)) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    Normalized next;
    for (int bt = 0; bt < 50; ++bt) {
      next = project(mesh, m, cur.u + alpha * d, p);
      if (next.R <= cur.R + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted || !(next.R <= cur.R)) {
      out.converged = true;
      break;
    }
    const double decrease = (cur.R - next.R) / std::max(cur.R, 1e-300);
    cur = std::move(next);
    out.history.push_back(cur.R);
    alpha = std::min(1.0, alpha * 2.0);
    quiet = decrease < tol / 10.0 ? quiet + 1 : 0;
    if (quiet >= 3) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }
  out.value = cur.R;
  out.u = cur.u;
  return out;
}

ConsistencyReport bound_consistency(const Spectrum& spectrum, std::span<const std::pair<int, double>> bounds) {
  ConsistencyReport report;
  for (const auto& [k, bound] : bounds) {
    if (k < 1 || static_cast<std::size_t>(k) > spectrum.values.size()) continue;
    ConsistencyEntry e;
    e.k = k;
    e.eigenvalue = spectrum.values[static_cast<std::size_t>(k - 1)];
    e.bound = bound;
    e.slack = e.eigenvalue > 0.0 ? bound / e.eigenvalue : kInfinity;
    report.entries.push_back(e);
    if (!(e.eigenvalue <= bound)) {
      report.ok = false;
      report.violations.push_back(e);
    }
  }
  return report;
}

}  // namespace plap
