#pragma once

#include <span>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "plap/geometry.hpp"

namespace plap {

struct EnergyReport {
  double p = 2.0;
  double dirichlet = 0.0;
  double mass = 0.0;
  double rayleigh = 0.0;
};

/// Sum over triangles of |grad_g u|^p area_g for the linear interpolant.
double p_dirichlet(const Mesh& mesh, std::span<const double> u, double p);
/// Lumped sum of measure(v) |u(v)|^p.
double p_mass(const Mesh& mesh, std::span<const double> u, double p);
double rayleigh(const Mesh& mesh, std::span<const double> u, double p);
EnergyReport energy_report(const Mesh& mesh, std::span<const double> u, double p);

/// Area (in the mesh metric) of the triangles where u is not constant.
double gradient_support_measure(const Mesh& mesh, std::span<const double> u);

/// Hölder majorant (E_n)^{p/n} S^{1-p/n} of the p-energy, n = 2.
double holder_split_bound(const Mesh& mesh, std::span<const double> u, double p, double support_measure);

/// Lumped vertex measure in the mesh metric.
Eigen::VectorXd lumped_mass(const Mesh& mesh);
/// P1 stiffness matrix (the 2-energy is u^T K u and is independent of the
/// conformal factor).
Eigen::SparseMatrix<double> stiffness_matrix(const Mesh& mesh);

/// Gradient of p_dirichlet with respect to the vertex values.
Eigen::VectorXd p_dirichlet_gradient(const Mesh& mesh, std::span<const double> u, double p);

}  // namespace plap
