#include "plap/energy.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace plap {

namespace {

void check_inputs(const Mesh& mesh, std::span<const double> u, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  if (u.size() != mesh.vertex_count()) throw std::invalid_argument("one value per vertex required");
}

double tri_gradient_sq(const Mesh& mesh, std::size_t t, std::span<const double> u) {
  const auto& tri = mesh.triangles()[t];
  return mesh.flat_gradient_sq(t, u[static_cast<std::size_t>(tri[0])], u[static_cast<std::size_t>(tri[1])],
                               u[static_cast<std::size_t>(tri[2])]);
}

}  // namespace

double p_dirichlet(const Mesh& mesh, std::span<const double> u, double p) {
  check_inputs(mesh, u, p);
  double e = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const double g2 = tri_gradient_sq(mesh, t, u);
    if (g2 == 0.0) continue;
    const double phi = mesh.factor(t);
    e += mesh.flat_area(t) * phi * std::pow(g2 / phi, p / 2.0);
  }
  return e;
}

Eigen::VectorXd lumped_mass(const Mesh& mesh) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.vertex_count()));
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const double third = mesh.area(t) / 3.0;
    for (Vertex v : mesh.triangles()[t]) m[v] += third;
  }
  return m;
}

double p_mass(const Mesh& mesh, std::span<const double> u, double p) {
  check_inputs(mesh, u, p);
  const Eigen::VectorXd m = lumped_mass(mesh);
  double s = 0.0;
  for (std::size_t v = 0; v < u.size(); ++v) s += m[static_cast<Eigen::Index>(v)] * std::pow(std::abs(u[v]), p);
  return s;
}

double rayleigh(const Mesh& mesh, std::span<const double> u, double p) {
  return energy_report(mesh, u, p).rayleigh;
}

EnergyReport energy_report(const Mesh& mesh, std::span<const double> u, double p) {
  EnergyReport r;
  r.p = p;
  r.dirichlet = p_dirichlet(mesh, u, p);
  r.mass = p_mass(mesh, u, p);
  if (!(r.mass > 0.0)) throw std::invalid_argument("null test function");
  r.rayleigh = r.dirichlet / r.mass;
  return r;
}

double gradient_support_measure(const Mesh& mesh, std::span<const double> u) {
  if (u.size() != mesh.vertex_count()) throw std::invalid_argument("one value per vertex required");
  double s = 0.0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double a = u[static_cast<std::size_t>(tri[0])];
    if (u[static_cast<std::size_t>(tri[1])] != a || u[static_cast<std::size_t>(tri[2])] != a) s += mesh.area(t);
  }
  return s;
}

double holder_split_bound(const Mesh& mesh, std::span<const double> u, double p, double support_measure) {
  constexpr double n = 2.0;
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  if (p > n) throw std::invalid_argument("Hölder split not possible for p > n");
  if (!(support_measure >= 0.0)) throw std::invalid_argument("support measure must be nonnegative");
  const double en = p_dirichlet(mesh, u, n);
  const double bound = std::pow(en, p / n) * std::pow(support_measure, 1.0 - p / n);
  const double direct = p_dirichlet(mesh, u, p);
  if (direct > bound + 1e-10 * std::max(1.0, bound))
    throw std::logic_error("Hölder majorant below the direct p-energy");
  return bound;
}

Eigen::SparseMatrix<double> stiffness_matrix(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.triangle_count() * 9);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    // grad(u)^2 = du^T G du with du = (u1 - u0, u2 - u0).
    double G[2][2];
    {
      const Eigen::Vector3d e1 = mesh.edge_vector(tri[0], tri[1]);
      const Eigen::Vector3d e2 = mesh.edge_vector(tri[0], tri[2]);
      const double g00 = e1.dot(e1), g01 = e1.dot(e2), g11 = e2.dot(e2);
      const double det = g00 * g11 - g01 * g01;
      G[0][0] = g11 / det;
      G[0][1] = G[1][0] = -g01 / det;
      G[1][1] = g00 / det;
    }
    // du = D u with D = [[-1, 1, 0], [-1, 0, 1]]; local K = area * D^T G D.
    const double D[2][3] = {{-1.0, 1.0, 0.0}, {-1.0, 0.0, 1.0}};
    const double area = mesh.flat_area(t);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double k = 0.0;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) k += D[a][i] * G[a][b] * D[b][j];
        }
        trips.emplace_back(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)], area * k);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  Eigen::SparseMatrix<double> K(n, n);
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

Eigen::VectorXd p_dirichlet_gradient(const Mesh& mesh, std::span<const double> u, double p) {
  check_inputs(mesh, u, p);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.vertex_count()));
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double u0 = u[static_cast<std::size_t>(tri[0])];
    const double a = u[static_cast<std::size_t>(tri[1])] - u0;
    const double b = u[static_cast<std::size_t>(tri[2])] - u0;
    const double g2 = mesh.flat_gradient_sq(t, u0, u0 + a, u0 + b);
    if (g2 == 0.0) continue;
    const Eigen::Vector3d e1 = mesh.edge_vector(tri[0], tri[1]);
    const Eigen::Vector3d e2 = mesh.edge_vector(tri[0], tri[2]);
    const double g00 = e1.dot(e1), g01 = e1.dot(e2), g11 = e2.dot(e2);
    const double det = g00 * g11 - g01 * g01;
    const double ga = (g11 * a - g01 * b) / det;
    const double gb = (-g01 * a + g00 * b) / det;
    const double phi = mesh.factor(t);
    // d/du of A phi (g2/phi)^{p/2} = A phi^{1-p/2} p g2^{p/2-1} (G du).
    const double scale = mesh.flat_area(t) * std::pow(phi, 1.0 - p / 2.0) * p * std::pow(g2, p / 2.0 - 1.0);
    g[tri[1]] += scale * ga;
    g[tri[2]] += scale * gb;
    g[tri[0]] -= scale * (ga + gb);
  }
  return g;
}

}  // namespace plap
