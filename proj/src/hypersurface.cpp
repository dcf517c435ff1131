#include "plap/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

#include "plap/certify.hpp"

namespace plap {

std::pair<double, double> euclidean_defaults(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  return {n * std::pow(unit_ball_volume(n), 1.0 / n), std::pow(40.0, n)};
}

double boundary_length(const Mesh& mesh) {
  double s = 0.0;
  for (const auto& e : mesh.edges()) {
    if (e.triangles[1] == -1) s += mesh.flat_edge_length(e) * std::sqrt(mesh.factor(static_cast<std::size_t>(e.triangles[0])));
  }
  return s;
}

double isoperimetric_ratio(const Mesh& mesh) {
  if (!mesh.has_boundary()) throw std::invalid_argument("closed mesh has no boundary");
  return boundary_length(mesh) / std::sqrt(mesh.total_area());
}

double enclosed_volume(const Mesh& mesh) {
  if (!mesh.is_closed()) throw std::invalid_argument("surface must be closed");
  if (mesh.period()) throw std::invalid_argument("periodic mesh encloses no volume");
  double v = 0.0;
  for (const auto& t : mesh.triangles()) {
    const auto& a = mesh.vertices()[static_cast<std::size_t>(t[0])];
    const auto& b = mesh.vertices()[static_cast<std::size_t>(t[1])];
    const auto& c = mesh.vertices()[static_cast<std::size_t>(t[2])];
    v += a.dot(b.cross(c)) / 6.0;
  }
  return std::abs(v);
}

HypersurfaceData make_hypersurface_data(int n, double sigma_measure, double omega_measure, std::optional<double> I0,
                                        double r_minus, std::optional<double> NM) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (!(sigma_measure > 0.0) || !(omega_measure > 0.0)) throw std::invalid_argument("measures must be positive");
  if (!(r_minus > 0.0)) throw std::invalid_argument("r_minus must be positive");
  const auto [I0e, NMe] = euclidean_defaults(n);
  HypersurfaceData d;
  d.n = n;
  d.sigma_measure = sigma_measure;
  d.omega_measure = omega_measure;
  d.I = sigma_measure / std::pow(omega_measure, (n - 1.0) / n);
  d.I0 = I0.value_or(I0e);
  d.r_minus = r_minus;
  d.NM = NM.value_or(NMe);
  return d;
}

HypersurfaceData hypersurface_data_from_mesh(const Mesh& mesh) {
  if (mesh.has_boundary()) return make_hypersurface_data(2, boundary_length(mesh), mesh.total_area());
  return make_hypersurface_data(3, mesh.total_area(), enclosed_volume(mesh));
}

namespace {

void check_r0(double r0, double limit) {
  if (!(r0 > 0.0) || !(r0 < limit)) throw std::invalid_argument("r0 out of range");
}

}  // namespace

int k0_threshold(const HypersurfaceData& data, double r0, double p) {
  check_r0(r0, data.r_minus);
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  const int n = data.n;
  const double threshold = data.I0 / (25.0 * n * unit_ball_volume(n) * std::pow(r0, n - 1.0)) *
                           std::pow(data.omega_measure, (n - 1.0) / n);
  const double k0 = std::floor(threshold) + 1.0;
  if (k0 > 2147483647.0) throw std::overflow_error("k0 exceeds integer range");
  return static_cast<int>(k0);
}

double prop_hyp_bound(const HypersurfaceData& data, double p, int k, double r0) {
  check_r0(r0, data.r_minus);
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int n = data.n;
  const double q = p / (n - 1.0);
  const double ratio = data.I / data.I0;
  return 625.0 * std::pow(25.0 * n * unit_ball_volume(n), q) * data.NM * data.NM * std::pow(ratio, 1.0 + q) *
         std::pow(k / data.sigma_measure, q);
}

double hypersurface_bound(const HypersurfaceData& data, double p, int k, double r0) {
  check_r0(r0, data.r_minus / 5.0);
  if (!(p > 1.0)) throw std::invalid_argument("exponent p must exceed 1");
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int n = data.n;
  const double q = p / (n - 1.0);
  const double ratio = data.I / data.I0;
  const double value = 625.0 * data.NM * data.NM * ratio *
                       (std::pow(r0, -p) + std::pow(25.0 * n * unit_ball_volume(n) * ratio * k / data.sigma_measure, q));
  if (k >= k0_threshold(data, r0, p)) return std::min(value, prop_hyp_bound(data, p, k, r0));
  return value;
}

Spectrum boundary_spectrum_reference(BoundaryShape shape, double radius, int kmax) {
  if (kmax < 1) throw std::invalid_argument("kmax must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  Spectrum s;
  s.p = 2.0;
  s.method = SpectrumMethod::closed_form;
  const double inv = 1.0 / (radius * radius);
  if (shape == BoundaryShape::circle) {
    s.values.push_back(0.0);
    for (int j = 1; static_cast<int>(s.values.size()) < kmax; ++j) {
      for (int rep = 0; rep < 2 && static_cast<int>(s.values.size()) < kmax; ++rep) s.values.push_back(j * j * inv);
    }
  } else {
    for (int l = 0; static_cast<int>(s.values.size()) < kmax; ++l) {
      for (int rep = 0; rep < 2 * l + 1 && static_cast<int>(s.values.size()) < kmax; ++rep)
        s.values.push_back(l * (l + 1.0) * inv);
    }
  }
  s.residuals.assign(s.values.size(), 0.0);
  return s;
}

double hyperbolic_radius(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  // sinh(r)/r is increasing, so the condition holds up to the root of
  // sinh(r)/r = 2^{1/(n-1)}.
  const double target = std::pow(2.0, 1.0 / (n - 1.0));
  double lo = 0.0, hi = 1.0;
  while (std::sinh(hi) / hi < target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid > 0.0 && std::sinh(mid) / mid <= target) lo = mid;
    else hi = mid;
  }
  return lo;
}

bool split_max_inequality(int k, int k0, double q) {
  const double lhs = std::max(std::pow(k0, q), std::pow(k, q));
  const double rhs = std::pow(k0 - 1.0, q) + std::pow(k, q);
  return lhs <= rhs;
}

}  // namespace plap
