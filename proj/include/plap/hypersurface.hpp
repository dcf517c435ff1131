#pragma once

#include <optional>
#include <string>
#include <utility>

#include "plap/eigensolve.hpp"
#include "plap/geometry.hpp"

namespace plap {

struct HypersurfaceData {
  int n = 2;                   // ambient dimension
  double sigma_measure = 0.0;  // |Σ|
  double omega_measure = 0.0;  // |Ω|
  double I = 0.0;
  double I0 = 0.0;
  double r_minus = kInfinity;
  double NM = 0.0;
};

/// (I0, NM) = (n ω_n^{1/n}, 40^n) for Euclidean ambient space.
std::pair<double, double> euclidean_defaults(int n);

/// Perimeter over area^{1/2} of a planar mesh with boundary.
double isoperimetric_ratio(const Mesh& mesh);
double boundary_length(const Mesh& mesh);
/// Volume enclosed by a closed, consistently oriented surface mesh.
double enclosed_volume(const Mesh& mesh);

/// Assembles the data; I0 and NM default to the Euclidean values.
HypersurfaceData make_hypersurface_data(int n, double sigma_measure, double omega_measure,
                                        std::optional<double> I0 = std::nullopt, double r_minus = kInfinity,
                                        std::optional<double> NM = std::nullopt);
/// n = 2 from a planar domain mesh, n = 3 from a closed surface.
HypersurfaceData hypersurface_data_from_mesh(const Mesh& mesh);

int k0_threshold(const HypersurfaceData& data, double r0, double p);
/// Large-k form, valid for k ≥ k0.
double prop_hyp_bound(const HypersurfaceData& data, double p, int k, double r0);
/// All-k form, minimised with the large-k form when k ≥ k0.
double hypersurface_bound(const HypersurfaceData& data, double p, int k, double r0);

enum class BoundaryShape { circle, sphere };
Spectrum boundary_spectrum_reference(BoundaryShape shape, double radius, int kmax);

/// Largest r with sinh(r)^{n-1} ≤ 2 r^{n-1} on (0, r].
double hyperbolic_radius(int n);

/// max{k0^q, k^q} ≤ (k0 - 1)^q + k^q.
bool split_max_inequality(int k, int k0, double q);

}  // namespace plap
