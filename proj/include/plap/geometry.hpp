#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace plap {

using Vertex = std::int32_t;
using Triangle = std::array<Vertex, 3>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Shape { unit_square, unit_disk, sphere, flat_torus };

Shape parse_shape(const std::string& name);
std::string to_string(Shape shape);

/// Simplicial surface mesh carrying a piecewise-linear function space.
///
/// Coordinates live in R^3 (planar meshes use z = 0). A periodic mesh stores
/// its period and resolves every edge by minimum image, which is how the flat
/// torus is represented without an embedding. An optional per-triangle
/// conformal factor rescales the flat metric: lengths by sqrt(factor), areas
/// by factor.
class Mesh {
 public:
  Mesh(std::vector<Eigen::Vector3d> vertices, std::vector<Triangle> triangles,
       std::optional<Eigen::Vector2d> period = std::nullopt);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t triangle_count() const { return triangles_.size(); }

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::optional<Eigen::Vector2d>& period() const { return period_; }

  bool is_boundary(Vertex v) const { return boundary_[static_cast<std::size_t>(v)] != 0; }
  bool has_boundary() const;
  bool is_closed() const { return !has_boundary(); }

  /// Edge vector b - a, resolved by minimum image on periodic meshes.
  Eigen::Vector3d edge_vector(Vertex a, Vertex b) const;

  /// Flat (background metric) area of triangle t.
  double flat_area(std::size_t t) const { return flat_area_[t]; }
  /// Area of triangle t in the (possibly rescaled) metric.
  double area(std::size_t t) const { return flat_area_[t] * factor(t); }
  double factor(std::size_t t) const { return factor_.empty() ? 1.0 : factor_[t]; }
  bool has_conformal_factor() const { return !factor_.empty(); }
  const std::vector<double>& conformal_factor() const { return factor_; }

  double total_area() const;
  double total_flat_area() const;

  /// Squared flat gradient of the linear interpolant of (u0, u1, u2) on t.
  double flat_gradient_sq(std::size_t t, double u0, double u1, double u2) const;

  /// Unique undirected edges (a < b) and the triangles incident to each.
  struct Edge {
    Vertex a;
    Vertex b;
    std::array<std::int32_t, 2> triangles;  // second entry -1 on boundary
  };
  const std::vector<Edge>& edges() const { return edges_; }
  double flat_edge_length(const Edge& e) const { return edge_vector(e.a, e.b).norm(); }

  /// True when the triangle adjacency graph is connected.
  bool is_connected() const;

  /// Copy with coordinates multiplied by s (periods too).
  Mesh scaled(double s) const;

  // Set by conformal_rescale.
  Mesh with_conformal_factor(std::vector<double> factor) const;

 private:
  std::vector<Eigen::Vector3d> vertices_;
  std::vector<Triangle> triangles_;
  std::optional<Eigen::Vector2d> period_;
  std::vector<double> factor_;
  std::vector<double> flat_area_;
  // Inverse Gram matrix of (e1, e2) per triangle: (g00, g01, g11).
  std::vector<std::array<double, 3>> inv_gram_;
  std::vector<char> boundary_;
  std::vector<Edge> edges_;

  void build_topology();
};

Mesh build_structured_mesh(Shape shape, int resolution);

/// Returns a copy of `mesh` whose metric is factor * (current metric) per
/// triangle. Factors must be strictly positive.
Mesh conformal_rescale(const Mesh& mesh, std::span<const double> factor);

/// Finite metric-measure space: weighted graph with graph-geodesic distance
/// and a nonnegative measure on vertices.
class DiscreteSpace {
 public:
  struct Neighbor {
    Vertex vertex;
    double length;
  };
  struct WeightedEdge {
    Vertex a;
    Vertex b;
    double length;
  };

  DiscreteSpace(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                std::vector<double> measure);

  std::size_t size() const { return measure_.size(); }
  double measure(Vertex v) const { return measure_[static_cast<std::size_t>(v)]; }
  const std::vector<double>& measures() const { return measure_; }
  double total_measure() const { return total_measure_; }
  double max_edge_length() const { return max_edge_; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    const auto i = static_cast<std::size_t>(v);
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }

  bool is_connected() const;

  /// Exact distance between two vertices (+inf when disconnected).
  double distance(Vertex a, Vertex b) const;
  /// Distances from `source` to every vertex.
  std::vector<double> distances_from(Vertex source) const;
  /// Vertices with dist(source, v) < cutoff, in nondecreasing distance order.
  std::vector<std::pair<Vertex, double>> ball_members(Vertex source, double cutoff) const;
  /// Largest finite distance from any vertex (exact, all-pairs).
  double diameter() const;

  /// Measure-weighted sum over a vertex list.
  double measure_of(std::span<const Vertex> members) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<double> measure_;
  double total_measure_ = 0.0;
  double max_edge_ = 0.0;
};

enum class DistanceMetric {
  background,  // flat edge lengths, ignores the conformal factor
  rescaled,    // edge length scaled by sqrt of the mean incident factor
};

/// Lumped measure (one third of incident area, in the mesh's metric) with
/// graph-geodesic distance along mesh edges.
DiscreteSpace space_from_mesh(const Mesh& mesh, DistanceMetric metric = DistanceMetric::rescaled);

/// Point cloud with Euclidean edges to the `neighbors` nearest points; extra
/// bridging edges join components so the space is connected.
DiscreteSpace space_from_points(std::span<const Eigen::Vector3d> points,
                                std::vector<double> measure, int neighbors = 8);

/// Sorted set of distinct vertices together with its measure.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(const DiscreteSpace& space, std::vector<Vertex> members);

  const std::vector<Vertex>& members() const { return members_; }
  double measure() const { return measure_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

 private:
  std::vector<Vertex> members_;
  double measure_ = 0.0;
};

/// Open ball {v : dist(center, v) < r}.
VertexSet ball(const DiscreteSpace& space, Vertex center, double r);
/// Annulus {v : r < dist(a, v) < R}; requires 0 <= r < R.
VertexSet annulus_set(const DiscreteSpace& space, Vertex a, double r, double R);
/// Doubled annulus {v : r/2 < dist(a, v) < 2R}.
VertexSet doubled_annulus(const DiscreteSpace& space, Vertex a, double r, double R);
/// Open neighbourhood {v : dist(v, F) < r}.
VertexSet neighborhood(const DiscreteSpace& space, const VertexSet& set, double r);
/// dist(A, B) = min over pairs; +inf if either is empty.
double set_distance(const DiscreteSpace& space, const VertexSet& a, const VertexSet& b);
/// min over a in inner, x outside outer of dist(a, x); +inf if outer is everything.
double separation(const DiscreteSpace& space, const VertexSet& inner, const VertexSet& outer);

/// Largest greedy s-net size over all 5s-balls: every 5s-ball is covered by
/// at most that many s-balls centred at net points.
int covering_number(const DiscreteSpace& space, double s);

}  // namespace plap
