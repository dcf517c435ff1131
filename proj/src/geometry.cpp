#include "plap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Geometry>

#include "plap/dijkstra.hpp"
#include "plap/parallel.hpp"

namespace plap {

namespace {

std::size_t uidx(Vertex v) { return static_cast<std::size_t>(v); }

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

Shape parse_shape(const std::string& name) {
  if (name == "square" || name == "unit_square") return Shape::unit_square;
  if (name == "disk" || name == "unit_disk") return Shape::unit_disk;
  if (name == "sphere") return Shape::sphere;
  if (name == "torus" || name == "flat_torus") return Shape::flat_torus;
  throw std::invalid_argument("unknown shape: " + name);
}

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::unit_square: return "unit_square";
    case Shape::unit_disk: return "unit_disk";
    case Shape::sphere: return "sphere";
    case Shape::flat_torus: return "flat_torus";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Mesh

Mesh::Mesh(std::vector<Eigen::Vector3d> vertices, std::vector<Triangle> triangles,
           std::optional<Eigen::Vector2d> period)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), period_(period) {
  if (triangles_.empty()) throw std::invalid_argument("mesh has no triangles");
  for (const auto& t : triangles_) {
    for (Vertex v : t) {
      if (v < 0 || uidx(v) >= vertices_.size())
        throw std::invalid_argument("triangle references a missing vertex");
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw std::invalid_argument("triangle with repeated vertex");
  }
  build_topology();
}

Eigen::Vector3d Mesh::edge_vector(Vertex a, Vertex b) const {
  Eigen::Vector3d d = vertices_[uidx(b)] - vertices_[uidx(a)];
  if (period_) {
    for (int k = 0; k < 2; ++k) {
      const double L = (*period_)[k];
      d[k] -= L * std::round(d[k] / L);
    }
  }
  return d;
}

void Mesh::build_topology() {
  const std::size_t nt = triangles_.size();
  flat_area_.resize(nt);
  inv_gram_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    const Eigen::Vector3d e1 = edge_vector(tri[0], tri[1]);
    const Eigen::Vector3d e2 = edge_vector(tri[0], tri[2]);
    const double area = 0.5 * e1.cross(e2).norm();
    if (!(area > 0.0) || !std::isfinite(area))
      throw std::invalid_argument("triangle " + std::to_string(t) + " has nonpositive area");
    flat_area_[t] = area;
    const double g00 = e1.dot(e1), g01 = e1.dot(e2), g11 = e2.dot(e2);
    const double det = g00 * g11 - g01 * g01;
    inv_gram_[t] = {g11 / det, -g01 / det, g00 / det};
  }

  std::unordered_map<std::uint64_t, std::size_t> lookup;
  lookup.reserve(nt * 2);
  edges_.clear();
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      Vertex a = tri[k], b = tri[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
      auto [it, inserted] = lookup.try_emplace(key, edges_.size());
      if (inserted) {
        edges_.push_back({a, b, {static_cast<std::int32_t>(t), -1}});
      } else {
        auto& e = edges_[it->second];
        if (e.triangles[1] != -1) throw std::invalid_argument("non-manifold edge in mesh");
        e.triangles[1] = static_cast<std::int32_t>(t);
      }
    }
  }
  boundary_.assign(vertices_.size(), 0);
  for (const auto& e : edges_) {
    if (e.triangles[1] == -1) {
      boundary_[uidx(e.a)] = 1;
      boundary_[uidx(e.b)] = 1;
    }
  }
}

bool Mesh::has_boundary() const {
  return std::any_of(boundary_.begin(), boundary_.end(), [](char c) { return c != 0; });
}

double Mesh::total_area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) s += area(t);
  return s;
}

double Mesh::total_flat_area() const {
  return std::accumulate(flat_area_.begin(), flat_area_.end(), 0.0);
}

double Mesh::flat_gradient_sq(std::size_t t, double u0, double u1, double u2) const {
  const auto& g = inv_gram_[t];
  const double a = u1 - u0, b = u2 - u0;
  return std::max(0.0, g[0] * a * a + 2.0 * g[1] * a * b + g[2] * b * b);
}

bool Mesh::is_connected() const {
  UnionFind uf(triangles_.size());
  for (const auto& e : edges_) {
    if (e.triangles[1] >= 0) uf.unite(static_cast<std::size_t>(e.triangles[0]), static_cast<std::size_t>(e.triangles[1]));
  }
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    if (uf.find(t) != 0) return false;
  }
  return true;
}

Mesh Mesh::scaled(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<Eigen::Vector3d> v = vertices_;
  for (auto& p : v) p *= s;
  std::optional<Eigen::Vector2d> per = period_;
  if (per) *per *= s;
  Mesh out(std::move(v), triangles_, per);
  out.factor_ = factor_;
  return out;
}

Mesh Mesh::with_conformal_factor(std::vector<double> factor) const {
  Mesh out = *this;
  out.factor_ = std::move(factor);
  return out;
}

Mesh conformal_rescale(const Mesh& mesh, std::span<const double> factor) {
  if (factor.size() != mesh.triangle_count())
    throw std::invalid_argument("conformal factor needs one value per triangle");
  std::vector<double> combined(factor.size());
  for (std::size_t t = 0; t < factor.size(); ++t) {
    if (!(factor[t] > 0.0) || !std::isfinite(factor[t]))
      throw std::invalid_argument("conformal factor must be positive");
    combined[t] = factor[t] * mesh.factor(t);
  }
  return mesh.with_conformal_factor(std::move(combined));
}

// ---------------------------------------------------------------------------
// Structured meshes

namespace {

void union_jack_cell(std::vector<Triangle>& tris, Vertex v00, Vertex v10, Vertex v01, Vertex v11,
                     bool even) {
  if (even) {
    tris.push_back({v00, v10, v11});
    tris.push_back({v00, v11, v01});
  } else {
    tris.push_back({v00, v10, v01});
    tris.push_back({v10, v11, v01});
  }
}

Mesh make_square(int n) {
  std::vector<Eigen::Vector3d> v;
  v.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) v.emplace_back(double(i) / n, double(j) / n, 0.0);
  }
  auto id = [n](int i, int j) { return static_cast<Vertex>(j * (n + 1) + i); };
  std::vector<Triangle> t;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i)
      union_jack_cell(t, id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1), (i + j) % 2 == 0);
  }
  return Mesh(std::move(v), std::move(t));
}

Mesh make_torus(int n) {
  if (n < 3) throw std::invalid_argument("flat_torus needs resolution >= 3");
  std::vector<Eigen::Vector3d> v;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) v.emplace_back(double(i) / n, double(j) / n, 0.0);
  }
  auto id = [n](int i, int j) { return static_cast<Vertex>((j % n) * n + (i % n)); };
  std::vector<Triangle> t;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i)
      union_jack_cell(t, id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1), (i + j) % 2 == 0);
  }
  return Mesh(std::move(v), std::move(t), Eigen::Vector2d(1.0, 1.0));
}

// Concentric rings of 6i vertices, radial spacing 1/rings; rings = ceil(n/2)
// so that `n` counts cells across the diameter as for the square.
Mesh make_disk(int n) {
  const int rings = std::max(1, (n + 1) / 2);
  std::vector<Eigen::Vector3d> v;
  v.emplace_back(0.0, 0.0, 0.0);
  std::vector<Vertex> start(static_cast<std::size_t>(rings + 1), 0);
  for (int i = 1; i <= rings; ++i) {
    start[uidx(i)] = static_cast<Vertex>(v.size());
    const int count = 6 * i;
    const double radius = double(i) / rings;
    for (int j = 0; j < count; ++j) {
      const double th = 2.0 * std::numbers::pi * j / count;
      v.emplace_back(radius * std::cos(th), radius * std::sin(th), 0.0);
    }
  }
  auto ring = [&](int i, int j) {
    const int count = 6 * i;
    return static_cast<Vertex>(start[uidx(i)] + ((j % count) + count) % count);
  };
  std::vector<Triangle> t;
  for (int j = 0; j < 6; ++j) t.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < rings; ++i) {
    const int na = 6 * i, nb = 6 * (i + 1);
    int a = 0, b = 0;
    while (a < na || b < nb) {
      const double next_in = double(a + 1) / na;
      const double next_out = double(b + 1) / nb;
      if (b < nb && (a == na || next_out <= next_in)) {
        t.push_back({ring(i, a), ring(i + 1, b), ring(i + 1, b + 1)});
        ++b;
      } else {
        t.push_back({ring(i, a), ring(i + 1, b), ring(i, a + 1)});
        ++a;
      }
    }
  }
  for (auto& tri : t) {
    const Eigen::Vector3d e1 = v[uidx(tri[1])] - v[uidx(tri[0])];
    const Eigen::Vector3d e2 = v[uidx(tri[2])] - v[uidx(tri[0])];
    if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0) std::swap(tri[1], tri[2]);
  }
  return Mesh(std::move(v), std::move(t));
}

// Geodesic icosphere: every icosahedron face split at frequency n.
Mesh make_sphere(int n) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const std::vector<Eigen::Vector3d> ico = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
      {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  const std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  std::vector<Eigen::Vector3d> v;
  std::map<std::array<long long, 3>, Vertex> index;
  auto vertex_at = [&](const Eigen::Vector3d& p) {
    const Eigen::Vector3d q = p.normalized();
    const std::array<long long, 3> key = {std::llround(q.x() * 1e9), std::llround(q.y() * 1e9),
                                          std::llround(q.z() * 1e9)};
    auto [it, inserted] = index.try_emplace(key, static_cast<Vertex>(v.size()));
    if (inserted) v.push_back(q);
    return it->second;
  };
  std::vector<Triangle> t;
  for (const auto& f : faces) {
    const Eigen::Vector3d A = ico[uidx(f[0])], B = ico[uidx(f[1])], C = ico[uidx(f[2])];
    auto P = [&](int i, int j) { return vertex_at(A + (B - A) * double(i) / n + (C - A) * double(j) / n); };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; i + j < n; ++j) {
        t.push_back({P(i, j), P(i + 1, j), P(i, j + 1)});
        if (i + j < n - 1) t.push_back({P(i + 1, j), P(i + 1, j + 1), P(i, j + 1)});
      }
    }
  }
  for (auto& tri : t) {
    const Eigen::Vector3d& a = v[uidx(tri[0])];
    const Eigen::Vector3d n3 = (v[uidx(tri[1])] - a).cross(v[uidx(tri[2])] - a);
    if (n3.dot(a) < 0.0) std::swap(tri[1], tri[2]);
  }
  return Mesh(std::move(v), std::move(t));
}

}  // namespace

Mesh build_structured_mesh(Shape shape, int resolution) {
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  switch (shape) {
    case Shape::unit_square: return make_square(resolution);
    case Shape::unit_disk: return make_disk(resolution);
    case Shape::sphere: return make_sphere(resolution);
    case Shape::flat_torus: return make_torus(resolution);
  }
  throw std::invalid_argument("unknown shape");
}

// ---------------------------------------------------------------------------
// DiscreteSpace

DiscreteSpace::DiscreteSpace(std::size_t vertex_count, std::span<const WeightedEdge> edges,
                             std::vector<double> measure)
    : measure_(std::move(measure)) {
  if (vertex_count == 0) throw std::invalid_argument("space needs at least one vertex");
  if (measure_.size() != vertex_count) throw std::invalid_argument("one measure value per vertex required");
  for (double m : measure_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw std::invalid_argument("measure must be nonnegative");
    total_measure_ += m;
  }
  if (!(total_measure_ > 0.0)) throw std::invalid_argument("total measure must be positive");

  std::vector<std::size_t> degree(vertex_count, 0);
  for (const auto& e : edges) {
    if (e.a < 0 || e.b < 0 || uidx(e.a) >= vertex_count || uidx(e.b) >= vertex_count || e.a == e.b)
      throw std::invalid_argument("bad edge endpoints");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) throw std::invalid_argument("edge length must be positive");
    ++degree[uidx(e.a)];
    ++degree[uidx(e.b)];
    max_edge_ = std::max(max_edge_, e.length);
  }
  offsets_.assign(vertex_count + 1, 0);
  for (std::size_t i = 0; i < vertex_count; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges) {
    adjacency_[fill[uidx(e.a)]++] = {e.b, e.length};
    adjacency_[fill[uidx(e.b)]++] = {e.a, e.length};
  }
  for (std::size_t i = 0; i < vertex_count; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& x, const Neighbor& y) { return x.vertex < y.vertex; });
  }
}

bool DiscreteSpace::is_connected() const {
  std::vector<char> seen(size(), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (const auto& nb : neighbors(v)) {
      if (!seen[uidx(nb.vertex)]) {
        seen[uidx(nb.vertex)] = 1;
        ++count;
        stack.push_back(nb.vertex);
      }
    }
  }
  return count == size();
}

double DiscreteSpace::distance(Vertex a, Vertex b) const {
  DijkstraWorkspace ws(*this);
  double out = kInfinity;
  ws.run(a, kInfinity, [&](Vertex v, double d) {
    if (v == b) {
      out = d;
      return false;
    }
    return true;
  });
  return out;
}

std::vector<double> DiscreteSpace::distances_from(Vertex source) const {
  DijkstraWorkspace ws(*this);
  std::vector<double> out(size(), kInfinity);
  ws.run(source, kInfinity, [&](Vertex v, double d) {
    out[uidx(v)] = d;
    return true;
  });
  return out;
}

std::vector<std::pair<Vertex, double>> DiscreteSpace::ball_members(Vertex source, double cutoff) const {
  DijkstraWorkspace ws(*this);
  std::vector<std::pair<Vertex, double>> out;
  ws.run(source, cutoff, [&](Vertex v, double d) {
    out.emplace_back(v, d);
    return true;
  });
  return out;
}

double DiscreteSpace::diameter() const {
  std::vector<double> best(size(), 0.0);
  parallel_for(size(), [&](std::size_t begin, std::size_t end) {
    DijkstraWorkspace ws(*this);
    for (std::size_t s = begin; s < end; ++s) {
      double m = 0.0;
      ws.run(static_cast<Vertex>(s), kInfinity, [&](Vertex, double d) {
        m = d;
        return true;
      });
      best[s] = m;
    }
  });
  return *std::max_element(best.begin(), best.end());
}

double DiscreteSpace::measure_of(std::span<const Vertex> members) const {
  double s = 0.0;
  for (Vertex v : members) s += measure(v);
  return s;
}

DiscreteSpace space_from_mesh(const Mesh& mesh, DistanceMetric metric) {
  std::vector<double> measure(mesh.vertex_count(), 0.0);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const double third = mesh.area(t) / 3.0;
    for (Vertex v : mesh.triangles()[t]) measure[uidx(v)] += third;
  }
  std::vector<DiscreteSpace::WeightedEdge> edges;
  edges.reserve(mesh.edges().size());
  for (const auto& e : mesh.edges()) {
    double len = mesh.flat_edge_length(e);
    if (metric == DistanceMetric::rescaled && mesh.has_conformal_factor()) {
      double f = mesh.factor(static_cast<std::size_t>(e.triangles[0]));
      if (e.triangles[1] >= 0) f = 0.5 * (f + mesh.factor(static_cast<std::size_t>(e.triangles[1])));
      len *= std::sqrt(f);
    }
    edges.push_back({e.a, e.b, len});
  }
  DiscreteSpace space(mesh.vertex_count(), edges, std::move(measure));
  if (!space.is_connected()) throw std::runtime_error("disconnected domain");
  return space;
}

DiscreteSpace space_from_points(std::span<const Eigen::Vector3d> points, std::vector<double> measure,
                                int neighbors) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("empty point cloud");
  if (neighbors < 1) throw std::invalid_argument("neighbor count must be positive");
  std::vector<DiscreteSpace::WeightedEdge> edges;
  UnionFind uf(n);
  std::vector<std::pair<double, Vertex>> cand;
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) cand.emplace_back((points[i] - points[j]).norm(), static_cast<Vertex>(j));
    }
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(neighbors), cand.size());
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(take), cand.end());
    for (std::size_t q = 0; q < take; ++q) {
      const Vertex j = cand[q].second;
      edges.push_back({static_cast<Vertex>(i), j, cand[q].first});
      uf.unite(i, uidx(j));
    }
  }
  // Bridge remaining components through their closest pair.
  while (true) {
    const std::size_t root = uf.find(0);
    double best = kInfinity;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (uf.find(i) != root) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (uf.find(j) == root) continue;
        const double d = (points[i] - points[j]).norm();
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == kInfinity) break;
    edges.push_back({static_cast<Vertex>(bi), static_cast<Vertex>(bj), best});
    uf.unite(bi, bj);
  }
  return DiscreteSpace(n, edges, std::move(measure));
}

// ---------------------------------------------------------------------------
// Vertex sets

VertexSet::VertexSet(const DiscreteSpace& space, std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw std::invalid_argument("vertex set members must be distinct");
  for (Vertex v : members_) {
    if (v < 0 || uidx(v) >= space.size()) throw std::invalid_argument("vertex outside space");
  }
  measure_ = space.measure_of(members_);
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin(), b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

VertexSet ball(const DiscreteSpace& space, Vertex center, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be nonnegative");
  std::vector<Vertex> out;
  for (const auto& [v, d] : space.ball_members(center, r)) out.push_back(v);
  return VertexSet(space, std::move(out));
}

VertexSet annulus_set(const DiscreteSpace& space, Vertex a, double r, double R) {
  if (!(r >= 0.0) || !(r < R)) throw std::invalid_argument("annulus needs 0 <= r < R");
  std::vector<Vertex> out;
  for (const auto& [v, d] : space.ball_members(a, R)) {
    if (d > r) out.push_back(v);
  }
  return VertexSet(space, std::move(out));
}

VertexSet doubled_annulus(const DiscreteSpace& space, Vertex a, double r, double R) {
  return annulus_set(space, a, r / 2.0, 2.0 * R);
}

VertexSet neighborhood(const DiscreteSpace& space, const VertexSet& set, double r) {
  DijkstraWorkspace ws(space);
  std::vector<Vertex> out;
  ws.run(std::span<const Vertex>(set.members()), r, [&](Vertex v, double) {
    out.push_back(v);
    return true;
  });
  return VertexSet(space, std::move(out));
}

double set_distance(const DiscreteSpace& space, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) return kInfinity;
  DijkstraWorkspace ws(space);
  double out = kInfinity;
  ws.run(std::span<const Vertex>(a.members()), kInfinity, [&](Vertex v, double d) {
    if (b.contains(v)) {
      out = d;
      return false;
    }
    return true;
  });
  return out;
}

double separation(const DiscreteSpace& space, const VertexSet& inner, const VertexSet& outer) {
  if (inner.empty()) return kInfinity;
  DijkstraWorkspace ws(space);
  double out = kInfinity;
  ws.run(std::span<const Vertex>(inner.members()), kInfinity, [&](Vertex v, double d) {
    if (!outer.contains(v)) {
      out = d;
      return false;
    }
    return true;
  });
  return out;
}

int covering_number(const DiscreteSpace& space, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("covering radius must be positive");
  std::vector<int> best(space.size(), 1);
  parallel_for(space.size(), [&](std::size_t begin, std::size_t end) {
    DijkstraWorkspace outer(space), inner(space);
    std::vector<std::uint32_t> stamp(space.size(), 0);
    std::uint32_t round = 0;
    std::vector<Vertex> members;
    for (std::size_t x = begin; x < end; ++x) {
      ++round;
      members.clear();
      outer.run(static_cast<Vertex>(x), 5.0 * s, [&](Vertex v, double) {
        members.push_back(v);
        return true;
      });
      int net = 0;
      for (Vertex m : members) {
        if (stamp[uidx(m)] == round) continue;
        ++net;
        inner.run(m, s, [&](Vertex v, double) {
          stamp[uidx(v)] = round;
          return true;
        });
      }
      best[x] = net;
    }
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace plap
