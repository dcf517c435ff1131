#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "plap/geometry.hpp"

namespace plap::testing {

inline DiscreteSpace square_space(int res) { return space_from_mesh(build_structured_mesh(Shape::unit_square, res)); }

// Two unit disks with centres 10 apart, joined by one bridging edge.
inline DiscreteSpace two_disk_space(int res) {
  const Mesh disk = build_structured_mesh(Shape::unit_disk, res);
  const DiscreteSpace one = space_from_mesh(disk);
  std::vector<Eigen::Vector3d> pts;
  std::vector<double> measure;
  for (double shift : {0.0, 10.0}) {
    for (std::size_t v = 0; v < disk.vertex_count(); ++v) {
      pts.push_back(disk.vertices()[v] + Eigen::Vector3d(shift, 0, 0));
      measure.push_back(one.measure(static_cast<Vertex>(v)));
    }
  }
  return space_from_points(pts, std::move(measure), 8);
}

inline DiscreteSpace random_cloud(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(u(rng), u(rng), 0.0);
  return space_from_points(pts, std::vector<double>(static_cast<std::size_t>(count), 1.0 / count), 8);
}

inline double min_edge_length(const DiscreteSpace& s) {
  double m = kInfinity;
  for (std::size_t v = 0; v < s.size(); ++v)
    for (const auto& nb : s.neighbors(static_cast<Vertex>(v))) m = std::min(m, nb.length);
  return m;
}

}  // namespace plap::testing
