#pragma once

#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "plap/geometry.hpp"

namespace plap {

/// Reusable single/multi-source Dijkstra over a DiscreteSpace. Only the
/// vertices touched by the previous run are reset, so repeated local
/// searches cost O(ball) rather than O(|X|). Not thread-safe; use one
/// workspace per thread.
class DijkstraWorkspace {
 public:
  explicit DijkstraWorkspace(const DiscreteSpace& space)
      : space_(space), dist_(space.size(), kInfinity) {}

  /// Settles vertices with distance < cutoff in nondecreasing order and calls
  /// visit(v, d) for each; the search stops early when visit returns false.
  template <typename Visit>
  void run(std::span<const Vertex> sources, double cutoff, Visit&& visit) {
    reset();
    for (Vertex s : sources) {
      if (dist_[idx(s)] > 0.0 && cutoff > 0.0) {
        touch(s, 0.0);
        heap_.push({0.0, s});
      }
    }
    while (!heap_.empty()) {
      const auto [d, v] = heap_.top();
      heap_.pop();
      if (d > dist_[idx(v)]) continue;
      if (!visit(v, d)) {
        drain();
        return;
      }
      for (const auto& nb : space_.neighbors(v)) {
        const double nd = d + nb.length;
        if (nd < cutoff && nd < dist_[idx(nb.vertex)]) {
          touch(nb.vertex, nd);
          heap_.push({nd, nb.vertex});
        }
      }
    }
  }

  template <typename Visit>
  void run(Vertex source, double cutoff, Visit&& visit) {
    run(std::span<const Vertex>(&source, 1), cutoff, std::forward<Visit>(visit));
  }

  /// Tentative distance from the last run (+inf if not reached).
  double distance(Vertex v) const { return dist_[idx(v)]; }

 private:
  using Entry = std::pair<double, Vertex>;
  const DiscreteSpace& space_;
  std::vector<double> dist_;
  std::vector<Vertex> touched_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;

  static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }
  void touch(Vertex v, double d) {
    if (dist_[idx(v)] == kInfinity) touched_.push_back(v);
    dist_[idx(v)] = d;
  }
  void reset() {
    for (Vertex v : touched_) dist_[idx(v)] = kInfinity;
    touched_.clear();
    drain();
  }
  void drain() {
    while (!heap_.empty()) heap_.pop();
  }
};

}  // namespace plap
