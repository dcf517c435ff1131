#include "plap/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plap/dijkstra.hpp"

namespace plap {

namespace {

std::size_t uidx(Vertex v) { return static_cast<std::size_t>(v); }

TestFunction finish(const DiscreteSpace& space, std::vector<double> values, double budget) {
  TestFunction u;
  std::vector<Vertex> support, plateau;
  for (std::size_t v = 0; v < values.size(); ++v) {
    if (values[v] > 0.0) support.push_back(static_cast<Vertex>(v));
    if (values[v] == 1.0) plateau.push_back(static_cast<Vertex>(v));
  }
  u.values = std::move(values);
  u.support = VertexSet(space, std::move(support));
  u.plateau = VertexSet(space, std::move(plateau));
  u.lipschitz_budget = budget;
  return u;
}

double ball_value(double d, double r) { return d <= r ? 1.0 : profile_f(d / (2.0 * r)); }

}  // namespace

double profile_f(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("profile argument must be nonnegative");
  if (t <= 0.5) return 1.0;
  if (t <= 1.0) return 2.0 - 2.0 * t;
  return 0.0;
}

TestFunction ball_cutoff(const DiscreteSpace& space, Vertex center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("cutoff radius must be positive");
  std::vector<double> values(space.size(), 0.0);
  for (const auto& [v, d] : space.ball_members(center, 2.0 * r)) values[uidx(v)] = ball_value(d, r);
  return finish(space, std::move(values), 1.0 / r);
}

TestFunction annulus_cutoff(const DiscreteSpace& space, Vertex center, double r, double R) {
  if (!(r > 0.0) || !(r < R)) throw std::invalid_argument("annulus cutoff needs 0 < r < R");
  std::vector<double> values(space.size(), 0.0);
  for (const auto& [v, d] : space.ball_members(center, 2.0 * R)) {
    double u = 0.0;
    if (d < r / 2.0) u = 0.0;
    else if (d <= r) u = 1.0 - profile_f(d / r);
    else if (d <= R) u = 1.0;
    else u = profile_f(d / (2.0 * R));
    values[uidx(v)] = u;
  }
  return finish(space, std::move(values), 2.0 / r);
}

TestFunction union_plateau(const DiscreteSpace& space, std::span<const Vertex> centers, double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("plateau radius must be positive");
  if (centers.empty()) throw std::invalid_argument("union_plateau needs at least one centre");
  std::vector<char> is_center(space.size(), 0);
  for (Vertex c : centers) is_center[uidx(c)] = 1;
  DijkstraWorkspace ws(space);
  std::vector<double> values(space.size(), 0.0);
  for (Vertex c : centers) {
    ws.run(c, 4.0 * r0 * (1.0 - 1e-12), [&](Vertex v, double) {
      if (v != c && is_center[uidx(v)]) throw std::invalid_argument("plateau centres closer than 4 r0");
      return true;
    });
    ws.run(c, 2.0 * r0, [&](Vertex v, double d) {
      values[uidx(v)] = std::max(values[uidx(v)], ball_value(d, r0));
      return true;
    });
  }
  TestFunction u = finish(space, std::move(values), 1.0 / r0);
  u.c0 = r0 * max_edge_quotient(space, u.values);
  return u;
}

TestFunction constant_function(const DiscreteSpace& space) {
  return finish(space, std::vector<double>(space.size(), 1.0), 0.0);
}

TestFunction capacitor_function(const DiscreteSpace& space, const Capacitor& cap) {
  if (cap.kind == CapacitorKind::ball_union) return union_plateau(space, cap.centers, cap.radius);
  if (cap.is_ball()) return ball_cutoff(space, cap.center, cap.r_out);
  return annulus_cutoff(space, cap.center, cap.r_in, cap.r_out);
}

double max_edge_quotient(const DiscreteSpace& space, std::span<const double> u) {
  if (u.size() != space.size()) throw std::invalid_argument("function size does not match space");
  double q = 0.0;
  for (std::size_t a = 0; a < space.size(); ++a) {
    for (const auto& nb : space.neighbors(static_cast<Vertex>(a))) {
      q = std::max(q, std::abs(u[a] - u[uidx(nb.vertex)]) / nb.length);
    }
  }
  return q;
}

bool supports_separated(const DiscreteSpace& space, const std::vector<TestFunction>& family) {
  std::vector<int> owner(space.size(), -1);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (Vertex v : family[i].support.members()) {
      if (owner[uidx(v)] != -1) return false;
      owner[uidx(v)] = static_cast<int>(i);
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (Vertex v : family[i].support.members()) {
      for (const auto& nb : space.neighbors(v)) {
        const int o = owner[uidx(nb.vertex)];
        if (o != -1 && o != static_cast<int>(i)) return false;
      }
    }
  }
  return true;
}

}  // namespace plap
