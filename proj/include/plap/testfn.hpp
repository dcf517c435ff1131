#pragma once

#include <span>
#include <vector>

#include "plap/decomposition.hpp"
#include "plap/geometry.hpp"

namespace plap {

/// Vertex values of a cutoff function together with its support (value > 0),
/// plateau (value = 1) and the analytic bound on its slope.
struct TestFunction {
  std::vector<double> values;
  VertexSet support;
  VertexSet plateau;
  double lipschitz_budget = 0.0;
  // Measured r0 * max edge quotient; only set by union_plateau.
  double c0 = 0.0;
};

/// 1 on [0, 1/2], 2 - 2t on [1/2, 1], 0 beyond.
double profile_f(double t);

TestFunction ball_cutoff(const DiscreteSpace& space, Vertex center, double r);
TestFunction annulus_cutoff(const DiscreteSpace& space, Vertex center, double r, double R);
/// Pointwise max of ball cutoffs with plateau radius r0 around each centre.
TestFunction union_plateau(const DiscreteSpace& space, std::span<const Vertex> centers, double r0);
TestFunction constant_function(const DiscreteSpace& space);

/// Cutoff matched to a capacitor's kind.
TestFunction capacitor_function(const DiscreteSpace& space, const Capacitor& cap);

/// max over edges of |u(a) - u(b)| / length(a, b).
double max_edge_quotient(const DiscreteSpace& space, std::span<const double> u);

/// True when supports share no vertex and no edge joins them.
bool supports_separated(const DiscreteSpace& space, const std::vector<TestFunction>& family);

}  // namespace plap
