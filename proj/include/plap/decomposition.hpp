#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plap/geometry.hpp"

namespace plap {

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CapacitorKind { annulus_pair, ball_union };

/// Nested pair A ⊂ D. Annulus pairs remember their centre and radii (inner
/// radius 0 means a plain ball); ball unions remember their centres and the
/// common ball radius.
struct Capacitor {
  VertexSet inner;
  VertexSet outer;
  double separation = 0.0;
  CapacitorKind kind = CapacitorKind::annulus_pair;

  Vertex center = -1;
  double r_in = 0.0;
  double r_out = 0.0;

  std::vector<Vertex> centers;
  double radius = 0.0;

  bool is_ball() const { return kind == CapacitorKind::annulus_pair && r_in == 0.0; }
};

enum class DecompositionForm { annuli, ball_unions };

std::string to_string(CapacitorKind kind);
std::string to_string(DecompositionForm form);

struct DecompositionCertificate {
  std::vector<Capacitor> capacitors;
  int k = 0;
  double measure_floor = 0.0;
  double certified_c = 0.0;
  bool disjoint = false;   // outer sets pairwise disjoint
  bool separated = false;  // additionally no edge joins two outer sets
  DecompositionForm form = DecompositionForm::annuli;
  std::optional<double> r0;
  std::optional<double> radius_cap;
  std::string note;
};

struct AnnuliOptions {
  double c_target = 0.2;
  double c_min = 0.01;
  double shrink = 0.8;
  double radius_cap = kInfinity;  // outer radii must be strictly below
  // Scan stops once a candidate ball holds this multiple of the target.
  double scan_limit = 64.0;
};

/// Greedy annulus decomposition: k capacitors (A_i, 2A_i) with the doubled
/// annuli pairwise disjoint and not joined by any edge. Each step takes the
/// smallest admissible outer radius over all centres.
DecompositionCertificate gny_annuli(const DiscreteSpace& space, int k, const AnnuliOptions& options = {});

/// A single annulus decomposition attempt at fixed c; throws on shortfall.
DecompositionCertificate gny_annuli_fixed(const DiscreteSpace& space, int k, double c,
                                          double radius_cap = kInfinity, double scan_limit = 64.0);

/// Two-set capacitor from maximal r-balls: A a union of r-balls with centres
/// at least 4r apart, D = A^{4r}.
Capacitor capacitor_pair(const DiscreteSpace& space, double beta, double r);

/// k ball unions at radius r with pairwise set distance ≥ 4r.
DecompositionCertificate capacitor_family(const DiscreteSpace& space, int k, double r);

struct MergedOptions {
  AnnuliOptions annuli;
  double c_accept = 0.05;
};

/// Annuli with outer radius below a when they achieve c ≥ c_accept;
/// otherwise ball unions at r0 = a/400. a = +inf only tries annuli.
DecompositionCertificate merged_decomposition(const DiscreteSpace& space, int k, double a,
                                              const MergedOptions& options = {});

/// ½·inf{r : sup_x ς(B(x,r)) ≥ c ς(X)/k}.
double inner_radius_floor(const DiscreteSpace& space, int k, double c);

struct BallUnionOptions {
  int count = 1;
  double radius = 0.0;
  double collar = 0.0;  // D_i = A_i^{collar}
  double gap = 0.0;     // dist(A_i, A_j) ≥ gap
  double target = 0.0;  // ς(A_i) ≥ target
  // Also keep each D_j off the closure of every earlier D_i, so no vertex
  // or edge is shared.
  bool separate_outer = false;
};

/// Greedy ball-union capacitors shared by the constructions above; throws
/// DecompositionError with the achieved measures on shortfall.
std::vector<Capacitor> build_ball_unions(const DiscreteSpace& space, const BallUnionOptions& options);

/// Exact checks; throw std::logic_error with a description on failure.
void verify_capacitor(const DiscreteSpace& space, const Capacitor& cap);
void verify_certificate(const DiscreteSpace& space, const DecompositionCertificate& cert);

/// True when some edge joins a vertex of `a` to a vertex of `b` or they share a vertex.
bool sets_touch(const DiscreteSpace& space, const VertexSet& a, const VertexSet& b);

}  // namespace plap
