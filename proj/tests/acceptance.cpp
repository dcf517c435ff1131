// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "plap/certify.hpp"
#include "plap/decomposition.hpp"
#include "plap/energy.hpp"
#include "plap/hypersurface.hpp"
#include "plap/testfn.hpp"
#include "support.hpp"

using namespace plap;
using namespace plap::testing;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

double rel(double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); }

std::vector<double> random_factor(const Mesh& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> phi(-1.0, 1.0);
  std::vector<double> f;
  for (std::size_t t = 0; t < m.triangle_count(); ++t) f.push_back(std::exp(2.0 * phi(rng)));
  return f;
}

void bound_dominance(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> ks;
  for (int k = 1; k <= 16; ++k) ks.push_back(k);
  int violations = 0;
  double worst = kInfinity;
  for (Shape shape : {Shape::unit_square, Shape::unit_disk}) {
    const Mesh m = build_structured_mesh(shape, 48);
    const BoundCurve curve = bound_curve(m, 2.0, ks, Strategy::fixed_metric, 0.0);
    const Spectrum s = neumann_spectrum_p2(m, 16);
    const auto report = bound_consistency(s, curve.certificates);
    violations += static_cast<int>(report.violations.size());
    for (const auto& e : report.entries) worst = std::min(worst, e.slack);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.require(seconds <= 60.0, "runtime above 60 s");
  o.detail << "violations " << violations << ", smallest slack " << worst << ", " << seconds << " s";
}

void weyl_slope(Outcome& o) {
  std::vector<int> ks;
  for (int k = 8; k <= 64; k += 4) ks.push_back(k);
  const Mesh fine = build_structured_mesh(Shape::unit_square, 128);
  const double ps[] = {1.5, 2.0};
  const auto curves = bound_curves(fine, ps, ks, Strategy::fixed_metric, 0.0);
  for (const auto& c : curves) {
    const SlopeFit f = slope_fit(c.entries, 8);
    const double target = c.p / 2.0;
    o.require(f.defined && std::abs(f.slope - target) <= 0.15, "bound slope at p = " + std::to_string(c.p));
    o.detail << "bound slope p=" << c.p << ": " << f.slope << " (target " << target << "); ";
  }
  const Mesh m = build_structured_mesh(Shape::unit_square, 64);
  const Spectrum s = neumann_spectrum_p2(m, 100);
  std::vector<std::pair<int, double>> fem;
  for (int k = 8; k <= 64; ++k) fem.push_back({k, s.values[static_cast<std::size_t>(k - 1)]});
  const SlopeFit f = slope_fit(fem);
  o.require(f.defined && std::abs(f.slope - 1.0) <= 0.1, "FEM slope");
  const double ratio = s.values[99] / (4.0 * kPi * 100.0);
  o.require(ratio >= 0.8 && ratio <= 1.25, "mu_100 / (400 pi)");
  o.detail << "FEM slope (k >= " << f.k_min << "): " << f.slope << "; mu_100/(400 pi) = " << ratio;
}

void conformal_validity(Outcome& o) {
  const Mesh base = build_structured_mesh(Shape::unit_square, 24);
  std::mt19937 rng(2024);
  int violations = 0, checks = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Mesh m = conformal_rescale(base, random_factor(base, rng));
    const Spectrum s = neumann_spectrum_p2(m, 6);
    for (int k = 1; k <= 6; ++k) {
      const auto cert = certify_bound(m, 2.0, k, Strategy::conformal, 0.0);
      ++checks;
      if (!(s.values[static_cast<std::size_t>(k - 1)] <= cert.value)) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << checks << " certificates, " << violations << " violations";
}

void conformal_invariance(Outcome& o) {
  std::mt19937 rng(77);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Mesh m = build_structured_mesh(t % 2 ? Shape::unit_disk : Shape::unit_square, 8 + t % 9);
    const Mesh r = conformal_rescale(m, random_factor(m, rng));
    std::vector<double> u(m.vertex_count());
    for (auto& x : u) x = g(rng);
    worst = std::max(worst, rel(p_dirichlet(r, u, 2.0), p_dirichlet(m, u, 2.0)));
  }
  o.require(worst <= 1e-10, "relative change above 1e-10");
  o.detail << "largest relative change " << worst;
}

void scaling_law(Outcome& o) {
  const Mesh m = build_structured_mesh(Shape::unit_square, 24);
  const double ps[] = {1.5, 2.0, 3.0};
  const Spectrum s = neumann_spectrum_p2(m, 12);
  double worst = 0.0;
  for (int k : {1, 2, 4, 8}) {
    const auto certs = certify_bounds(m, ps, k, Strategy::fixed_metric, 0.0);
    for (double sc : {0.5, 2.0, 10.0}) {
      const auto scaled = certify_bounds(m.scaled(sc), ps, k, Strategy::fixed_metric, 0.0);
      for (std::size_t i = 0; i < certs.size(); ++i)
        worst = std::max(worst, rel(scaled[i].value, certs[i].value * std::pow(sc, -certs[i].p)));
    }
  }
  for (double sc : {0.5, 2.0, 10.0}) {
    const Spectrum t = neumann_spectrum_p2(m.scaled(sc), 12);
    for (std::size_t i = 0; i < s.values.size(); ++i) worst = std::max(worst, rel(t.values[i], s.values[i] / (sc * sc)));
  }
  o.require(worst <= 1e-9, "relative deviation above 1e-9");
  o.detail << "largest relative deviation " << worst;
}

void check_certificate(Outcome& o, const DiscreteSpace& s, const DecompositionCertificate& cert, const std::string& what) {
  double floor = kInfinity;
  for (const auto& cap : cert.capacitors) {
    floor = std::min(floor, cap.inner.measure());
    o.require(cap.inner.is_subset_of(cap.outer), what + ": inner not in outer");
    o.require(separation(s, cap.inner, cap.outer) == cap.separation, what + ": separation");
  }
  o.require(static_cast<int>(cert.capacitors.size()) == cert.k, what + ": count");
  o.require(floor == cert.measure_floor, what + ": measure floor");
  o.require(cert.measure_floor >= cert.certified_c * s.total_measure() / cert.k * (1 - 1e-12), what + ": certified c");
  for (std::size_t i = 0; i < cert.capacitors.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.capacitors.size(); ++j) {
      const auto& a = cert.capacitors[i];
      const auto& b = cert.capacitors[j];
      o.require(!a.outer.intersects(b.outer), what + ": outer sets overlap");
      if (cert.form == DecompositionForm::ball_unions)
        o.require(set_distance(s, a.inner, b.inner) >= 4.0 * *cert.r0 * (1 - 1e-12), what + ": 4r separation");
    }
  }
}

template <typename F>
bool throws(F&& f) {
  try {
    f();
  } catch (const std::exception&) {
    return true;
  }
  return false;
}

void decomposition_postconditions(Outcome& o) {
  const std::vector<std::pair<std::string, DiscreteSpace>> spaces = {
      {"square", square_space(24)},
      {"disk", space_from_mesh(build_structured_mesh(Shape::unit_disk, 24))},
      {"torus", space_from_mesh(build_structured_mesh(Shape::flat_torus, 24))},
      {"two disks", two_disk_space(16)},
      {"cloud", random_cloud(600, 5)},
  };
  int certificates = 0, gates = 0;
  for (const auto& [name, s] : spaces) {
    check_certificate(o, s, gny_annuli(s, 5), name + " annuli");
    check_certificate(o, s, merged_decomposition(s, 3, 0.02), name + " merged");
    const double r = 0.19 * min_edge_length(s);
    check_certificate(o, s, capacitor_family(s, 3, r), name + " family");
    const Capacitor cap = capacitor_pair(s, s.total_measure() / 2, r);
    o.require(cap.inner.measure() >= s.total_measure() / (4.0 * covering_number(s, r)) * (1 - 1e-12), name + " pair A");
    o.require(cap.outer.measure() <= s.total_measure() / 2 * (1 + 1e-12), name + " pair D");
    o.require(cap.separation >= 4 * r, name + " pair separation");
    certificates += 4;
    o.require(throws([&] { capacitor_pair(s, s.total_measure() / 2, s.diameter()); }), name + ": pair gate");
    o.require(throws([&] { capacitor_family(s, 3, s.diameter()); }), name + ": family gate");
    o.require(throws([&] { gny_annuli(s, static_cast<int>(s.size())); }), name + ": annuli shortfall");
    gates += 3;
  }
  const DiscreteSpace single(1, {}, {1.0});
  o.require(throws([&] { capacitor_pair(single, 0.5, 0.1); }), "single vertex gate");
  o.detail << certificates << " certificates verified, " << gates + 1 << " gates rejected";
}

DiscreteSpace line_space(int count, double spacing) {
  std::vector<DiscreteSpace::WeightedEdge> edges;
  for (int i = 0; i + 1 < count; ++i) edges.push_back({i, i + 1, spacing});
  return DiscreteSpace(static_cast<std::size_t>(count), edges, std::vector<double>(static_cast<std::size_t>(count), 1.0));
}

void test_function_laws(Outcome& o) {
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = 3.0 * i / 9999.0;
    const double ref = t <= 0.5 ? 1.0 : (t <= 1.0 ? 2.0 - 2.0 * t : 0.0);
    if (profile_f(t) != ref) ++mismatches;
  }
  o.require(mismatches == 0, "profile mismatches");
  const TestFunction b = ball_cutoff(line_space(6, 0.5), 0, 1.0);
  o.require(b.values[0] == 1.0 && b.values[3] == 0.5 && b.values[4] == 0.0, "ball table");
  const TestFunction a = annulus_cutoff(line_space(20, 0.25), 0, 1.0, 2.0);
  o.require(a.values[2] == 0.0 && a.values[6] == 1.0 && a.values[16] == 0.0, "annulus table");
  const Vertex centers[] = {8, 24};
  const TestFunction u = union_plateau(line_space(33, 0.25), centers, 1.0);
  o.require(u.values[4] == 1.0 && u.values[12] == 1.0 && u.values[20] == 1.0 && u.values[28] == 1.0, "plateau table");
  double worst = 0.0;
  for (Shape shape : {Shape::unit_square, Shape::unit_disk, Shape::flat_torus}) {
    const DiscreteSpace s = space_from_mesh(build_structured_mesh(shape, 32));
    std::vector<TestFunction> family;
    for (const auto& cap : gny_annuli(s, 8).capacitors) family.push_back(capacitor_function(s, cap));
    for (const auto& cap : merged_decomposition(s, 3, 0.02).capacitors) family.push_back(capacitor_function(s, cap));
    for (double r : {0.05, 0.1, 0.2}) {
      family.push_back(ball_cutoff(s, 100, r));
      family.push_back(annulus_cutoff(s, 100, r, 2 * r));
    }
    for (const auto& f : family) worst = std::max(worst, max_edge_quotient(s, f.values) / f.lipschitz_budget);
  }
  o.require(worst <= 1.25, "edge quotient above 1.25 budget");
  o.detail << "profile mismatches " << mismatches << ", largest quotient/budget " << worst;
}

void first_eigenvalue(Outcome& o) {
  const double tol = 1e-6;
  const Mesh square = build_structured_mesh(Shape::unit_square, 24);
  const auto r = first_eig_p(square, 2.0, tol);
  const double mu2 = neumann_spectrum_p2(square, 2).values[1];
  o.require(rel(r.value, mu2) <= 2 * tol, "p = 2 mismatch");
  o.detail << "p=2 relative gap " << rel(r.value, mu2) << "; ";
  const Mesh torus = build_structured_mesh(Shape::flat_torus, 24);
  for (const Mesh* m : {&square, &torus}) {
    for (double p : {1.5, 3.0}) {
      const double mu = first_eig_p(*m, p, tol).value;
      const double bound = certify_bound(*m, p, 2, Strategy::fixed_metric, 0.0).value;
      o.require(mu <= bound, "mu_2 above its certificate");
      o.detail << (m == &square ? "square" : "torus") << " p=" << p << ": " << mu << " <= " << bound << "; ";
    }
  }
}

void constants(Outcome& o) {
  // Independent arithmetic for each closed form.
  const double kroger2 = 2.0 * 4.0 * kPi * kPi / kPi;
  const double weyl = 4.0 * kPi * kPi / kPi;
  const double beta = 2.0 * kPi * std::exp(1.0);
  const double I0 = 2.0 * std::sqrt(kPi);
  const auto [i0, nm] = euclidean_defaults(2);
  const double errs[] = {rel(kroger_constant(2), kroger2), rel(weyl_reference(2, 1.0), weyl),
                         rel(beta_constant(2.0, 2), beta), rel(i0, I0), rel(nm, 1600.0)};
  double worst = 0.0;
  for (double e : errs) worst = std::max(worst, e);
  o.require(worst <= 1e-12, "constant mismatch");
  o.detail << "largest relative error " << worst;
}

void appendix(Outcome& o) {
  const auto disk = make_hypersurface_data(2, 2 * kPi, kPi);
  const Spectrum ref = boundary_spectrum_reference(BoundaryShape::circle, 1.0, 20);
  int violations = 0;
  for (int k = 1; k <= 20; ++k)
    if (!(ref.values[static_cast<std::size_t>(k - 1)] <= hypersurface_bound(disk, 2.0, k, 1.0))) ++violations;
  o.require(violations == 0, "circle spectrum above the bound");
  o.require(k0_threshold(disk, 1.0, 2.0) == 1, "k0 of the unit disk");
  o.require(rel(prop_hyp_bound(disk, 2.0, 1, 1.0), 1e12) <= 1e-9, "large k form value");
  int failures = 0, first_k = 0, first_k0 = 0;
  double first_q = 0.0;
  for (double q : {0.5, 1.0, 2.0}) {
    for (int k0 = 2; k0 <= 100; ++k0) {
      for (int k = 1; k < k0; ++k) {
        if (!split_max_inequality(k, k0, q)) {
          if (failures++ == 0) {
            first_k = k;
            first_k0 = k0;
            first_q = q;
          }
        }
      }
    }
  }
  o.require(failures == 0, "split inequality");
  o.detail << "circle violations " << violations << "; split inequality fails for " << failures << " pairs";
  if (failures > 0) o.detail << " (first: q=" << first_q << ", k=" << first_k << ", k0=" << first_k0 << ")";
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"bound dominance", bound_dominance},
      {"Weyl slope", weyl_slope},
      {"conformal validity", conformal_validity},
      {"conformal invariance of the 2-energy", conformal_invariance},
      {"scaling law", scaling_law},
      {"decomposition postconditions", decomposition_postconditions},
      {"test-function laws", test_function_laws},
      {"first eigenvalue for p != 2", first_eigenvalue},
      {"constants", constants},
      {"hypersurface bounds", appendix},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
