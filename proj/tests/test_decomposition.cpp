#include <doctest.h>

#include <cmath>
#include <numbers>

#include "plap/decomposition.hpp"
#include "support.hpp"

using namespace plap;
using namespace plap::testing;

namespace {

// Independent recomputation of every advertised postcondition.
void check_postconditions(const DiscreteSpace& s, const DecompositionCertificate& cert) {
  REQUIRE(static_cast<int>(cert.capacitors.size()) == cert.k);
  double floor = kInfinity;
  for (const auto& cap : cert.capacitors) {
    CHECK(cap.inner.is_subset_of(cap.outer));
    CHECK(cap.inner.measure() > 0.0);
    floor = std::min(floor, cap.inner.measure());
    CHECK(separation(s, cap.inner, cap.outer) == cap.separation);
  }
  CHECK(floor == cert.measure_floor);
  CHECK(cert.measure_floor >= cert.certified_c * s.total_measure() / cert.k * (1 - 1e-12));
  for (std::size_t i = 0; i < cert.capacitors.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.capacitors.size(); ++j) {
      const auto& a = cert.capacitors[i];
      const auto& b = cert.capacitors[j];
      CHECK_FALSE(a.outer.intersects(b.outer));
      if (cert.form == DecompositionForm::annuli) CHECK_FALSE(sets_touch(s, a.outer, b.outer));
      if (cert.form == DecompositionForm::ball_unions)
        CHECK(set_distance(s, a.inner, b.inner) >= 4.0 * *cert.r0 * (1 - 1e-12));
    }
  }
  CHECK(cert.disjoint);
  if (cert.form == DecompositionForm::annuli) CHECK(cert.separated);
  CHECK_NOTHROW(verify_certificate(s, cert));
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("single annulus") {
    const DiscreteSpace s = square_space(16);
    const auto cert = gny_annuli(s, 1);
    CHECK(cert.capacitors.size() == 1);
    CHECK(cert.capacitors[0].inner.measure() >= cert.certified_c * s.total_measure() * (1 - 1e-12));
    CHECK(cert.certified_c >= 0.2);
    check_postconditions(s, cert);
  }

  TEST_CASE("four annuli on the square reach c = 0.2") {
    const DiscreteSpace s = square_space(32);
    const auto cert = gny_annuli(s, 4);
    CHECK(cert.certified_c >= 0.2);
    CHECK(cert.measure_floor >= 0.05 * (1 - 1e-12));
    for (const auto& cap : cert.capacitors) {
      CHECK(cap.kind == CapacitorKind::annulus_pair);
      if (cap.is_ball()) {
        CHECK(cap.inner.members() == ball(s, cap.center, cap.r_out).members());
        CHECK(cap.outer.members() == ball(s, cap.center, 2 * cap.r_out).members());
      } else {
        CHECK(cap.inner.members() == annulus_set(s, cap.center, cap.r_in, cap.r_out).members());
        CHECK(cap.outer.members() == doubled_annulus(s, cap.center, cap.r_in, cap.r_out).members());
      }
    }
    check_postconditions(s, cert);
  }

  TEST_CASE("two far apart disks give one ball per component") {
    const DiscreteSpace s = two_disk_space(12);
    const std::size_t half = s.size() / 2;
    double left = 0.0;
    for (std::size_t v = 0; v < half; ++v) left += s.measure(static_cast<Vertex>(v));
    CHECK(left == doctest::Approx(s.total_measure() / 2).epsilon(1e-12));
    AnnuliOptions opt;
    opt.c_target = 0.9;
    const auto cert = gny_annuli(s, 2, opt);
    check_postconditions(s, cert);
    int on_left = 0;
    for (const auto& cap : cert.capacitors) {
      // The bridge endpoint next to the first ball is blocked, so the second
      // one may skip it; either way it holds almost all of its disk.
      CHECK(cap.inner.measure() >= 0.45 * s.total_measure());
      const auto& m = cap.outer.members();
      const bool all_left = std::all_of(m.begin(), m.end(), [&](Vertex v) { return static_cast<std::size_t>(v) < half; });
      const bool all_right = std::all_of(m.begin(), m.end(), [&](Vertex v) { return static_cast<std::size_t>(v) >= half; });
      CHECK((all_left || all_right));
      on_left += all_left ? 1 : 0;
    }
    CHECK(on_left == 1);
  }

  TEST_CASE("too many annuli fail with the achieved count") {
    const DiscreteSpace s = square_space(2);
    CHECK_THROWS_AS(gny_annuli(s, 5), DecompositionError);
    CHECK_THROWS_AS(gny_annuli(s, 0), std::invalid_argument);
    try {
      gny_annuli_fixed(s, 4, 0.9);
      FAIL("expected a shortfall");
    } catch (const DecompositionError& e) {
      CHECK(std::string(e.what()).find("of 4") != std::string::npos);
    }
  }

  TEST_CASE("certified c as k grows") {
    const DiscreteSpace s = square_space(24);
    double previous = kInfinity;
    for (int k : {1, 2, 4, 8, 16}) {
      const double c = gny_annuli(s, k).certified_c;
      if (c > previous) MESSAGE("certified c rose from " << previous << " to " << c << " at k = " << k);
      previous = c;
    }
  }

  TEST_CASE("capacitor pair on a single vertex is gated") {
    // beta = m/2 gives a floor of m/4, below the only ball measure m.
    const DiscreteSpace s(1, {}, {1.0});
    CHECK_THROWS_WITH(capacitor_pair(s, 0.5, 0.1), "ball measure too large for radius r");
  }

  TEST_CASE("capacitor pair on the square") {
    const DiscreteSpace s = square_space(16);
    const double beta = 0.5, r = 0.05;
    const int N = covering_number(s, r);
    const Capacitor cap = capacitor_pair(s, beta, r);
    CHECK(cap.kind == CapacitorKind::ball_union);
    CHECK(cap.inner.measure() >= beta / (2.0 * N) * (1 - 1e-12));
    CHECK(cap.outer.measure() <= beta * (1 + 1e-12));
    CHECK(separation(s, cap.inner, cap.outer) >= 4 * r);
    for (std::size_t i = 0; i < cap.centers.size(); ++i)
      for (std::size_t j = i + 1; j < cap.centers.size(); ++j) CHECK(s.distance(cap.centers[i], cap.centers[j]) >= 4 * r);
    std::vector<Vertex> balls;
    for (Vertex x : cap.centers) {
      const VertexSet b = ball(s, x, r);
      balls.insert(balls.end(), b.members().begin(), b.members().end());
    }
    std::sort(balls.begin(), balls.end());
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    CHECK(cap.inner.members() == balls);
    CHECK(cap.outer.members() == neighborhood(s, cap.inner, 4 * r).members());
  }

  TEST_CASE("capacitor pair rejects large radii and beta") {
    const DiscreteSpace s = square_space(16);
    CHECK_THROWS_WITH(capacitor_pair(s, 0.5, 0.3), "ball measure too large for radius r");
    CHECK_THROWS_AS(capacitor_pair(s, 0.6, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(capacitor_pair(s, 0.5, 0.0), std::invalid_argument);
  }

  TEST_CASE("capacitor family on the square") {
    const DiscreteSpace s = square_space(8);
    const double r = 0.02;
    const int N = covering_number(s, r);
    const auto cert = capacitor_family(s, 3, r);
    CHECK(cert.form == DecompositionForm::ball_unions);
    CHECK(cert.measure_floor >= s.total_measure() / (2.0 * N * 3) * (1 - 1e-12));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        CHECK(set_distance(s, cert.capacitors[i].inner, cert.capacitors[j].inner) >= 0.08);
    check_postconditions(s, cert);
  }

  TEST_CASE("capacitor family with one set matches the pair floor") {
    const DiscreteSpace s = square_space(8);
    const double r = 0.02;
    const int N = covering_number(s, r);
    const auto cert = capacitor_family(s, 1, r);
    const Capacitor pair = capacitor_pair(s, s.total_measure() / 2, r);
    CHECK(cert.measure_floor >= s.total_measure() / (2.0 * N) * (1 - 1e-12));
    CHECK(cert.capacitors[0].centers.front() == pair.centers.front());
    CHECK_THROWS_WITH(capacitor_family(s, 3, 0.3), "ball measure too large for radius r");
  }

  TEST_CASE("merged decomposition without a radius cap uses annuli") {
    const DiscreteSpace s = square_space(16);
    for (int k : {1, 3, 6}) {
      const auto cert = merged_decomposition(s, k, kInfinity);
      CHECK(cert.form == DecompositionForm::annuli);
      check_postconditions(s, cert);
    }
  }

  TEST_CASE("merged decomposition with a = 1") {
    const DiscreteSpace s = square_space(24);
    const auto cert = merged_decomposition(s, 2, 1.0);
    CHECK(cert.form == DecompositionForm::annuli);
    for (const auto& cap : cert.capacitors) CHECK(cap.r_out < 1.0);
    check_postconditions(s, cert);
  }

  TEST_CASE("merged decomposition with strong curvature uses ball unions") {
    const DiscreteSpace s = square_space(16);
    const auto cert = merged_decomposition(s, 2, 0.01);
    CHECK(cert.form == DecompositionForm::ball_unions);
    REQUIRE(cert.r0.has_value());
    CHECK(*cert.r0 == doctest::Approx(2.5e-5).epsilon(1e-14));
    check_postconditions(s, cert);
  }

  TEST_CASE("inner radius floor") {
    const DiscreteSpace single(1, {}, {1.0});
    CHECK(inner_radius_floor(single, 1, 0.5) == 0.0);
    const DiscreteSpace s = square_space(32);
    // c = 1, k = 1 asks for the whole space: half the graph radius.
    double radius = kInfinity;
    for (std::size_t v = 0; v < s.size(); ++v) {
      const auto d = s.distances_from(static_cast<Vertex>(v));
      radius = std::min(radius, *std::max_element(d.begin(), d.end()));
    }
    CHECK(inner_radius_floor(s, 1, 1.0) == doctest::Approx(radius / 2).epsilon(1e-14));
    const double continuum = 0.5 * std::sqrt(0.1 / (std::numbers::pi * 16));
    const double discrete = inner_radius_floor(s, 16, 0.1);
    MESSAGE("inner radius floor " << discrete << " against continuum " << continuum);
    CHECK(discrete == doctest::Approx(continuum).epsilon(0.35));
    CHECK_THROWS_AS(inner_radius_floor(s, 1, 1.5), std::invalid_argument);
  }

  TEST_CASE("verification catches corruption") {
    const DiscreteSpace s = square_space(16);
    auto cert = gny_annuli(s, 3);
    auto bad = cert;
    bad.measure_floor *= 1.5;
    CHECK_THROWS_AS(verify_certificate(s, bad), std::logic_error);
    bad = cert;
    bad.capacitors[1].outer = bad.capacitors[0].outer;
    CHECK_THROWS_AS(verify_certificate(s, bad), std::logic_error);
    Capacitor cap = cert.capacitors[0];
    cap.separation *= 2;
    CHECK_THROWS_AS(verify_capacitor(s, cap), std::logic_error);
  }

  TEST_CASE("postconditions on five spaces") {
    const std::vector<std::pair<std::string, DiscreteSpace>> spaces = {
        {"square", square_space(24)},
        {"disk", space_from_mesh(build_structured_mesh(Shape::unit_disk, 24))},
        {"torus", space_from_mesh(build_structured_mesh(Shape::flat_torus, 24))},
        {"two disks", two_disk_space(16)},
        {"cloud", random_cloud(600, 5)},
    };
    for (const auto& [name, s] : spaces) {
      CAPTURE(name);
      check_postconditions(s, gny_annuli(s, 5));
      const auto merged = merged_decomposition(s, 3, 0.02);
      check_postconditions(s, merged);
      CHECK(merged.separated);
      const double r = 0.19 * min_edge_length(s);
      check_postconditions(s, capacitor_family(s, 3, r));
      CHECK_THROWS_WITH(capacitor_family(s, 3, s.diameter()), "ball measure too large for radius r");
    }
  }
}
