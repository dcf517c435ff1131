#include <doctest.h>

#include <cmath>
#include <sstream>

#include "plap/energy.hpp"
#include "plap/mesh_io.hpp"
#include "plap/serialize.hpp"

using namespace plap;

TEST_SUITE("io") {
  TEST_CASE("OFF round trip") {
    for (Shape shape : {Shape::unit_square, Shape::unit_disk, Shape::flat_torus, Shape::sphere}) {
      const Mesh m = build_structured_mesh(shape, 6);
      std::stringstream ss;
      write_off(ss, m);
      const Mesh r = read_off(ss);
      CHECK(r.vertex_count() == m.vertex_count());
      CHECK(r.triangles() == m.triangles());
      CHECK(r.period().has_value() == m.period().has_value());
      CHECK(r.total_area() == doctest::Approx(m.total_area()).epsilon(1e-14));
      const auto s = neumann_spectrum_p2(m, 3).values;
      CHECK(neumann_spectrum_p2(r, 3).values[2] == doctest::Approx(s[2]).epsilon(1e-12));
    }
  }

  TEST_CASE("OFF quads and comments") {
    std::istringstream in("OFF\n# a unit square\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    const Mesh m = read_off(in);
    CHECK(m.triangle_count() == 2);
    CHECK(m.total_area() == doctest::Approx(1.0));
    std::istringstream bad("PLY\n");
    CHECK_THROWS(read_off(bad));
    std::istringstream truncated("OFF\n3 1 0\n0 0 0\n");
    CHECK_THROWS(read_off(truncated));
  }

  TEST_CASE("certificate JSON") {
    const Mesh m = build_structured_mesh(Shape::unit_square, 16);
    const auto cert = certify_bound(m, 2.0, 3, Strategy::fixed_metric, 0.0);
    const Json j = Json::parse(to_json(cert).dump());
    CHECK(j["value"].get<double>() == cert.value);
    CHECK(j["decomposition"]["capacitors"].size() == cert.decomposition.capacitors.size());
    CHECK(j["kappa_constant"].is_null());
    const BoundCertificate back = certificate_from_json(j);
    CHECK(back.value == cert.value);
    CHECK(back.k == 3);
    CHECK(back.selected == cert.selected);
    CHECK(back.strategy == Strategy::fixed_metric);
  }

  TEST_CASE("spectrum JSON and CSV") {
    const Spectrum s = neumann_spectrum_p2(build_structured_mesh(Shape::unit_square, 8), 4);
    const Spectrum back = spectrum_from_json(Json::parse(to_json(s).dump()));
    CHECK(back.values == s.values);
    CHECK(back.method == SpectrumMethod::dense_sym);
    std::ostringstream os;
    write_csv(os, s);
    CHECK(os.str().rfind("k,value,residual\n1,0,", 0) == 0);
  }

  TEST_CASE("non-finite numbers become null") {
    ConsistencyReport r;
    r.entries.push_back({1, 0.0, 1.0, kInfinity});
    const Json j = Json::parse(to_json(r).dump());
    CHECK(j["entries"][0]["slack"].is_null());
    Spectrum s;
    s.values = {0.0, 1.0};
    s.residuals = {0.0, std::nan("")};
    const Spectrum back = spectrum_from_json(Json::parse(to_json(s).dump()));
    CHECK(std::isinf(back.residuals[1]));
  }

  TEST_CASE("test function CSV") {
    const DiscreteSpace s = space_from_mesh(build_structured_mesh(Shape::unit_square, 4));
    std::ostringstream os;
    write_csv(os, ball_cutoff(s, 12, 0.3));
    const std::string text = os.str();
    CHECK(text.rfind("vertex,value\n0,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 26);
  }
}
