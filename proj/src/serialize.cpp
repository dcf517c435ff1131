#include "plap/serialize.hpp"

#include <cmath>
#include <ostream>

namespace plap {

namespace {

// JSON has no infinity; non-finite numbers are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double read_number(const Json& j) { return j.is_null() ? kInfinity : j.get<double>(); }

}  // namespace

Json to_json(const Capacitor& cap) {
  Json j;
  j["kind"] = to_string(cap.kind);
  j["inner"] = cap.inner.members();
  j["outer"] = cap.outer.members();
  j["inner_measure"] = cap.inner.measure();
  j["outer_measure"] = cap.outer.measure();
  j["separation"] = number(cap.separation);
  if (cap.kind == CapacitorKind::annulus_pair) {
    j["center"] = cap.center;
    j["r_in"] = cap.r_in;
    j["r_out"] = cap.r_out;
  } else {
    j["centers"] = cap.centers;
    j["radius"] = cap.radius;
  }
  return j;
}

Json to_json(const DecompositionCertificate& cert) {
  Json j;
  j["k"] = cert.k;
  j["form"] = to_string(cert.form);
  j["measure_floor"] = cert.measure_floor;
  j["certified_c"] = cert.certified_c;
  j["disjoint"] = cert.disjoint;
  j["separated"] = cert.separated;
  j["r0"] = cert.r0 ? Json(*cert.r0) : Json(nullptr);
  j["radius_cap"] = cert.radius_cap ? Json(*cert.radius_cap) : Json(nullptr);
  j["note"] = cert.note;
  j["capacitors"] = Json::array();
  for (const auto& c : cert.capacitors) j["capacitors"].push_back(to_json(c));
  return j;
}

Json to_json(const BoundCertificate& cert) {
  Json j;
  j["p"] = cert.p;
  j["k"] = cert.k;
  j["kappa"] = cert.kappa;
  j["strategy"] = to_string(cert.strategy);
  j["value"] = cert.value;
  j["per_capacitor_rayleigh"] = cert.per_capacitor_rayleigh;
  j["selected"] = cert.selected;
  j["supports_disjoint"] = cert.supports_disjoint;
  j["measure_feasible"] = cert.measure_feasible;
  j["lipschitz_budgets"] = cert.lipschitz_budgets;
  j["holder_majorants"] = cert.holder_majorants;
  j["c0"] = cert.c0;
  j["kappa_constant"] = cert.kappa_constant ? Json(*cert.kappa_constant) : Json(nullptr);
  j["decomposition"] = to_json(cert.decomposition);
  return j;
}

Json to_json(const Spectrum& spectrum) {
  Json j;
  j["p"] = spectrum.p;
  j["method"] = to_string(spectrum.method);
  j["values"] = spectrum.values;
  j["residuals"] = spectrum.residuals;
  return j;
}

Json to_json(const EnergyReport& report) {
  return Json{{"p", report.p}, {"dirichlet", report.dirichlet}, {"mass", report.mass}, {"rayleigh", report.rayleigh}};
}

Json to_json(const ConsistencyReport& report) {
  auto rows = [](const std::vector<ConsistencyEntry>& v) {
    Json a = Json::array();
    for (const auto& e : v)
      a.push_back(Json{{"k", e.k}, {"eigenvalue", e.eigenvalue}, {"bound", e.bound}, {"slack", number(e.slack)}});
    return a;
  };
  return Json{{"ok", report.ok}, {"entries", rows(report.entries)}, {"violations", rows(report.violations)}};
}

Json to_json(const HypersurfaceData& data) {
  return Json{{"n", data.n},          {"sigma_measure", data.sigma_measure}, {"omega_measure", data.omega_measure},
              {"I", data.I},          {"I0", data.I0},                       {"r_minus", number(data.r_minus)},
              {"NM", data.NM}};
}

Json to_json(const BoundCurve& curve) {
  Json j;
  j["p"] = curve.p;
  j["n"] = curve.n;
  j["entries"] = Json::array();
  for (const auto& [k, v] : curve.entries) j["entries"].push_back(Json{{"k", k}, {"value", v}});
  j["slope_defined"] = curve.fit.defined;
  j["slope_fit"] = curve.fit.defined ? Json(curve.fit.slope) : Json(nullptr);
  j["intercept_fit"] = curve.fit.defined ? Json(curve.fit.intercept) : Json(nullptr);
  j["k_min"] = curve.fit.k_min;
  return j;
}

BoundCertificate certificate_from_json(const Json& j) {
  BoundCertificate c;
  c.p = j.at("p").get<double>();
  c.k = j.at("k").get<int>();
  c.kappa = j.value("kappa", 0.0);
  c.strategy = parse_strategy(j.value("strategy", std::string("fixed_metric")));
  c.value = j.at("value").get<double>();
  if (j.contains("per_capacitor_rayleigh")) c.per_capacitor_rayleigh = j["per_capacitor_rayleigh"].get<std::vector<double>>();
  if (j.contains("selected")) c.selected = j["selected"].get<std::vector<int>>();
  return c;
}

Spectrum spectrum_from_json(const Json& j) {
  Spectrum s;
  s.p = j.value("p", 2.0);
  s.values = j.at("values").get<std::vector<double>>();
  if (j.contains("residuals")) {
    for (const auto& r : j["residuals"]) s.residuals.push_back(read_number(r));
  }
  const std::string method = j.value("method", std::string("dense_sym"));
  s.method = method == "descent" ? SpectrumMethod::descent
             : method == "closed_form" ? SpectrumMethod::closed_form
                                       : SpectrumMethod::dense_sym;
  return s;
}

void write_csv(std::ostream& out, const TestFunction& u) {
  out << "vertex,value\n";
  out.precision(17);
  for (std::size_t v = 0; v < u.values.size(); ++v) out << v << ',' << u.values[v] << '\n';
}

void write_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "k,value,residual\n";
  out.precision(17);
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    out << i + 1 << ',' << spectrum.values[i] << ',';
    if (i < spectrum.residuals.size()) out << spectrum.residuals[i];
    out << '\n';
  }
}

}  // namespace plap
