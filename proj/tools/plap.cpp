#include <cmath>
#include <numbers>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "plap/certify.hpp"
#include "plap/eigensolve.hpp"
#include "plap/hypersurface.hpp"
#include "plap/mesh_io.hpp"
#include "plap/serialize.hpp"

using namespace plap;

namespace {

struct MeshSource {
  std::string path;
  std::string shape = "square";
  int res = 64;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mesh", path, "OFF mesh file");
    cmd->add_option("--shape", shape, "square, disk, sphere or torus when no mesh is given");
    cmd->add_option("--res", res, "resolution for generated meshes");
  }

  Mesh load() const {
    if (!path.empty()) return read_off_file(path);
    return build_structured_mesh(parse_shape(shape), res);
  }
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return Json::parse(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified upper bounds for p-Laplacian eigenvalues on meshes"};
  app.require_subcommand(1);

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "generate a structured mesh");
  std::string mesh_shape = "square", mesh_out;
  int mesh_res = 64;
  mesh_cmd->add_option("--shape", mesh_shape, "square, disk, sphere or torus")->required();
  mesh_cmd->add_option("--res", mesh_res, "resolution")->required();
  mesh_cmd->add_option("-o,--output", mesh_out, "output OFF file");
  mesh_cmd->callback([&] {
    std::ostringstream os;
    write_off(os, build_structured_mesh(parse_shape(mesh_shape), mesh_res));
    emit(mesh_out, os.str());
  });

  // certify
  auto* cert_cmd = app.add_subcommand("certify", "certify an upper bound for mu_{k,p}");
  MeshSource cert_src;
  cert_src.add_to(cert_cmd);
  double cert_p = 2.0, cert_kappa = 0.0;
  int cert_k = 2, cert_over = 3;
  std::string cert_strategy = "fixed", cert_out;
  cert_cmd->add_option("--p", cert_p, "exponent p > 1");
  cert_cmd->add_option("--k", cert_k, "eigenvalue index");
  cert_cmd->add_option("--strategy", cert_strategy, "fixed or conformal");
  cert_cmd->add_option("--kappa", cert_kappa, "curvature scale; 0 means none");
  cert_cmd->add_option("--overprovision", cert_over, "capacitors built per certified index");
  cert_cmd->add_option("-o,--output", cert_out, "output JSON");
  cert_cmd->callback([&] {
    CertifyOptions opt;
    opt.overprovision = cert_over;
    const auto cert = certify_bound(cert_src.load(), cert_p, cert_k, parse_strategy(cert_strategy), cert_kappa, opt);
    emit(cert_out, to_json(cert).dump(2) + "\n");
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "bound curve over a range of k");
  MeshSource sweep_src;
  sweep_src.add_to(sweep_cmd);
  double sweep_p = 2.0, sweep_kappa = 0.0;
  int sweep_kmin = 1, sweep_kmax = 16, sweep_step = 1;
  std::string sweep_strategy = "fixed", sweep_out;
  sweep_cmd->add_option("--p", sweep_p, "exponent p > 1");
  sweep_cmd->add_option("--kmin", sweep_kmin, "first k");
  sweep_cmd->add_option("--kmax", sweep_kmax, "last k");
  sweep_cmd->add_option("--kstep", sweep_step, "k increment");
  sweep_cmd->add_option("--strategy", sweep_strategy, "fixed or conformal");
  sweep_cmd->add_option("--kappa", sweep_kappa, "curvature scale; 0 means none");
  sweep_cmd->add_option("-o,--output", sweep_out, "output CSV");
  sweep_cmd->callback([&] {
    if (sweep_kmin < 1 || sweep_kmax < sweep_kmin || sweep_step < 1) throw std::invalid_argument("bad k range");
    const Mesh mesh = sweep_src.load();
    std::vector<int> ks;
    for (int k = sweep_kmin; k <= sweep_kmax; k += sweep_step) ks.push_back(k);
    const BoundCurve curve = bound_curve(mesh, sweep_p, ks, parse_strategy(sweep_strategy), sweep_kappa);
    std::optional<Spectrum> reference;
    if (sweep_p == 2.0 && mesh.vertex_count() <= kDenseVertexCap)
      reference = neumann_spectrum_p2(mesh, std::min<int>(sweep_kmax, static_cast<int>(mesh.vertex_count())));
    std::ostringstream os;
    os << std::setprecision(17) << "k,bound,reference_or_blank\n";
    for (const auto& [k, v] : curve.entries) {
      os << k << ',' << v << ',';
      if (reference && static_cast<std::size_t>(k) <= reference->values.size())
        os << reference->values[static_cast<std::size_t>(k - 1)];
      os << '\n';
    }
    emit(sweep_out, os.str());
    if (curve.fit.defined)
      std::cerr << "slope_fit " << curve.fit.slope << " (k >= " << curve.fit.k_min << ")\n";
    else
      std::cerr << "slope_fit undefined\n";
  });

  // eigs
  auto* eigs_cmd = app.add_subcommand("eigs", "reference eigenvalues");
  MeshSource eigs_src;
  eigs_src.add_to(eigs_cmd);
  double eigs_p = 2.0, eigs_tol = 1e-6;
  int eigs_kmax = 20;
  std::string eigs_out;
  eigs_cmd->add_option("--p", eigs_p, "exponent p > 1");
  eigs_cmd->add_option("--kmax", eigs_kmax, "number of eigenvalues (p = 2)");
  eigs_cmd->add_option("--tol", eigs_tol, "relative tolerance for p != 2");
  eigs_cmd->add_option("-o,--output", eigs_out, "output JSON, or CSV when the name ends in .csv");
  eigs_cmd->callback([&] {
    const Mesh mesh = eigs_src.load();
    Spectrum s;
    if (eigs_p == 2.0) {
      s = neumann_spectrum_p2(mesh, eigs_kmax);
    } else {
      const auto r = first_eig_p(mesh, eigs_p, eigs_tol);
      s.p = eigs_p;
      s.method = SpectrumMethod::descent;
      s.values = {0.0, r.value};
      s.residuals = {0.0, r.converged ? 0.0 : std::nan("")};
    }
    if (ends_with(eigs_out, ".csv")) {
      std::ostringstream os;
      write_csv(os, s);
      emit(eigs_out, os.str());
    } else {
      emit(eigs_out, to_json(s).dump(2) + "\n");
    }
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "compare a certificate with a spectrum");
  std::string check_cert, check_spec, check_out;
  check_cmd->add_option("--cert", check_cert, "certificate JSON")->required();
  check_cmd->add_option("--spectrum", check_spec, "spectrum JSON")->required();
  check_cmd->add_option("-o,--output", check_out, "output JSON");
  int exit_code = 0;
  check_cmd->callback([&] {
    const BoundCertificate cert = certificate_from_json(read_json(check_cert));
    const Spectrum spec = spectrum_from_json(read_json(check_spec));
    const auto report = bound_consistency(spec, cert);
    emit(check_out, to_json(report).dump(2) + "\n");
    if (!report.ok) exit_code = 1;
  });

  // hyper
  auto* hyper_cmd = app.add_subcommand("hyper", "isoperimetric bounds for the boundary of a domain");
  MeshSource hyper_src;
  hyper_src.shape = "disk";
  hyper_src.add_to(hyper_cmd);
  double hyper_p = 2.0, hyper_r0 = 1.0;
  int hyper_kmax = 20;
  std::string hyper_out;
  hyper_cmd->add_option("--p", hyper_p, "exponent p > 1");
  hyper_cmd->add_option("--kmax", hyper_kmax, "largest k");
  hyper_cmd->add_option("--r0", hyper_r0, "scale r0");
  hyper_cmd->add_option("-o,--output", hyper_out, "output JSON");
  hyper_cmd->callback([&] {
    const Mesh mesh = hyper_src.load();
    const HypersurfaceData data = hypersurface_data_from_mesh(mesh);
    Json j = to_json(data);
    j["p"] = hyper_p;
    j["r0"] = hyper_r0;
    j["k0"] = k0_threshold(data, hyper_r0, hyper_p);
    std::optional<Spectrum> reference;
    // A closed curve of length L has Laplace spectrum (2 pi j / L)^2.
    if (data.n == 2 && hyper_p == 2.0)
      reference = boundary_spectrum_reference(BoundaryShape::circle, data.sigma_measure / (2.0 * std::numbers::pi), hyper_kmax);
    j["entries"] = Json::array();
    for (int k = 1; k <= hyper_kmax; ++k) {
      Json e{{"k", k}, {"bound", hypersurface_bound(data, hyper_p, k, hyper_r0)}};
      e["reference"] = reference ? Json(reference->values[static_cast<std::size_t>(k - 1)]) : Json(nullptr);
      j["entries"].push_back(e);
    }
    emit(hyper_out, j.dump(2) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
