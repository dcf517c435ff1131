#include "plap/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace plap {

namespace {

// Next non-empty, non-comment line; period comments are captured on the way.
bool next_line(std::istream& in, std::string& line, std::optional<Eigen::Vector2d>& period) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream c(line.substr(first + 1));
      std::string tag;
      double lx = 0, ly = 0;
      if (c >> tag && tag == "period" && c >> lx >> ly) period = Eigen::Vector2d(lx, ly);
      continue;
    }
    return true;
  }
  return false;
}

}  // namespace

Mesh read_off(std::istream& in) {
  std::string line;
  std::optional<Eigen::Vector2d> period;
  if (!next_line(in, line, period)) throw std::runtime_error("OFF: empty input");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "OFF") throw std::runtime_error("OFF: missing header");
  long nv = -1, nf = -1, ne = 0;
  if (!(header >> nv >> nf)) {
    if (!next_line(in, line, period)) throw std::runtime_error("OFF: missing counts");
    std::istringstream counts(line);
    if (!(counts >> nv >> nf)) throw std::runtime_error("OFF: bad counts");
    counts >> ne;
  }
  if (nv <= 0 || nf <= 0) throw std::runtime_error("OFF: counts must be positive");
  std::vector<Eigen::Vector3d> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!next_line(in, line, period)) throw std::runtime_error("OFF: truncated vertex list");
    std::istringstream s(line);
    double x = 0, y = 0, z = 0;
    if (!(s >> x >> y)) throw std::runtime_error("OFF: bad vertex line");
    s >> z;
    vertices.emplace_back(x, y, z);
  }
  std::vector<Triangle> triangles;
  for (long f = 0; f < nf; ++f) {
    if (!next_line(in, line, period)) throw std::runtime_error("OFF: truncated face list");
    std::istringstream s(line);
    int count = 0;
    if (!(s >> count) || count < 3) throw std::runtime_error("OFF: bad face line");
    std::vector<Vertex> ids(static_cast<std::size_t>(count));
    for (auto& id : ids) {
      if (!(s >> id)) throw std::runtime_error("OFF: bad face line");
    }
    for (int j = 1; j + 1 < count; ++j) triangles.push_back({ids[0], ids[static_cast<std::size_t>(j)], ids[static_cast<std::size_t>(j + 1)]});
  }
  return Mesh(std::move(vertices), std::move(triangles), period);
}

Mesh read_off_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_off(in);
}

void write_off(std::ostream& out, const Mesh& mesh) {
  out << "OFF\n";
  if (mesh.period()) out << "# period " << std::setprecision(17) << (*mesh.period())[0] << ' ' << (*mesh.period())[1] << '\n';
  out << mesh.vertex_count() << ' ' << mesh.triangle_count() << " 0\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off_file(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_off(out, mesh);
}

}  // namespace plap
