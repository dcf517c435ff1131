#pragma once

#include <iosfwd>
#include <string>

#include "plap/geometry.hpp"

namespace plap {

/// ASCII OFF. A `# period Lx Ly` comment marks a periodic planar mesh;
/// polygons with more than three vertices are fan-triangulated.
Mesh read_off(std::istream& in);
Mesh read_off_file(const std::string& path);
void write_off(std::ostream& out, const Mesh& mesh);
void write_off_file(const std::string& path, const Mesh& mesh);

}  // namespace plap
