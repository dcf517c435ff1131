#pragma once

#include <iosfwd>

#include <json.hpp>

#include "plap/certify.hpp"
#include "plap/decomposition.hpp"
#include "plap/eigensolve.hpp"
#include "plap/energy.hpp"
#include "plap/hypersurface.hpp"
#include "plap/testfn.hpp"

namespace plap {

using Json = nlohmann::json;

Json to_json(const Capacitor& cap);
Json to_json(const DecompositionCertificate& cert);
Json to_json(const BoundCertificate& cert);
Json to_json(const Spectrum& spectrum);
Json to_json(const EnergyReport& report);
Json to_json(const ConsistencyReport& report);
Json to_json(const HypersurfaceData& data);
Json to_json(const BoundCurve& curve);

/// Reads the scalar fields of a certificate (decomposition sets are skipped).
BoundCertificate certificate_from_json(const Json& j);
Spectrum spectrum_from_json(const Json& j);

/// "vertex,value" rows.
void write_csv(std::ostream& out, const TestFunction& u);
/// "k,value,residual" rows.
void write_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace plap
