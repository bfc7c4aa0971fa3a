#pragma once

// JSON wire formats. Rationals always travel as canonical "p/q" strings.

#include "json.hpp"

#include "singvol/endo.hpp"
#include "singvol/surface.hpp"
#include "singvol/toric.hpp"

namespace singvol::io {

using Json = nlohmann::ordered_json;

/// Accepts "p/q" strings or JSON integers.
Rational rational_from_json(const Json& j);
Json to_json(const QVector& v);
Json to_json(const IVector& v);

/// {"vertices":[{"self":-3,"genus":2},...],"edges":[[0,1,1],...]}
surface::ResolutionGraph graph_from_json(const Json& j);
Json to_json(const surface::ResolutionGraph& g);

/// {"coeffs":["-1","0"]}
QVector coeffs_from_json(const Json& j);
Json coeffs_to_json(const QVector& c);

/// {"dim":3,"rays":[[1,0,0],...]}
toric::ToricCone cone_from_json(const Json& j);
Json to_json(const toric::ToricCone& c);

/// {"gens":[[1,0],[0,2]]}
toric::MonomialIdeal ideal_from_json(const toric::ToricCone& cone, const Json& j);
Json to_json(const toric::MonomialIdeal& a);

/// {"matrix":[[2,0],[0,2]]}
endo::Matrix matrix_from_json(const Json& j);

/// Comma-separated integers, e.g. "1,1,0".
IVector parse_int_vector(const std::string& text);

/// Reads and parses a JSON file; InputError on I/O or syntax failure.
Json read_json_file(const std::string& path);

}  // namespace singvol::io
