#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "kdl/bounds.hpp"
#include "kdl/distortion.hpp"
#include "kdl/geom.hpp"

namespace kdl {

using json = nlohmann::json;

// Curve files: {"closed": true, "vertices": [[x,y,z], ...], "arcs": [...]}.
// Doubles are written in shortest round-trip form, so reading a written curve
// reproduces it bit for bit.
json curve_to_json(const PolyCurve& c);
PolyCurve curve_from_json(const json& j);  // Parse or DegenerateCurve on bad input

void write_curve_file(const std::string& path, const PolyCurve& c);
PolyCurve read_curve_file(const std::string& path);

/// Wavefront OBJ with one `l` element per edge, closing edge included.
void write_obj(std::ostream& os, const PolyCurve& c);

json witness_to_json(const WitnessPair& w);
json certificate_to_json(const DistortionCertificate& cert);

/// Optional fields are omitted when absent.
json report_to_json(const BoundsReport& r);

}  // namespace kdl
