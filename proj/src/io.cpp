#include "kdl/io.hpp"

#include <fstream>
#include <ostream>

#include "kdl/errors.hpp"

namespace kdl {

namespace {

ArcKind arc_kind_from(const std::string& s) {
  if (s == "twist") return ArcKind::Twist;
  if (s == "bridge") return ArcKind::Bridge;
  if (s == "vertical") return ArcKind::Vertical;
  throw Error(ErrorKind::Parse, "unknown arc kind '" + s + "'");
}

}  // namespace

json curve_to_json(const PolyCurve& c) {
  json verts = json::array();
  for (const Point3& p : c.vertices()) verts.push_back({p.x, p.y, p.z});
  json out{{"closed", true}, {"vertices", std::move(verts)}};
  if (!c.arcs().empty()) {
    json arcs = json::array();
    for (const ArcTag& a : c.arcs()) {
      json t{{"kind", to_string(a.kind)},
             {"strand", a.strand},
             {"range", {a.first_edge, a.first_edge + a.edge_count}},
             {"nominal_length", a.nominal_length}};
      if (a.kind == ArcKind::Twist) {
        t["region"] = {a.row, a.region};
        t["half_twists"] = a.half_twists;
      }
      arcs.push_back(std::move(t));
    }
    out["arcs"] = std::move(arcs);
  }
  return out;
}

PolyCurve curve_from_json(const json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::Parse, "curve must be a JSON object");
    if (!j.contains("closed") || !j.at("closed").get<bool>()) {
      throw Error(ErrorKind::Parse, "only closed curves are supported (\"closed\": true)");
    }
    const json& vs = j.at("vertices");
    if (!vs.is_array()) throw Error(ErrorKind::Parse, "\"vertices\" must be an array");
    std::vector<Point3> pts;
    pts.reserve(vs.size());
    for (const json& v : vs) {
      if (!v.is_array() || v.size() != 3) throw Error(ErrorKind::Parse, "each vertex must be an [x,y,z] triple");
      pts.push_back({v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()});
    }
    std::vector<ArcTag> arcs;
    if (j.contains("arcs")) {
      for (const json& a : j.at("arcs")) {
        ArcTag t;
        t.kind = arc_kind_from(a.at("kind").get<std::string>());
        t.strand = a.at("strand").get<int>();
        const auto range = a.at("range");
        t.first_edge = range.at(0).get<std::size_t>();
        const auto end = range.at(1).get<std::size_t>();
        if (end <= t.first_edge) throw Error(ErrorKind::Parse, "arc range must be increasing");
        t.edge_count = end - t.first_edge;
        t.nominal_length = a.at("nominal_length").get<double>();
        if (t.kind == ArcKind::Twist) {
          t.row = a.at("region").at(0).get<int>();
          t.region = a.at("region").at(1).get<int>();
          t.half_twists = a.at("half_twists").get<int>();
        }
        arcs.push_back(t);
      }
    }
    return PolyCurve::build(std::move(pts), std::move(arcs));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

void write_curve_file(const std::string& path, const PolyCurve& c) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Parse, "cannot open '" + path + "' for writing");
  os << curve_to_json(c).dump() << '\n';
}

PolyCurve read_curve_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return curve_from_json(j);
}

void write_obj(std::ostream& os, const PolyCurve& c) {
  os.precision(17);
  for (const Point3& p : c.vertices()) os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  const std::size_t m = c.size();
  for (std::size_t i = 0; i < m; ++i) os << "l " << i + 1 << ' ' << (i + 1) % m + 1 << '\n';
}

json witness_to_json(const WitnessPair& w) { return {{"s", w.s}, {"t", w.t}, {"ratio", w.ratio}}; }

json certificate_to_json(const DistortionCertificate& cert) {
  return {{"lo", cert.lo},
          {"hi", cert.hi},
          {"eps", cert.eps_requested},
          {"witness", witness_to_json(cert.witness)},
          {"cells", cert.cells_expanded},
          {"budget_exceeded", cert.budget_exceeded}};
}

json report_to_json(const BoundsReport& r) {
  json j{{"b", r.b},
         {"n", r.n},
         {"t", r.t},
         {"d", r.d},
         {"k", r.k},
         {"lower_bound", r.lower_bound},
         {"representativity", r.representativity},
         {"pardon_bound", r.pardon_bound},
         {"l", r.l},
         {"half_length_bound", r.half_length_bound},
         {"region_count", r.region_count}};
  if (r.alpha) j["alpha"] = *r.alpha;
  if (r.constant_c) j["C"] = *r.constant_c;
  if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
  if (r.crossing_number) j["crossing_number"] = *r.crossing_number;
  return j;
}

}  // namespace kdl
