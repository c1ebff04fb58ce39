#include "kdl/geom.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "kdl/errors.hpp"

namespace kdl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotEmbedded: return "NotEmbedded";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotAKnot: return "NotAKnot";
    case ErrorKind::SelfIntersecting: return "SelfIntersecting";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NonPositiveClearance: return "NonPositiveClearance";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::InfeasibleStart: return "InfeasibleStart";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

const char* to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::Bridge: return "bridge";
    case ArcKind::Vertical: return "vertical";
    case ArcKind::Twist: return "twist";
  }
  return "unknown";
}

PolyCurve PolyCurve::build(std::vector<Point3> vertices, std::vector<ArcTag> arcs) {
  for (const auto& p : vertices) {
    if (!p.finite()) throw Error(ErrorKind::DegenerateCurve, "non-finite vertex coordinate");
  }
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  while (vertices.size() > 1 && vertices.front() == vertices.back()) vertices.pop_back();
  if (vertices.size() < 3) {
    throw Error(ErrorKind::DegenerateCurve, "fewer than 3 distinct vertices");
  }

  PolyCurve c;
  const std::size_t m = vertices.size();
  c.cum_len_.resize(m + 1);
  c.cum_len_[0] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double len = distance(vertices[i], vertices[(i + 1) % m]);
    if (!(len > 0.0)) {
      throw Error(ErrorKind::DegenerateCurve, "zero-length edge " + std::to_string(i));
    }
    c.cum_len_[i + 1] = c.cum_len_[i] + len;
  }
  const double total = c.cum_len_[m];
  for (std::size_t i = 0; i < m; ++i) {
    if (!(c.cum_len_[i + 1] - c.cum_len_[i] < 0.5 * total)) {
      throw Error(ErrorKind::DegenerateCurve, "edge " + std::to_string(i) + " spans half the curve length");
    }
  }
  for (const auto& a : arcs) {
    if (a.edge_count == 0 || a.first_edge >= m || a.edge_count > m) {
      throw Error(ErrorKind::DegenerateCurve, "arc tag range outside the curve");
    }
  }
  c.vertices_ = std::move(vertices);
  c.arcs_ = std::move(arcs);
  return c;
}

std::size_t PolyCurve::edge_at(double s) const {
  auto it = std::upper_bound(cum_len_.begin(), cum_len_.end(), s);
  auto i = static_cast<std::size_t>(it - cum_len_.begin());
  i = i == 0 ? 0 : i - 1;
  return std::min(i, vertices_.size() - 1);
}

Point3 PolyCurve::point_on_edge(std::size_t i, double s) const {
  const double u = (s - cum_len_[i]) / (cum_len_[i + 1] - cum_len_[i]);
  if (u == 0.0) return edge_start(i);
  if (u == 1.0) return edge_end(i);
  return lerp(edge_start(i), edge_end(i), u);
}

Point3 PolyCurve::point_at(double s) const {
  if (!(s >= 0.0 && s < length())) {
    std::ostringstream os;
    os << "arclength " << s << " outside [0, " << length() << ")";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  return point_on_edge(edge_at(s), s);
}

double PolyCurve::wrap(double s) const {
  const double L = length();
  double r = std::fmod(s, L);
  if (r < 0.0) r += L;
  if (r >= L) r = 0.0;
  return r;
}

namespace {

void check_param(const PolyCurve& c, double s) {
  if (!(s >= 0.0 && s < c.length())) {
    std::ostringstream os;
    os << "arclength " << s << " outside [0, " << c.length() << ")";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
}

double point_segment_distance(const Point3& p, const Point3& a, const Point3& b) {
  const Point3 d = b - a;
  const double dd = dot(d, d);
  if (dd == 0.0) return distance(p, a);
  const double u = std::clamp(dot(p - a, d) / dd, 0.0, 1.0);
  return distance(p, lerp(a, b, u));
}

struct Box {
  Point3 lo, hi;
};

double box_gap(const Box& a, const Box& b) {
  const double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
  const double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
  const double dz = std::max({0.0, a.lo.z - b.hi.z, b.lo.z - a.hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double coord(const Point3& p, int axis) { return axis == 0 ? p.x : (axis == 1 ? p.y : p.z); }

}  // namespace

double arclength_distance(const PolyCurve& c, double s, double t) {
  check_param(c, s);
  check_param(c, t);
  const double d = std::abs(s - t);
  return std::min(d, c.length() - d);
}

double chord_distance(const PolyCurve& c, double s, double t) {
  return distance(c.point_at(s), c.point_at(t));
}

double segment_min_distance(const Point3& p1, const Point3& p2, const Point3& q1, const Point3& q2) {
  const Point3 d1 = p2 - p1;
  const Point3 d2 = q2 - q1;
  const Point3 r = p1 - q1;
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);

  // Endpoint-to-segment distances bound the answer from above and are exact
  // whenever the closest pair involves an endpoint; the interior solve below
  // only ever lowers the result.
  double best = std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                          point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
  if (a == 0.0 || e == 0.0) return best;

  const double b = dot(d1, d2);
  const double c = dot(d1, r);
  const double denom = a * e - b * b;
  if (denom <= 1e-14 * a * e) return best;  // parallel: an endpoint realizes the minimum

  const double s = (b * f - c * e) / denom;
  const double t = (a * f - b * c) / denom;
  if (s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0) {
    best = std::min(best, distance(p1 + s * d1, q1 + t * d2));
  }
  return best;
}

bool edges_adjacent(std::size_t m, std::size_t i, std::size_t j) {
  if (i == j) return true;
  const std::size_t lo = std::min(i, j), hi = std::max(i, j);
  return hi - lo == 1 || (lo == 0 && hi == m - 1);
}

Clearance min_clearance_pair(const PolyCurve& c) {
  const std::size_t m = c.size();
  Clearance out;
  if (m < 4) return out;

  std::vector<Box> boxes(m);
  Box all{c.vertex(0), c.vertex(0)};
  for (std::size_t i = 0; i < m; ++i) {
    const Point3& a = c.edge_start(i);
    const Point3& b = c.edge_end(i);
    boxes[i].lo = {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
    boxes[i].hi = {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
    all.lo = {std::min(all.lo.x, a.x), std::min(all.lo.y, a.y), std::min(all.lo.z, a.z)};
    all.hi = {std::max(all.hi.x, a.x), std::max(all.hi.y, a.y), std::max(all.hi.z, a.z)};
  }
  const Point3 extent = all.hi - all.lo;
  int axis = 0;
  if (extent.y > coord(extent, axis)) axis = 1;
  if (extent.z > coord(extent, axis)) axis = 2;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double a = coord(boxes[i].lo, axis), b = coord(boxes[j].lo, axis);
    return a < b || (a == b && i < j);
  });

  out.distance = segment_min_distance(c.edge_start(0), c.edge_end(0), c.edge_start(2), c.edge_end(2));
  out.edge_a = 0;
  out.edge_b = 2;
  for (std::size_t oi = 0; oi < m; ++oi) {
    const std::size_t i = order[oi];
    const double reach = coord(boxes[i].hi, axis) + out.distance;
    for (std::size_t oj = oi + 1; oj < m; ++oj) {
      const std::size_t j = order[oj];
      if (coord(boxes[j].lo, axis) > reach) break;
      if (edges_adjacent(m, i, j)) continue;
      if (box_gap(boxes[i], boxes[j]) >= out.distance) continue;
      const double d = segment_min_distance(c.edge_start(i), c.edge_end(i), c.edge_start(j), c.edge_end(j));
      if (d < out.distance) {
        out.distance = d;
        out.edge_a = std::min(i, j);
        out.edge_b = std::max(i, j);
      }
    }
  }
  return out;
}

double interior_angle(const PolyCurve& c, std::size_t i) {
  const std::size_t m = c.size();
  const Point3& v = c.vertex(i);
  const Point3 a = c.vertex((i + m - 1) % m) - v;
  const Point3 b = c.vertex((i + 1) % m) - v;
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace kdl
