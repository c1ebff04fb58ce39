#include "kdl/plat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "kdl/errors.hpp"

namespace kdl {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidSpec, what); }

int smallest_with_parity(int t, int parity) { return (t % 2 == parity) ? t : t + 1; }

bool odd(int v) { return (v % 2) != 0; }

// Region of `row` covering strand position p, or -1 when the strand passes
// straight down (outer strands of odd rows).
int region_at(int b, int row, int p) {
  if (odd(row)) {
    if (p < 1 || p > 2 * b - 2) return -1;
    return (p - 1) / 2;
  }
  return p / 2;
}

double axis_x(int row, int region) { return 2.0 * region + (odd(row) ? 1.0 : 0.0); }
double strand_x(int p) { return p - 0.5; }

// Position reached at the bottom of `row` by the strand entering at p.
int exit_position(const PlatSpec& spec, int row, int p) {
  const int j = region_at(spec.b, row, p);
  if (j < 0 || !odd(spec.count(row, j))) return p;
  const int left = odd(row) ? 2 * j + 1 : 2 * j;
  return p == left ? left + 1 : left;
}

void check_shape(const PlatSpec& spec) {
  if (static_cast<int>(spec.twists.size()) != spec.n) invalid("twist table must have n rows");
  for (int row = 1; row <= spec.n; ++row) {
    if (static_cast<int>(spec.twists[static_cast<std::size_t>(row - 1)].size()) != regions_in_row(spec.b, row)) {
      invalid("row " + std::to_string(row) + " must have " + std::to_string(regions_in_row(spec.b, row)) +
              " twist regions (odd rows b-1, even rows b)");
    }
  }
}

}  // namespace

int PlatSpec::max_half_twists() const {
  int best = 0;
  for (const auto& row : twists)
    for (int t : row) best = std::max(best, std::abs(t));
  return best;
}

int regions_in_row(int b, int row) { return odd(row) ? b - 1 : b; }

void validate_spec(const PlatSpec& spec) {
  if (spec.b < 3) invalid("b >= 3 required");
  if (!odd(spec.n)) invalid("n must be odd");
  if (spec.n < 4 * spec.b * (spec.b - 2)) {
    invalid("n >= 4b(b-2) required (b=" + std::to_string(spec.b) + " needs n >= " +
            std::to_string(4 * spec.b * (spec.b - 2)) + ", got " + std::to_string(spec.n) + ")");
  }
  check_shape(spec);
  for (int row = 1; row <= spec.n; ++row) {
    for (int j = 0; j < regions_in_row(spec.b, row); ++j) {
      if (std::abs(spec.count(row, j)) < 3) {
        invalid("each twist region must contain at least 3 crossings (row " + std::to_string(row) + ", region " +
                std::to_string(j) + " has " + std::to_string(std::abs(spec.count(row, j))) + ")");
      }
    }
  }
}

PlatSpec make_alternating_jm_spec(int b, int n, int t) {
  if (t < 3) invalid("each twist region must contain at least 3 crossings (t=" + std::to_string(t) + ")");
  PlatSpec spec{b, n, {}};
  const int first = smallest_with_parity(t, 1);
  const int rest = smallest_with_parity(t, 0);
  if (b >= 1 && n >= 1) {
    for (int row = 1; row <= n; ++row) {
      const int count = row == 1 ? first : (odd(row) ? rest : -rest);
      spec.twists.emplace_back(static_cast<std::size_t>(std::max(0, regions_in_row(b, row))), count);
    }
  }
  validate_spec(spec);
  return spec;
}

PlatSpec make_uniform_alternating_spec(int b, int n, int count) {
  PlatSpec spec{b, n, {}};
  if (b >= 1 && n >= 1) {
    for (int row = 1; row <= n; ++row) {
      const int c = std::abs(count);
      spec.twists.emplace_back(static_cast<std::size_t>(std::max(0, regions_in_row(b, row))), odd(row) ? c : -c);
    }
  }
  validate_spec(spec);
  return spec;
}

int component_count(const PlatSpec& spec) {
  check_shape(spec);
  const int strands = 2 * spec.b;
  std::vector<bool> seen(static_cast<std::size_t>(strands), false);
  int components = 0;
  for (int start = 0; start < strands; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++components;
    int p = start;
    do {
      seen[static_cast<std::size_t>(p)] = true;
      for (int row = 1; row <= spec.n; ++row) p = exit_position(spec, row, p);
      p ^= 1;  // bottom bridge
      // Swaps are involutions, so climbing applies the same map bottom-up.
      for (int row = spec.n; row >= 1; --row) p = exit_position(spec, row, p);
      seen[static_cast<std::size_t>(p)] = true;
      p ^= 1;  // top bridge
    } while (p != start);
  }
  return components;
}

double HelixParams::sigma() const { return 1.0 / (2.0 * kPi * half_twists); }
double HelixParams::x_max() const { return 2.0 * kPi * half_twists; }
Point3 HelixParams::at(double x) const { return {r * std::cos(0.5 * x), r * std::sin(0.5 * x), sigma() * x}; }
double HelixParams::length() const { return x_max() * std::sqrt(r * r / 4.0 + sigma() * sigma()); }

std::vector<Point3> helix_polyline(int half_twists, int samples) {
  const HelixParams h{0.5, std::abs(half_twists)};
  const int edges = h.half_twists * samples;
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(edges) + 1);
  for (int k = 0; k <= edges; ++k) {
    Point3 p = h.at(h.x_max() * k / edges);
    if (half_twists < 0) p.y = -p.y;
    pts.push_back(p);
  }
  return pts;
}

namespace {

// Points of the strand descending through region (row, j) from position p,
// endpoints snapped to the exact tangency points.
std::vector<Point3> twist_points(const PlatSpec& spec, int row, int j, int p, int samples) {
  const int count = spec.count(row, j);
  const int half = std::abs(count);
  const double cx = axis_x(row, j);
  const double z_top = 1.0 - row;
  const double start_angle = strand_x(p) > cx ? 0.0 : kPi;
  // Right-handed strands turn clockwise (seen from +z) while descending.
  const double turn = count > 0 ? -1.0 : 1.0;
  const int edges = half * samples;
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(edges) + 1);
  pts.push_back({strand_x(p), 0.0, z_top});
  for (int k = 1; k < edges; ++k) {
    const double u = static_cast<double>(k) / edges;
    const double angle = start_angle + turn * kPi * half * u;
    pts.push_back({cx + 0.5 * std::cos(angle), 0.5 * std::sin(angle), z_top - u});
  }
  pts.push_back({strand_x(exit_position(spec, row, p)), 0.0, z_top - 1.0});
  return pts;
}

// Half circle from position p to p^1 above z = 0 (top) or below z = -n.
std::vector<Point3> bridge_points(int p, bool top, double z0, int segments) {
  const int q = p ^ 1;
  const double cx = 0.5 * (strand_x(p) + strand_x(q));
  const double from = strand_x(p) > cx ? 0.0 : kPi;
  const double to = kPi - from;
  const double side = top ? 1.0 : -1.0;
  std::vector<Point3> pts;
  pts.push_back({strand_x(p), 0.0, z0});
  for (int k = 1; k < segments; ++k) {
    const double a = from + (to - from) * k / segments;
    pts.push_back({cx + 0.5 * std::cos(a), 0.0, z0 + side * 0.5 * std::sin(a)});
  }
  pts.push_back({strand_x(q), 0.0, z0});
  return pts;
}

class PlatWalker {
 public:
  PlatWalker(const PlatSpec& spec, int samples) : spec_(spec), samples_(samples) {}

  PolyCurve walk() {
    int p = 0;
    do {
      for (int row = 1; row <= spec_.n; ++row) p = descend(row, p, false);
      p = bridge(p, false);
      for (int row = spec_.n; row >= 1; --row) p = descend(row, p, true);
      p = bridge(p, true);
    } while (p != 0);
    return PolyCurve::build(std::move(pts_), std::move(arcs_));
  }

  std::size_t arc_count() const { return arcs_.size(); }

 private:
  // Appends the arc without its final vertex; the next arc starts there.
  void append(std::vector<Point3> arc, ArcTag tag) {
    tag.first_edge = pts_.size();
    tag.edge_count = arc.size() - 1;
    pts_.insert(pts_.end(), arc.begin(), arc.end() - 1);
    arcs_.push_back(tag);
  }

  // Traverses row `row` at the strand position p (top position when going down,
  // bottom position when going up); returns the position on the other side.
  int descend(int row, int p, bool upward) {
    const int j = region_at(spec_.b, row, p);
    if (j < 0) {
      const double z_top = 1.0 - row;
      std::vector<Point3> arc{{strand_x(p), 0.0, z_top}, {strand_x(p), 0.0, z_top - 1.0}};
      if (upward) std::reverse(arc.begin(), arc.end());
      ArcTag tag;
      tag.kind = ArcKind::Vertical;
      tag.strand = p == 0 ? 1 : 2;
      tag.nominal_length = 1.0;
      append(std::move(arc), tag);
      return p;
    }
    const int count = spec_.count(row, j);
    // Going up, the arc is the descending strand that ends at p.
    const int top = upward ? exit_position(spec_, row, p) : p;
    std::vector<Point3> arc = twist_points(spec_, row, j, top, samples_);
    const int bottom = exit_position(spec_, row, top);
    if (upward) std::reverse(arc.begin(), arc.end());
    ArcTag tag;
    tag.kind = ArcKind::Twist;
    tag.row = row;
    tag.region = j;
    tag.strand = strand_x(top) > axis_x(row, j) ? 1 : 2;
    tag.half_twists = count;
    tag.nominal_length = std::hypot(kPi * std::abs(count) / 2.0, 1.0);
    append(std::move(arc), tag);
    return upward ? top : bottom;
  }

  int bridge(int p, bool top) {
    const double z0 = top ? 0.0 : -static_cast<double>(spec_.n);
    ArcTag tag;
    tag.kind = ArcKind::Bridge;
    tag.strand = top ? 1 : 2;
    tag.nominal_length = kPi / 2.0;
    append(bridge_points(p, top, z0, std::max(16, samples_)), tag);
    return p ^ 1;
  }

  const PlatSpec& spec_;
  const int samples_;
  std::vector<Point3> pts_;
  std::vector<ArcTag> arcs_;
};

std::string parity_diagnosis(const PlatSpec& spec) {
  for (int row = 1; row <= spec.n; ++row) {
    for (int j = 0; j < regions_in_row(spec.b, row); ++j) {
      const bool want_odd = row == 1;
      if (odd(spec.count(row, j)) != want_odd) {
        std::ostringstream os;
        os << "parity constraint violated at row " << row << ", region " << j << " (count " << spec.count(row, j)
           << "): the first row needs odd crossing counts and all other rows even counts";
        return os.str();
      }
    }
  }
  return "parity pattern does not close into one strand cycle";
}

}  // namespace

PolyCurve build_plat(const PlatSpec& spec, int samples_per_half_twist) {
  validate_spec(spec);
  if (samples_per_half_twist < 8) invalid("samples_per_half_twist must be at least 8");
  const int components = component_count(spec);
  if (components != 1) {
    throw Error(ErrorKind::NotAKnot,
                "plat closure has " + std::to_string(components) + " components; " + parity_diagnosis(spec));
  }
  PolyCurve curve = PlatWalker(spec, samples_per_half_twist).walk();
  const Clearance cl = min_clearance_pair(curve);
  if (!(cl.distance > 0.0)) {
    throw Error(ErrorKind::SelfIntersecting,
                "edges " + std::to_string(cl.edge_a) + " and " + std::to_string(cl.edge_b) + " touch");
  }
  return curve;
}

namespace {

// Largest ratio over p on `a` and q on `b` where b continues a at a's last
// vertex; arclength runs through the junction.
WitnessPair across_junction(std::span<const Point3> a, std::span<const Point3> b) {
  std::vector<double> to_end(a.size(), 0.0);
  for (std::size_t i = a.size() - 1; i-- > 0;) to_end[i] = to_end[i + 1] + distance(a[i], a[i + 1]);
  std::vector<double> from_start(b.size(), 0.0);
  for (std::size_t i = 1; i < b.size(); ++i) from_start[i] = from_start[i - 1] + distance(b[i - 1], b[i]);
  WitnessPair best;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      const double chord = distance(a[i], b[k]);
      if (chord < 1e-12) continue;
      const double ratio = (to_end[i] + from_start[k]) / chord;
      if (ratio > best.ratio) best = {-to_end[i], from_start[k], ratio};
    }
  }
  return best;
}

// Places a generated helix (local frame, climbing from z = 0 to 1, starting at
// angle 0) into a cylinder with axis x = cx, descending from z_top and entering
// at plan angle `start`; mirror flips handedness.
std::vector<Point3> place_helix(const std::vector<Point3>& local, double cx, double z_top, double start, bool mirror) {
  std::vector<Point3> out;
  out.reserve(local.size());
  const double c = std::cos(start), s = std::sin(start);
  for (const Point3& q : local) {
    const double y = mirror ? -q.y : q.y;
    out.push_back({cx + c * q.x - s * y, s * q.x + c * y, z_top - q.z});
  }
  return out;
}

}  // namespace

std::vector<ClaimCheck> verify_claims(int t, int samples, const HelixGenerator& helix) {
  if (t < 1) invalid("t >= 1 required");
  std::vector<ClaimCheck> checks;
  const double same_bound = 2.0 * kPi * t;
  const double adjacent_bound = 4.0 * kPi * t;

  const std::vector<Point3> local = helix(t, samples);
  {
    ClaimCheck c{"same arc: helix", 0.0, same_bound, false, open_polyline_max_ratio(local)};
    c.measured = c.witness.ratio;
    c.pass = c.measured <= helix_ratio_bound(t) * (1.0 + 1e-9) && c.measured <= same_bound;
    checks.push_back(c);
  }

  // Upper helix on axis 1 leaving at plan angle pi (x = 0.5) after t half-turns.
  const double start_upper = std::fmod(t, 2) == 0 ? kPi : 0.0;
  const auto upper = place_helix(local, 1.0, 0.0, start_upper, false);
  const Point3 exit = upper.back();
  const auto lower_alt = place_helix(local, exit.x - 0.5, -1.0, 0.0, true);
  const auto lower_same = place_helix(local, exit.x - 0.5, -1.0, 0.0, false);
  const std::vector<Point3> vertical{{exit.x, exit.y, exit.z}, {exit.x, exit.y, exit.z - 1.0}};
  // Bottom-style half circle hanging below `from`.
  auto bridge_below = [&](const Point3& from) {
    std::vector<Point3> pts;
    const int segments = std::max(16, samples);
    for (int k = 0; k <= segments; ++k) {
      const double a = kPi * k / segments;
      pts.push_back({from.x + 0.5 - 0.5 * std::cos(a), from.y, from.z - 0.5 * std::sin(a)});
    }
    return pts;
  };
  const auto bridge = bridge_below(exit);
  const auto bridge_after_vertical = bridge_below(vertical.back());

  auto add = [&](const std::string& name, std::span<const Point3> a, std::span<const Point3> b) {
    ClaimCheck c{name, 0.0, adjacent_bound, false, across_junction(a, b)};
    c.measured = c.witness.ratio;
    c.pass = c.measured <= adjacent_bound;
    checks.push_back(c);
  };
  add("adjacent: twist/twist (alternating handedness)", upper, lower_alt);
  add("adjacent: twist/twist (same handedness)", upper, lower_same);
  add("adjacent: twist/vertical", upper, vertical);
  add("adjacent: twist/bridge", upper, bridge);
  add("adjacent: vertical/bridge", vertical, bridge_after_vertical);
  return checks;
}

}  // namespace kdl
