#include "kdl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "kdl/errors.hpp"

namespace kdl {

int bridge_distance(int b, int n) {
  if (b < 3) throw Error(ErrorKind::HypothesisViolated, "bridge distance formula needs b >= 3");
  if (n < 4 * b * (b - 2)) throw Error(ErrorKind::HypothesisViolated, "bridge distance formula needs n >= 4b(b-2)");
  const int den = 2 * (b - 2);
  return (n + den - 1) / den;
}

double distortion_lower_bound(int b, int d) { return std::min(d, 2 * b) / 160.0; }

double pardon_bound(int representativity) {
  if (representativity < 1) throw Error(ErrorKind::HypothesisViolated, "representativity must be >= 1");
  return representativity / 160.0;
}

double upper_bound(int b, int d, double l, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::NonPositiveClearance, "clearance alpha must be positive");
  if (b < 3 || d < 1 || l < 1.0) throw Error(ErrorKind::HypothesisViolated, "upper bound needs b >= 3, d >= 1, l >= 1");
  return 4.0 * b * b * d * l / alpha;
}

int twist_region_count(int b, int n) { return b * n - (n + 1) / 2; }

double twist_arc_length(int half_twists) { return std::hypot(std::numbers::pi * std::abs(half_twists) / 2.0, 1.0); }

bool is_alternating(const PlatSpec& spec) {
  for (int row = 1; row <= spec.n; ++row) {
    for (int j = 0; j < regions_in_row(spec.b, row); ++j) {
      const int c = spec.count(row, j);
      if ((row % 2 == 1) != (c > 0)) return false;
    }
  }
  return true;
}

int crossing_number_alternating(const PlatSpec& spec) {
  validate_spec(spec);
  if (!is_alternating(spec)) {
    throw Error(ErrorKind::NotAlternating, "handedness must be right-handed in odd rows and left-handed in even rows");
  }
  int total = 0;
  for (const auto& row : spec.twists)
    for (int c : row) total += std::abs(c);
  return total;
}

BoundsReport make_report(const PlatSpec& spec, const PolyCurve* curve, int representativity) {
  validate_spec(spec);
  BoundsReport r;
  r.b = spec.b;
  r.n = spec.n;
  r.t = spec.max_half_twists();
  r.d = bridge_distance(spec.b, spec.n);
  r.k = std::min(r.d, 2 * r.b);
  r.lower_bound = distortion_lower_bound(r.b, r.d);
  r.representativity = representativity;
  r.pardon_bound = pardon_bound(representativity);
  r.l = twist_arc_length(r.t);
  r.region_count = twist_region_count(r.b, r.n);
  if (is_alternating(spec)) r.crossing_number = crossing_number_alternating(spec);

  if (curve != nullptr) {
    double l = 0.0;
    for (const ArcTag& a : curve->arcs()) {
      if (a.kind == ArcKind::Twist) l = std::max(l, a.nominal_length);
    }
    if (l > 0.0) r.l = l;
    r.alpha = min_clearance(*curve);
    r.constant_c = 4.0 * r.l / *r.alpha;
    r.upper_bound = upper_bound(r.b, r.d, r.l, *r.alpha);
  }
  r.half_length_bound = static_cast<double>(r.b) * r.n * (r.l + 1.0);
  return r;
}

}  // namespace kdl
