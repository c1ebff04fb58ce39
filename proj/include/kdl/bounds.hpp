#pragma once

#include <optional>

#include "kdl/geom.hpp"
#include "kdl/plat.hpp"

namespace kdl {

/// Closed-form distortion bounds for one plat, plus measured quantities when a
/// built curve is supplied.
struct BoundsReport {
  int b = 0;
  int n = 0;
  int t = 0;  // largest |half-twist count| over regions
  int d = 0;  // bridge distance
  int k = 0;  // min(d, 2b)
  double lower_bound = 0.0;
  int representativity = 2;
  double pardon_bound = 0.0;
  double l = 0.0;  // longest twist-arc length
  std::optional<double> alpha;  // global min_clearance of the curve
  std::optional<double> constant_c;  // 4 l / alpha, so upper_bound = C b^2 d
  std::optional<double> upper_bound;
  double half_length_bound = 0.0;
  int region_count = 0;
  std::optional<int> crossing_number;

  friend bool operator==(const BoundsReport&, const BoundsReport&) = default;
};

/// ceil(n / (2(b-2))) for b >= 3 and n >= 4b(b-2); HypothesisViolated otherwise.
int bridge_distance(int b, int n);

/// min(d, 2b) / 160.
double distortion_lower_bound(int b, int d);

/// I / 160 for representativity I >= 1.
double pardon_bound(int representativity);

/// 4 b^2 d l / alpha. NonPositiveClearance when alpha <= 0.
double upper_bound(int b, int d, double l, double alpha);

/// bn - (n+1)/2. At n = 4b(b-2)+1 this equals 4b^3 - 10b^2 + 5b - 1; a linear
/// coefficient of 9b found in some statements of this count is a typo.
int twist_region_count(int b, int n);

/// Length of a twist arc with |half_twists| half-twists: sqrt((pi t / 2)^2 + 1).
double twist_arc_length(int half_twists);

/// True for the handedness pattern right-handed in odd rows, left-handed in even rows.
bool is_alternating(const PlatSpec& spec);

/// Sum of |crossing counts|, which is the crossing number of the reduced
/// alternating diagram. NotAlternating for any other handedness pattern.
int crossing_number_alternating(const PlatSpec& spec);

/// Assembles every field for `spec`; alpha, C and upper_bound need `curve`.
BoundsReport make_report(const PlatSpec& spec, const PolyCurve* curve = nullptr, int representativity = 2);

}  // namespace kdl
