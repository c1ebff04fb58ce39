#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kdl/distortion.hpp"
#include "kdl/geom.hpp"

namespace kdl {

/// Combinatorics of an n-row 2b-plat built from twist regions.
///
/// Rows are 1-based from the top. Odd rows hold b-1 regions (strand positions
/// 1..2b-2, the outer strands pass straight down), even rows hold b regions.
/// `twists[row-1][j]` is the signed crossing count of region j: positive is
/// right-handed, negative left-handed.
struct PlatSpec {
  int b = 0;
  int n = 0;
  std::vector<std::vector<int>> twists;

  int count(int row, int region) const { return twists[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(region)]; }
  int max_half_twists() const;
};

int regions_in_row(int b, int row);

/// Checks the full hypothesis set: b >= 3, n odd, n >= 4b(b-2), row shapes,
/// and at least 3 crossings per region. Throws InvalidSpec naming the failure.
void validate_spec(const PlatSpec& spec);

/// Alternating family: first-row regions get the smallest odd count >= t and
/// are right-handed; the remaining odd rows get the smallest even count >= t,
/// right-handed; even rows the smallest even count >= t, left-handed.
PlatSpec make_alternating_jm_spec(int b, int n, int t);

/// Every region carries |count| crossings, right-handed in odd rows and
/// left-handed in even rows. No parity constraint, so the closure may be a link.
PlatSpec make_uniform_alternating_spec(int b, int n, int count);

/// Number of components of the plat closure. Only the row shapes are required
/// to be valid; an odd count swaps the region's two strands.
int component_count(const PlatSpec& spec);

/// Geometry of one twisting strand: radius r, `half_twists` half turns, and
/// vertical rate sigma so the full parameter range x in [0, 2 pi t] climbs 1.
struct HelixParams {
  double r = 0.5;
  int half_twists = 1;

  double sigma() const;
  double x_max() const;
  /// (r cos(x/2), r sin(x/2), sigma x) in cylinder-local coordinates.
  Point3 at(double x) const;
  double length() const;
};

/// Vertices of the helix for |half_twists| half-twists with `samples` edges per
/// half-twist; a negative count mirrors the handedness.
std::vector<Point3> helix_polyline(int half_twists, int samples);

using HelixGenerator = std::function<std::vector<Point3>(int half_twists, int samples)>;

/// Closed, embedded polyline for the plat with its arc inventory.
///
/// Region j of row i is a cylinder of radius 1/2 and height 1 with axis at
/// x = 2j + (i mod 2), y = 0, occupying z in [-i, -i+1]; diagonally adjacent
/// cylinders touch at one point, where strands pass between rows. Bridges are
/// half circles of radius 1/2 in the plane y = 0 above z = 0 and below z = -n.
/// Twist arcs are tagged strand 1 (entering at the cylinder's +x side) or 2;
/// bridges strand 1 on top, 2 at the bottom; verticals strand 1 on the left,
/// 2 on the right. Throws InvalidSpec, NotAKnot, SelfIntersecting.
PolyCurve build_plat(const PlatSpec& spec, int samples_per_half_twist = 16);

/// Outcome of the same-arc and adjacent-arc ratio checks.
struct ClaimCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  WitnessPair witness;
};

/// Same-arc check on a single helix and adjacent-arc checks on every kind of
/// arc junction a plat uses, all for one half-twist count t.
std::vector<ClaimCheck> verify_claims(int t, int samples, const HelixGenerator& helix = helix_polyline);

}  // namespace kdl
