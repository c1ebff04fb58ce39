#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "kdl/geom.hpp"

namespace kdl {

/// A point pair (s, t) on a curve and its distortion ratio
/// arclength_distance(s, t) / chord_distance(s, t).
struct WitnessPair {
  double s = 0.0;
  double t = 0.0;
  double ratio = 0.0;
};

/// Rigorous enclosure lo <= delta(c) <= hi of the distortion of a closed polyline.
struct DistortionCertificate {
  double lo = 0.0;
  double hi = 0.0;
  WitnessPair witness;
  double eps_requested = 0.0;
  std::uint64_t cells_expanded = 0;
  bool budget_exceeded = false;
};

struct CertifyOptions {
  std::uint64_t max_cells = 5'000'000;
};

/// Max ratio over all vertices plus n_samples points equally spaced in arclength.
/// Throws DegenerateCurve when every pair is closer than 1e-12.
WitnessPair distortion_sampled(const PolyCurve& c, int n_samples);

/// Supremum of (a+b)/|a u + b w| over a, b > 0 for unit vectors at angle phi.
/// Returns +inf for phi <= 1e-9.
double corner_ratio(double phi);

/// A rectangle [s0,s1] x [t0,t1] of parameter space with s on edge `edge_s` and
/// t on edge `edge_t`. Parameters are arclengths from v[0]; the range of edge k
/// is [cum_len[k], cum_len[k+1]].
struct EdgeCell {
  std::size_t edge_s = 0;
  double s0 = 0.0, s1 = 0.0;
  std::size_t edge_t = 0;
  double t0 = 0.0, t1 = 0.0;
};

/// Upper bound on the distortion ratio over every pair in the cell. +inf when
/// the two subsegments touch.
double cell_upper_bound(const PolyCurve& c, const EdgeCell& cell);

/// Branch-and-bound enclosure of delta(c) with hi - lo <= eps unless the
/// expansion budget runs out (then budget_exceeded is set and the enclosure is
/// still valid, only wider). Throws NotEmbedded when min_clearance(c) == 0.
DistortionCertificate distortion_certified(const PolyCurve& c, double eps, const CertifyOptions& opts = {});

/// sqrt(pi^2 t^2 / 4 + 1): the ratio bound for a helix with t half-twists on the
/// radius-1/2, height-1 cylinder.
double helix_ratio_bound(int t);

/// Largest ratio between vertices of an open polyline, measuring arclength along
/// the polyline. Returned parameters are arclengths from the first vertex.
WitnessPair open_polyline_max_ratio(std::span<const Point3> pts);

/// Largest ratio over pairs (p on arc a, q on arc b), sampling arc vertices and
/// edge midpoints, with arclength measured on the closed curve. Pairs closer
/// than 1e-12 are skipped. Passing the same arc twice gives the within-arc maximum.
WitnessPair max_ratio_between_arcs(const PolyCurve& c, const ArcTag& a, const ArcTag& b);

}  // namespace kdl
