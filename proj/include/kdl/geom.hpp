#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace kdl {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point3 operator*(double k, const Point3& a) { return {k * a.x, k * a.y, k * a.z}; }
  friend Point3 operator*(const Point3& a, double k) { return k * a; }
  friend bool operator==(const Point3&, const Point3&) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }
inline Point3 lerp(const Point3& a, const Point3& b, double u) { return a + u * (b - a); }

enum class ArcKind { Bridge, Vertical, Twist };

const char* to_string(ArcKind kind);

/// A labelled run of consecutive edges of a built curve.
///
/// The arc covers edges `first_edge .. first_edge + edge_count - 1` (indices mod
/// vertex count), i.e. vertices `first_edge` through `first_edge + edge_count`.
/// In JSON the range is written as `[first_edge, first_edge + edge_count]`; the
/// closing arc may therefore end at the vertex count, meaning vertex 0.
struct ArcTag {
  ArcKind kind = ArcKind::Twist;
  int row = -1;      // twist only, 1-based
  int region = -1;   // twist only, 0-based within the row
  int strand = 1;    // 1 or 2
  std::size_t first_edge = 0;
  std::size_t edge_count = 0;
  double nominal_length = 0.0;
  int half_twists = 0;  // twist only, signed by handedness
};

/// Closed polygonal curve with a cumulative arclength table.
///
/// The closing edge (v[m-1], v[0]) is implicit. Immutable after construction.
class PolyCurve {
 public:
  /// Drops consecutive duplicates (including a repeated first vertex at the
  /// end) and validates the result. Throws DegenerateCurve.
  static PolyCurve build(std::vector<Point3> vertices, std::vector<ArcTag> arcs = {});

  std::size_t size() const { return vertices_.size(); }
  std::span<const Point3> vertices() const { return vertices_; }
  const Point3& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  std::span<const double> cum_len() const { return cum_len_; }
  std::span<const ArcTag> arcs() const { return arcs_; }
  double length() const { return cum_len_.back(); }

  double edge_length(std::size_t i) const { return cum_len_[i + 1] - cum_len_[i]; }
  const Point3& edge_start(std::size_t i) const { return vertices_[i]; }
  const Point3& edge_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  /// Index of the edge containing arclength s in [0, L).
  std::size_t edge_at(double s) const;

  /// Point at arclength s measured from v[0]. Throws OutOfRange outside [0, L).
  Point3 point_at(double s) const;

  /// Point at arclength s, where s may lie anywhere in the closed range of edge i.
  Point3 point_on_edge(std::size_t i, double s) const;

  /// Reduces an arbitrary real into [0, L).
  double wrap(double s) const;

 private:
  PolyCurve() = default;

  std::vector<Point3> vertices_;
  std::vector<double> cum_len_;
  std::vector<ArcTag> arcs_;
};

inline PolyCurve build_polycurve(std::vector<Point3> vertices) { return PolyCurve::build(std::move(vertices)); }

/// Shorter of the two arclength distances between parameters s and t.
double arclength_distance(const PolyCurve& c, double s, double t);

double chord_distance(const PolyCurve& c, double s, double t);

/// Exact minimum distance between the closed segments [p1,p2] and [q1,q2].
double segment_min_distance(const Point3& p1, const Point3& p2, const Point3& q1, const Point3& q2);

struct Clearance {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
};

/// Minimum distance over pairs of edges that do not share a vertex. Infinite
/// when no such pair exists (triangles).
Clearance min_clearance_pair(const PolyCurve& c);
inline double min_clearance(const PolyCurve& c) { return min_clearance_pair(c).distance; }

/// Angle at vertex i between (v[i-1] - v[i]) and (v[i+1] - v[i]), in (0, pi].
double interior_angle(const PolyCurve& c, std::size_t i);

/// True when edges i and j share a vertex (or coincide).
bool edges_adjacent(std::size_t m, std::size_t i, std::size_t j);

}  // namespace kdl
