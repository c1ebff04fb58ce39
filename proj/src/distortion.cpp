#include "kdl/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "kdl/errors.hpp"

namespace kdl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kChordGuard = 1e-12;

// Largest value of min(f, L - f) for f in [fmin, fmax].
double shorter_path_bound(double fmin, double fmax, double L) {
  const double f = std::clamp(0.5 * L, fmin, fmax);
  return std::min(f, L - f);
}

struct Box {
  Point3 lo, hi;

  void add(const Point3& p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
};

double box_gap(const Box& a, const Box& b) {
  const double dx = std::max({0.0, a.lo.x - b.hi.x, b.lo.x - a.hi.x});
  const double dy = std::max({0.0, a.lo.y - b.hi.y, b.lo.y - a.hi.y});
  const double dz = std::max({0.0, a.lo.z - b.hi.z, b.lo.z - a.hi.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Hierarchy over contiguous edge ranges [e0, e1); the box holds vertices e0..e1.
struct RangeNode {
  std::size_t e0 = 0, e1 = 0;
  Box box;
  int left = -1, right = -1;

  bool leaf() const { return left < 0; }
};

class RangeTree {
 public:
  explicit RangeTree(const PolyCurve& c) : curve_(c) {
    nodes_.reserve(2 * c.size());
    build(0, c.size());
  }

  const RangeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

 private:
  int build(std::size_t e0, std::size_t e1) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    RangeNode n;
    n.e0 = e0;
    n.e1 = e1;
    if (e1 - e0 == 1) {
      n.box = {curve_.edge_start(e0), curve_.edge_start(e0)};
      n.box.add(curve_.edge_end(e0));
    } else {
      const std::size_t mid = e0 + (e1 - e0) / 2;
      n.left = build(e0, mid);
      n.right = build(mid, e1);
      n.box = nodes_[static_cast<std::size_t>(n.left)].box;
      n.box.add(nodes_[static_cast<std::size_t>(n.right)].box.lo);
      n.box.add(nodes_[static_cast<std::size_t>(n.right)].box.hi);
    }
    nodes_[static_cast<std::size_t>(id)] = n;
    return id;
  }

  const PolyCurve& curve_;
  std::vector<RangeNode> nodes_;
};

struct QueuedCell {
  double bound;
  EdgeCell cell;

  double area() const { return (cell.s1 - cell.s0) * (cell.t1 - cell.t0); }
};

struct QueueOrder {
  bool operator()(const QueuedCell& a, const QueuedCell& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    const double aa = a.area(), ab = b.area();
    if (aa != ab) return aa < ab;
    if (a.cell.s0 != b.cell.s0) return a.cell.s0 > b.cell.s0;
    return a.cell.t0 > b.cell.t0;
  }
};

class Certifier {
 public:
  Certifier(const PolyCurve& c, double eps, const CertifyOptions& opts)
      : c_(c), L_(c.length()), eps_(eps), opts_(opts) {}

  DistortionCertificate run() {
    seed_from_vertices();
    enumerate_pairs();

    DistortionCertificate cert;
    cert.eps_requested = eps_;
    while (!queue_.empty()) {
      const QueuedCell top = queue_.top();
      if (top.bound <= lo_ + eps_) break;
      if (cert.cells_expanded >= opts_.max_cells) {
        cert.budget_exceeded = true;
        break;
      }
      queue_.pop();
      ++cert.cells_expanded;
      split(top.cell);
    }
    double hi = std::max({lo_, closed_hi_, pruned_hi_});
    if (!queue_.empty()) hi = std::max(hi, queue_.top().bound);
    cert.lo = lo_;
    cert.hi = hi;
    cert.witness = witness_;
    return cert;
  }

 private:
  void offer(std::size_t i, double s, std::size_t j, double t) {
    const double chord = distance(c_.point_on_edge(i, s), c_.point_on_edge(j, t));
    if (chord < kChordGuard) return;
    const double d = std::abs(t - s);
    const double ratio = std::min(d, L_ - d) / chord;
    if (ratio > lo_) {
      lo_ = ratio;
      witness_ = {c_.wrap(s), c_.wrap(t), ratio};
    }
  }

  void seed_from_vertices() {
    const std::size_t m = c_.size();
    const auto cum = c_.cum_len();
    const auto v = c_.vertices();
    lo_ = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double chord = distance(v[i], v[j]);
        if (chord < kChordGuard) continue;
        const double d = cum[j] - cum[i];
        const double ratio = std::min(d, L_ - d) / chord;
        if (ratio > lo_) {
          lo_ = ratio;
          witness_ = {cum[i], cum[j], ratio};
        }
      }
    }
  }

  void add_cell(const EdgeCell& cell) {
    const double sm = 0.5 * (cell.s0 + cell.s1), tm = 0.5 * (cell.t0 + cell.t1);
    offer(cell.edge_s, sm, cell.edge_t, tm);
    offer(cell.edge_s, cell.s0, cell.edge_t, cell.t0);
    offer(cell.edge_s, cell.s0, cell.edge_t, cell.t1);
    offer(cell.edge_s, cell.s1, cell.edge_t, cell.t0);
    offer(cell.edge_s, cell.s1, cell.edge_t, cell.t1);
    const double u = cell_upper_bound(c_, cell);
    if (u <= lo_ + eps_) {
      pruned_hi_ = std::max(pruned_hi_, u);
    } else {
      queue_.push({u, cell});
    }
  }

  void split(const EdgeCell& cell) {
    const double ls = cell.s1 - cell.s0, lt = cell.t1 - cell.t0;
    EdgeCell a = cell, b = cell;
    if (lt > ls * (1.0 + 1e-9)) {
      const double mid = 0.5 * (cell.t0 + cell.t1);
      a.t1 = mid;
      b.t0 = mid;
    } else {
      const double mid = 0.5 * (cell.s0 + cell.s1);
      a.s1 = mid;
      b.s0 = mid;
    }
    add_cell(a);
    add_cell(b);
  }

  // Edges i < j sharing vertex v. The through-vertex path is the shorter one
  // for every pair within L/4 of v on both sides, so the supremum over that
  // corner rectangle is exactly corner_ratio(phi), attained on the diagonal.
  void corner(std::size_t i, std::size_t j) {
    const auto cum = c_.cum_len();
    const std::size_t m = c_.size();
    const bool wrap = (i == 0 && j == m - 1);
    const std::size_t v = wrap ? 0 : j;
    const double cr = corner_ratio(interior_angle(c_, v));
    closed_hi_ = std::max(closed_hi_, cr);

    if (!wrap) {
      // s on edge i ends at v = cum[j]; t on edge j starts there.
      const double reach_s = std::min(c_.edge_length(i), 0.25 * L_);
      const double reach_t = std::min(c_.edge_length(j), 0.25 * L_);
      const double a = 0.5 * std::min(reach_s, reach_t);
      offer(i, cum[j] - a, j, cum[j] + a);
      if (reach_s < c_.edge_length(i)) add_cell({i, cum[i], cum[j] - reach_s, j, cum[j], cum[j + 1]});
      if (reach_t < c_.edge_length(j)) add_cell({i, cum[j] - reach_s, cum[j], j, cum[j] + reach_t, cum[j + 1]});
    } else {
      // s on edge 0 starts at v0 (s = 0); t on edge m-1 ends at v0 (t = L).
      const double reach_s = std::min(c_.edge_length(0), 0.25 * L_);
      const double reach_t = std::min(c_.edge_length(m - 1), 0.25 * L_);
      const double a = 0.5 * std::min(reach_s, reach_t);
      offer(0, a, m - 1, L_ - a);
      if (reach_s < c_.edge_length(0)) add_cell({0, reach_s, cum[1], m - 1, cum[m - 1], L_});
      if (reach_t < c_.edge_length(m - 1)) add_cell({0, 0.0, reach_s, m - 1, cum[m - 1], L_ - reach_t});
    }
  }

  void edge_pair(std::size_t i, std::size_t j) {
    const std::size_t m = c_.size();
    if (i == j) return;  // collinear pairs on one edge have ratio exactly 1
    if (edges_adjacent(m, i, j)) {
      corner(i, j);
      return;
    }
    const auto cum = c_.cum_len();
    add_cell({i, cum[i], cum[i + 1], j, cum[j], cum[j + 1]});
  }

  double range_bound(const RangeNode& a, const RangeNode& b) const {
    const auto cum = c_.cum_len();
    const double num = shorter_path_bound(cum[b.e0] - cum[a.e1], cum[b.e1] - cum[a.e0], L_);
    const double gap = box_gap(a.box, b.box);
    return gap < kChordGuard ? kInf : num / gap;
  }

  // Walks pairs of edge ranges, discarding range pairs whose bound already
  // falls below lo + eps and emitting edge-level cells for the rest.
  void enumerate_pairs() {
    const RangeTree tree(c_);
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
      const auto [ia, ib] = stack.back();
      stack.pop_back();
      const RangeNode& a = tree.node(ia);
      const RangeNode& b = tree.node(ib);
      if (ia == ib) {
        if (a.leaf()) continue;
        stack.push_back({a.right, a.right});
        stack.push_back({a.left, a.right});
        stack.push_back({a.left, a.left});
        continue;
      }
      if (a.leaf() && b.leaf()) {
        edge_pair(a.e0, b.e0);
        continue;
      }
      const double u = range_bound(a, b);
      if (u <= lo_ + eps_) {
        pruned_hi_ = std::max(pruned_hi_, u);
        continue;
      }
      const bool split_a = !a.leaf() && (b.leaf() || a.e1 - a.e0 >= b.e1 - b.e0);
      if (split_a) {
        stack.push_back({a.right, ib});
        stack.push_back({a.left, ib});
      } else {
        stack.push_back({ia, b.right});
        stack.push_back({ia, b.left});
      }
    }
  }

  const PolyCurve& c_;
  const double L_;
  const double eps_;
  const CertifyOptions opts_;

  double lo_ = 0.0;
  WitnessPair witness_;
  double closed_hi_ = 1.0;
  double pruned_hi_ = 1.0;
  std::priority_queue<QueuedCell, std::vector<QueuedCell>, QueueOrder> queue_;
};

}  // namespace

double corner_ratio(double phi) {
  if (phi <= 1e-9) return kInf;
  return 1.0 / std::sin(0.5 * std::min(phi, std::numbers::pi));
}

double cell_upper_bound(const PolyCurve& c, const EdgeCell& cell) {
  const double L = c.length();
  // With s on an earlier edge than t the forward path t - s is affine on the
  // cell and spans [t0 - s1, t1 - s0]; the backward path is L minus it.
  double fmin = cell.t0 - cell.s1, fmax = cell.t1 - cell.s0;
  if (cell.edge_s > cell.edge_t) {
    fmin = cell.s0 - cell.t1;
    fmax = cell.s1 - cell.t0;
  }
  const double num = shorter_path_bound(fmin, fmax, L);
  const double den =
      segment_min_distance(c.point_on_edge(cell.edge_s, cell.s0), c.point_on_edge(cell.edge_s, cell.s1),
                           c.point_on_edge(cell.edge_t, cell.t0), c.point_on_edge(cell.edge_t, cell.t1));
  return den < kChordGuard ? kInf : num / den;
}

DistortionCertificate distortion_certified(const PolyCurve& c, double eps, const CertifyOptions& opts) {
  if (!(eps > 0.0)) throw Error(ErrorKind::OutOfRange, "eps must be positive");
  const Clearance cl = min_clearance_pair(c);
  if (cl.distance < kChordGuard) {
    throw Error(ErrorKind::NotEmbedded, "edges " + std::to_string(cl.edge_a) + " and " +
                                            std::to_string(cl.edge_b) + " touch");
  }
  return Certifier(c, eps, opts).run();
}

WitnessPair distortion_sampled(const PolyCurve& c, int n_samples) {
  if (n_samples < 8) throw Error(ErrorKind::OutOfRange, "n_samples must be at least 8");
  const double L = c.length();
  const auto cum = c.cum_len();
  std::vector<double> params(cum.begin(), cum.end() - 1);
  for (int k = 0; k < n_samples; ++k) params.push_back(L * k / n_samples);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());

  std::vector<Point3> pts;
  pts.reserve(params.size());
  for (double s : params) pts.push_back(c.point_at(s));

  WitnessPair best{0.0, 0.0, -1.0};
  const std::size_t n = params.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double chord = distance(pts[i], pts[j]);
      if (chord < kChordGuard) continue;
      const double d = params[j] - params[i];
      const double ratio = std::min(d, L - d) / chord;
      if (ratio > best.ratio) best = {params[i], params[j], ratio};
    }
  }
  if (best.ratio < 0.0) throw Error(ErrorKind::DegenerateCurve, "all sample pairs coincide");
  return best;
}

double helix_ratio_bound(int t) {
  const double tt = static_cast<double>(t);
  return std::sqrt(std::numbers::pi * std::numbers::pi * tt * tt / 4.0 + 1.0);
}

WitnessPair open_polyline_max_ratio(std::span<const Point3> pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  WitnessPair best{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double chord = distance(pts[i], pts[j]);
      if (chord < kChordGuard) continue;
      const double ratio = (cum[j] - cum[i]) / chord;
      if (ratio > best.ratio) best = {cum[i], cum[j], ratio};
    }
  }
  return best;
}

namespace {

void arc_samples(const PolyCurve& c, const ArcTag& a, std::vector<double>& params, std::vector<Point3>& pts) {
  const std::size_t m = c.size();
  const auto cum = c.cum_len();
  for (std::size_t k = 0; k <= a.edge_count; ++k) {
    const std::size_t v = (a.first_edge + k) % m;
    params.push_back(cum[v]);
    pts.push_back(c.vertex(v));
    if (k < a.edge_count) {
      const double mid = cum[v] + 0.5 * c.edge_length(v);
      params.push_back(mid);
      pts.push_back(c.point_on_edge(v, mid));
    }
  }
}

}  // namespace

WitnessPair max_ratio_between_arcs(const PolyCurve& c, const ArcTag& a, const ArcTag& b) {
  std::vector<double> pa, pb;
  std::vector<Point3> xa, xb;
  arc_samples(c, a, pa, xa);
  arc_samples(c, b, pb, xb);
  const double L = c.length();
  WitnessPair best{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      const double chord = distance(xa[i], xb[j]);
      if (chord < kChordGuard) continue;
      const double d = std::abs(pa[i] - pb[j]);
      const double ratio = std::min(d, L - d) / chord;
      if (ratio > best.ratio) best = {pa[i], pb[j], ratio};
    }
  }
  return best;
}

}  // namespace kdl
