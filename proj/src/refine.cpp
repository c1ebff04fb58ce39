#include "kdl/refine.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kdl/distortion.hpp"
#include "kdl/errors.hpp"

namespace kdl {

namespace {

// Clearance of the two edges touching vertex v against every edge that shares
// no vertex with them. Other pairs are unchanged by a move of v.
double local_clearance(std::span<const Point3> pts, std::size_t v) {
  const std::size_t m = pts.size();
  double best = std::numeric_limits<double>::infinity();
  for (const std::size_t e : {(v + m - 1) % m, v}) {
    const Point3& a = pts[e];
    const Point3& b = pts[(e + 1) % m];
    for (std::size_t k = 0; k < m; ++k) {
      if (edges_adjacent(m, e, k)) continue;
      best = std::min(best, segment_min_distance(a, b, pts[k], pts[(k + 1) % m]));
    }
  }
  return best;
}

}  // namespace

RefineResult refine_with_log(const PolyCurve& c, const RefineConfig& cfg, int log_every) {
  if (!(cfg.clearance_floor > 0.0) || !(cfg.step > 0.0)) {
    throw Error(ErrorKind::InfeasibleStart, "step and clearance_floor must be positive");
  }
  const double start_clearance = min_clearance(c);
  if (start_clearance < cfg.clearance_floor) {
    throw Error(ErrorKind::InfeasibleStart, "input clearance " + std::to_string(start_clearance) +
                                                " is below the floor " + std::to_string(cfg.clearance_floor));
  }
  const double step = std::min(cfg.step, 0.5 * cfg.clearance_floor);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  RefineResult out{c, 0.0, 0.0, 0, {}};
  std::vector<Point3> current(c.vertices().begin(), c.vertices().end());
  double current_ratio = distortion_sampled(c, cfg.n_samples).ratio;
  double current_clearance = start_clearance;
  out.initial_ratio = current_ratio;
  out.best_ratio = current_ratio;
  double temperature = cfg.initial_temperature;

  for (int it = 1; it <= cfg.iterations; ++it) {
    const std::size_t v = pick(rng);
    Point3 delta{unit(rng), unit(rng), unit(rng)};
    while (dot(delta, delta) > 1.0) delta = {unit(rng), unit(rng), unit(rng)};
    const double u = coin(rng);

    std::vector<Point3> trial = current;
    trial[v] = trial[v] + step * delta;
    if (local_clearance(trial, v) >= cfg.clearance_floor) {
      try {
        PolyCurve candidate = PolyCurve::build(trial);
        if (candidate.size() == current.size()) {
          const double ratio = distortion_sampled(candidate, cfg.n_samples).ratio;
          const double worse = ratio - current_ratio;
          if (worse <= 0.0 || (temperature > 0.0 && u < std::exp(-worse / temperature))) {
            current_clearance = min_clearance(candidate);
            if (current_clearance < cfg.clearance_floor) {
              throw Error(ErrorKind::Internal, "accepted state violates the clearance floor");
            }
            current = std::move(trial);
            current_ratio = ratio;
            ++out.accepted;
            if (ratio < out.best_ratio) {
              out.best_ratio = ratio;
              out.curve = std::move(candidate);
            }
          }
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateCurve) throw;
      }
    }
    temperature *= cfg.cooling;
    if (log_every > 0 && (it % log_every == 0 || it == cfg.iterations)) {
      out.log.push_back({it, out.best_ratio, current_clearance});
    }
  }
  return out;
}

}  // namespace kdl
