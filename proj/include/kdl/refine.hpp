#pragma once

#include <cstdint>
#include <vector>

#include "kdl/geom.hpp"

namespace kdl {

struct RefineConfig {
  int iterations = 10000;
  double step = 0.01;             // clamped to clearance_floor / 2
  double clearance_floor = 0.02;
  std::uint64_t seed = 1;
  double cooling = 0.9999;        // temperature multiplier per iteration
  double initial_temperature = 0.01;
  int n_samples = 64;             // fixed sampled-distortion resolution
};

struct RefineLogRow {
  int iteration = 0;
  double best_ratio = 0.0;
  double clearance = 0.0;
};

struct RefineResult {
  PolyCurve curve;
  double initial_ratio = 0.0;
  double best_ratio = 0.0;
  int accepted = 0;
  std::vector<RefineLogRow> log;
};

/// Simulated annealing on single-vertex moves, minimizing
/// distortion_sampled(c, cfg.n_samples) while every accepted state keeps
/// min_clearance >= clearance_floor. Returns the best state seen; identical
/// seeds give identical results. Throws InfeasibleStart.
RefineResult refine_with_log(const PolyCurve& c, const RefineConfig& cfg, int log_every = 100);

inline PolyCurve refine(const PolyCurve& c, const RefineConfig& cfg) { return refine_with_log(c, cfg, 0).curve; }

}  // namespace kdl
