#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kdl/plat.hpp"

namespace kdl::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUserError = 2;
inline constexpr int kPartial = 3;
inline constexpr int kInternal = 4;

struct BuildArgs {
  int b = 3, n = 13, t = 3;
  int samples = 16;
  std::string out;
  std::string obj;
};

struct DistortionArgs {
  std::string curve;
  std::string mode = "certified";  // or "sampled"
  double eps = 1e-3;
  int samples = 4000;
};

struct BoundsArgs {
  int b = 3, n = 13, t = 3;
  std::string curve;
  int representativity = 2;
};

struct VerifyArgs {
  int t = 3;
  int samples = 128;
};

struct SweepArgs {
  int b_min = 3, b_max = 5, t = 3;
  double eps = 0.05;
  std::string csv;
  int samples = 16;
  int sampled_n = 1024;
  bool certified_all = false;
};

struct RefineArgs {
  std::string curve;
  std::string out;
  std::string log;
  int iterations = 10000;
  double step = 0.01;
  double clearance_floor = 0.02;
  std::uint64_t seed = 1;
  double cooling = 0.9999;
};

struct SweepRow {
  int b = 0, n = 0, t = 0, d = 0;
  double lower_bound = 0.0, pardon_bound = 0.0, sampled_delta = 0.0;
  std::optional<double> certified_lo, certified_hi;
  double upper_bound = 0.0, alpha = 0.0, L = 0.0;
  std::int64_t runtime_ms = 0;
  bool budget_exceeded = false;
};

inline constexpr const char* kSweepHeader =
    "b,n,t,d,lower_bound,pardon_bound,sampled_delta,certified_lo,certified_hi,upper_bound,alpha,L,runtime_ms";

std::string sweep_csv_line(const SweepRow& row);

/// B&B cell cap: 5e6 unless the KDL_BUDGET environment variable holds a positive integer.
std::uint64_t budget_from_env();

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err);
int cmd_distortion(const DistortionArgs& args, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err,
               const HelixGenerator& helix = helix_polyline);
int cmd_refine(const RefineArgs& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err, std::vector<SweepRow>* rows = nullptr);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kdl::cli
