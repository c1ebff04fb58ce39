#include "kdl/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "kdl/bounds.hpp"
#include "kdl/distortion.hpp"
#include "kdl/errors.hpp"
#include "kdl/io.hpp"
#include "kdl/refine.hpp"

namespace kdl::cli {

namespace {

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::Internal ? kInternal : kUserError; }

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt_fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

std::uint64_t budget_from_env() {
  if (const char* env = std::getenv("KDL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return CertifyOptions{}.max_cells;
}

std::string sweep_csv_line(const SweepRow& r) {
  std::ostringstream os;
  os << r.b << ',' << r.n << ',' << r.t << ',' << r.d << ',' << fmt_double(r.lower_bound) << ','
     << fmt_double(r.pardon_bound) << ',' << fmt_double(r.sampled_delta) << ','
     << (r.certified_lo ? fmt_double(*r.certified_lo) : "") << ','
     << (r.certified_hi ? fmt_double(*r.certified_hi) : "") << ',' << fmt_double(r.upper_bound) << ','
     << fmt_double(r.alpha) << ',' << fmt_double(r.L) << ',' << r.runtime_ms;
  return os.str();
}

int cmd_build(const BuildArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PlatSpec spec = make_alternating_jm_spec(args.b, args.n, args.t);
    const PolyCurve curve = build_plat(spec, args.samples);
    if (!args.out.empty()) {
      write_curve_file(args.out, curve);
    } else {
      out << curve_to_json(curve).dump() << '\n';
    }
    if (!args.obj.empty()) {
      std::ofstream os(args.obj);
      if (!os) throw Error(ErrorKind::Parse, "cannot open '" + args.obj + "' for writing");
      write_obj(os, curve);
    }
    int bridges = 0, verticals = 0, twists = 0;
    for (const ArcTag& a : curve.arcs()) {
      bridges += a.kind == ArcKind::Bridge;
      verticals += a.kind == ArcKind::Vertical;
      twists += a.kind == ArcKind::Twist;
    }
    err << "built b=" << args.b << " n=" << args.n << " t=" << args.t << ": " << curve.size() << " vertices, L="
        << curve.length() << ", arcs: " << bridges << " bridge, " << verticals << " vertical, " << twists
        << " twist\n";
    return kOk;
  });
}

int cmd_distortion(const DistortionArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PolyCurve curve = read_curve_file(args.curve);
    if (args.mode == "sampled") {
      const WitnessPair w = distortion_sampled(curve, args.samples);
      out << json{{"mode", "sampled"}, {"samples", args.samples}, {"witness", witness_to_json(w)}}.dump() << '\n';
      return kOk;
    }
    if (args.mode != "certified") throw Error(ErrorKind::Parse, "mode must be 'sampled' or 'certified'");
    const DistortionCertificate cert = distortion_certified(curve, args.eps, {budget_from_env()});
    out << certificate_to_json(cert).dump() << '\n';
    if (cert.budget_exceeded) {
      err << "warning: cell budget exhausted; interval width " << cert.hi - cert.lo << " exceeds eps\n";
      return kPartial;
    }
    return kOk;
  });
}

int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PlatSpec spec = make_alternating_jm_spec(args.b, args.n, args.t);
    std::optional<PolyCurve> curve;
    if (!args.curve.empty()) curve = read_curve_file(args.curve);
    const BoundsReport r = make_report(spec, curve ? &*curve : nullptr, args.representativity);
    out << report_to_json(r).dump(2) << '\n';
    return kOk;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err, const HelixGenerator& helix) {
  return guarded(err, [&] {
    const auto checks = verify_claims(args.t, args.samples, helix);
    bool all = true;
    for (const ClaimCheck& c : checks) {
      all = all && c.pass;
      out << (c.pass ? "PASS " : "FAIL ") << c.name << ": max ratio " << fmt_fixed(c.measured, 4)
          << " <= " << fmt_fixed(c.bound, 2);
      if (c.name.rfind("same arc", 0) == 0) out << " (helix bound " << fmt_fixed(helix_ratio_bound(args.t), 4) << ")";
      if (!c.pass) out << " witness s=" << fmt_double(c.witness.s) << " t=" << fmt_double(c.witness.t);
      out << '\n';
    }
    return all ? kOk : kInternal;
  });
}

int cmd_refine(const RefineArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PolyCurve curve = read_curve_file(args.curve);
    RefineConfig cfg;
    cfg.iterations = args.iterations;
    cfg.step = args.step;
    cfg.clearance_floor = args.clearance_floor;
    cfg.seed = args.seed;
    cfg.cooling = args.cooling;
    const RefineResult r = refine_with_log(curve, cfg);
    if (!args.out.empty()) {
      write_curve_file(args.out, r.curve);
    } else {
      out << curve_to_json(r.curve).dump() << '\n';
    }
    if (!args.log.empty()) {
      std::ofstream log(args.log);
      if (!log) throw Error(ErrorKind::Parse, "cannot open '" + args.log + "' for writing");
      log << "iteration,best_ratio,clearance\n";
      for (const RefineLogRow& row : r.log)
        log << row.iteration << ',' << fmt_double(row.best_ratio) << ',' << fmt_double(row.clearance) << '\n';
    }
    err << "sampled distortion " << r.initial_ratio << " -> " << r.best_ratio << " (" << r.accepted
        << " moves accepted)\n";
    return kOk;
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err, std::vector<SweepRow>* rows) {
  return guarded(err, [&] {
    if (args.b_min < 3 || args.b_max < args.b_min) throw Error(ErrorKind::InvalidSpec, "need 3 <= b-min <= b-max");
    std::ofstream csv_file;
    std::ostream* csv = &out;
    if (!args.csv.empty()) {
      csv_file.open(args.csv);
      if (!csv_file) throw Error(ErrorKind::Parse, "cannot open '" + args.csv + "' for writing");
      csv = &csv_file;
    }
    *csv << kSweepHeader << '\n';
    int code = kOk;
    for (int b = args.b_min; b <= args.b_max; ++b) {
      const auto t0 = std::chrono::steady_clock::now();
      SweepRow row;
      row.b = b;
      row.n = 4 * b * (b - 2) + 1;
      row.t = args.t;
      const PlatSpec spec = make_alternating_jm_spec(b, row.n, args.t);
      const PolyCurve curve = build_plat(spec, args.samples);
      const BoundsReport rep = make_report(spec, &curve);
      row.d = rep.d;
      row.lower_bound = rep.lower_bound;
      row.pardon_bound = rep.pardon_bound;
      row.upper_bound = *rep.upper_bound;
      row.alpha = *rep.alpha;
      row.L = curve.length();
      row.sampled_delta = distortion_sampled(curve, args.sampled_n).ratio;
      if (b <= 4 || args.certified_all) {
        const DistortionCertificate cert = distortion_certified(curve, args.eps, {budget_from_env()});
        row.certified_lo = cert.lo;
        row.certified_hi = cert.hi;
        row.budget_exceeded = cert.budget_exceeded;
        if (cert.budget_exceeded) code = std::max(code, kPartial);
      }
      row.runtime_ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      const double hi = row.certified_hi.value_or(row.upper_bound);
      if (row.lower_bound > hi || row.sampled_delta > hi || row.sampled_delta > row.upper_bound ||
          (row.certified_lo && *row.certified_lo > *row.certified_hi)) {
        err << "invariant violated for b=" << b << '\n';
        code = kInternal;
      }
      *csv << sweep_csv_line(row) << '\n';
      csv->flush();
      err << "b=" << b << " done in " << row.runtime_ms << " ms\n";
      if (rows) rows->push_back(row);
    }
    return code;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knot distortion lab: plat embeddings, certified distortion, and bound checks", "kdl"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* sub_build = app.add_subcommand("build", "Build the alternating plat curve and write curve JSON");
  sub_build->add_option("--b", build.b, "half the number of plat strands")->required();
  sub_build->add_option("--n", build.n, "number of rows (odd, >= 4b(b-2))")->required();
  sub_build->add_option("--t", build.t, "minimum crossings per twist region")->required();
  sub_build->add_option("--samples", build.samples, "polyline vertices per half-twist");
  sub_build->add_option("--out", build.out, "output curve JSON (stdout when omitted)");
  sub_build->add_option("--obj", build.obj, "also write a Wavefront OBJ polyline");

  DistortionArgs dist;
  auto* sub_dist = app.add_subcommand("distortion", "Distortion of a curve JSON file");
  sub_dist->add_option("--curve", dist.curve, "curve JSON")->required();
  sub_dist->add_option("--mode", dist.mode, "sampled | certified")->check(CLI::IsMember({"sampled", "certified"}));
  sub_dist->add_option("--eps", dist.eps, "certified interval width");
  sub_dist->add_option("--samples", dist.samples, "equally spaced samples (sampled mode)");

  BoundsArgs bnd;
  auto* sub_bounds = app.add_subcommand("bounds", "Closed-form bounds report for the alternating plat");
  sub_bounds->add_option("--b", bnd.b)->required();
  sub_bounds->add_option("--n", bnd.n)->required();
  sub_bounds->add_option("--t", bnd.t)->required();
  sub_bounds->add_option("--curve", bnd.curve, "built curve JSON for alpha and the upper bound");
  sub_bounds->add_option("--representativity", bnd.representativity);

  VerifyArgs ver;
  auto* sub_verify = app.add_subcommand("verify", "Same-arc and adjacent-arc ratio checks for one twist count");
  sub_verify->add_option("--t", ver.t)->required();
  sub_verify->add_option("--samples", ver.samples, "polyline vertices per half-twist");
  bool fault = false;
  sub_verify->add_flag("--fault", fault)->group("");

  RefineArgs ref;
  auto* sub_refine = app.add_subcommand("refine", "Anneal vertices to lower sampled distortion above a clearance floor");
  sub_refine->add_option("--curve", ref.curve, "input curve JSON")->required();
  sub_refine->add_option("--out", ref.out, "output curve JSON (stdout when omitted)");
  sub_refine->add_option("--log", ref.log, "run log CSV");
  sub_refine->add_option("--iterations", ref.iterations);
  sub_refine->add_option("--step", ref.step, "max vertex displacement");
  sub_refine->add_option("--clearance-floor", ref.clearance_floor);
  sub_refine->add_option("--seed", ref.seed);
  sub_refine->add_option("--cooling", ref.cooling);

  SweepArgs sw;
  auto* sub_sweep = app.add_subcommand("sweep", "One row per b with n = 4b(b-2)+1");
  sub_sweep->add_option("--b-min", sw.b_min)->required();
  sub_sweep->add_option("--b-max", sw.b_max)->required();
  sub_sweep->add_option("--t", sw.t)->required();
  sub_sweep->add_option("--eps", sw.eps);
  sub_sweep->add_option("--csv", sw.csv, "CSV output (stdout when omitted)");
  sub_sweep->add_option("--samples", sw.samples, "polyline vertices per half-twist");
  sub_sweep->add_option("--sampled-n", sw.sampled_n, "equally spaced samples for the sampled estimate");
  sub_sweep->add_flag("--certified", sw.certified_all, "certify every row, not only b <= 4");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }

  if (*sub_build) return cmd_build(build, out, err);
  if (*sub_dist) return cmd_distortion(dist, out, err);
  if (*sub_bounds) return cmd_bounds(bnd, out, err);
  if (*sub_verify) {
    if (fault) return cmd_verify(ver, out, err, [](int t, int samples) { return helix_polyline(4 * t, samples); });
    return cmd_verify(ver, out, err);
  }
  if (*sub_refine) return cmd_refine(ref, out, err);
  if (*sub_sweep) return cmd_sweep(sw, out, err);
  return kUserError;
}

}  // namespace kdl::cli
