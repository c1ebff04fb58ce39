#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "kdl/cli.hpp"
#include "kdl/io.hpp"

using namespace kdl;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run kdl_run(std::vector<std::string> args) {
  args.insert(args.begin(), "kdl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "kdl_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

const char* kSquare = R"({"closed": true, "vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0]]})";

}  // namespace

TEST_CASE("build writes tagged curve JSON and OBJ") {
  const fs::path out = scratch("k3.json"), obj = scratch("k3.obj");
  const Run r = kdl_run({"build", "--b", "3", "--n", "13", "--t", "3", "--samples", "16", "--out", out.string(),
                         "--obj", obj.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.err.find("6 bridge, 14 vertical, 64 twist") != std::string::npos);
  const PolyCurve c = read_curve_file(out.string());
  const PolyCurve fresh = build_plat(make_alternating_jm_spec(3, 13, 3), 16);
  REQUIRE(c.size() == fresh.size());
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.vertex(i) == fresh.vertex(i));
  CHECK(c.length() == fresh.length());
  CHECK(c.arcs().size() == fresh.arcs().size());
  std::ifstream is(obj);
  std::string line;
  std::size_t v = 0, l = 0;
  while (std::getline(is, line)) {
    v += line.rfind("v ", 0) == 0;
    l += line.rfind("l ", 0) == 0;
  }
  CHECK(v == c.size());
  CHECK(l == c.size());
}

TEST_CASE("build rejects bad specs with exit 2") {
  Run r = kdl_run({"build", "--b", "3", "--n", "11", "--t", "3"});
  CHECK(r.code == cli::kUserError);
  CHECK(r.err.find("n >= 4b(b-2)") != std::string::npos);
  r = kdl_run({"build", "--b", "3", "--n", "13", "--t", "2"});
  CHECK(r.code == cli::kUserError);
  CHECK(r.err.find("at least 3 crossings") != std::string::npos);
  CHECK(kdl_run({"build", "--b", "3"}).code == cli::kUserError);
  CHECK(kdl_run({"frobnicate"}).code == cli::kUserError);
}

TEST_CASE("distortion on the square") {
  const fs::path sq = scratch("square.json");
  write_text(sq, kSquare);
  Run r = kdl_run({"distortion", "--curve", sq.string(), "--mode", "certified", "--eps", "1e-4"});
  REQUIRE(r.code == cli::kOk);
  const json cert = json::parse(r.out);
  CHECK(cert["lo"].get<double>() <= 2.0);
  CHECK(cert["hi"].get<double>() >= 2.0);
  CHECK(cert["hi"].get<double>() - cert["lo"].get<double>() <= 1e-4);
  r = kdl_run({"distortion", "--curve", sq.string(), "--mode", "sampled", "--samples", "400"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["witness"]["ratio"].get<double>() == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("distortion on a 1000-gon, sampled") {
  std::ostringstream os;
  os << R"({"closed": true, "vertices": [)";
  os.precision(17);
  for (int k = 0; k < 1000; ++k)
    os << (k ? "," : "") << '[' << std::cos(2 * M_PI * k / 1000) << ',' << std::sin(2 * M_PI * k / 1000) << ",0]";
  os << "]}";
  const fs::path p = scratch("p1000.json");
  write_text(p, os.str());
  const Run r = kdl_run({"distortion", "--curve", p.string(), "--mode", "sampled", "--samples", "4000"});
  REQUIRE(r.code == cli::kOk);
  CHECK(json::parse(r.out)["witness"]["ratio"].get<double>() == doctest::Approx(M_PI / 2).epsilon(1e-3));
}

TEST_CASE("distortion input errors") {
  const fs::path bad = scratch("garbage.json");
  write_text(bad, "{not json");
  Run r = kdl_run({"distortion", "--curve", bad.string()});
  CHECK(r.code == cli::kUserError);
  CHECK(r.err.find("Parse") != std::string::npos);
  CHECK(kdl_run({"distortion", "--curve", scratch("missing.json").string()}).code == cli::kUserError);
  const fs::path open = scratch("open.json");
  write_text(open, R"({"closed": false, "vertices": [[0,0,0],[1,0,0],[1,1,0]]})");
  CHECK(kdl_run({"distortion", "--curve", open.string()}).code == cli::kUserError);
}

TEST_CASE("budget exhaustion maps to exit 3 with a partial certificate") {
  const fs::path p = scratch("jitter.json");
  write_text(p, R"({"closed": true, "vertices": [[1,0,0],[0.3,0.9,0],[-0.8,0.7,0],[-1.1,-0.2,0],[-0.2,-0.95,0],[0.9,-0.6,0]]})");
  setenv("KDL_BUDGET", "3", 1);
  const Run r = kdl_run({"distortion", "--curve", p.string(), "--eps", "1e-12"});
  unsetenv("KDL_BUDGET");
  CHECK(r.code == cli::kPartial);
  const json cert = json::parse(r.out);
  CHECK(cert["budget_exceeded"].get<bool>());
  CHECK(cert["lo"].get<double>() <= cert["hi"].get<double>());
}

TEST_CASE("bounds report") {
  const fs::path k3 = scratch("k3b.json");
  REQUIRE(kdl_run({"build", "--b", "3", "--n", "13", "--t", "3", "--out", k3.string()}).code == cli::kOk);
  Run r = kdl_run({"bounds", "--b", "3", "--n", "13", "--t", "3", "--curve", k3.string()});
  REQUIRE(r.code == cli::kOk);
  json j = json::parse(r.out);
  CHECK(j["d"] == 7);
  CHECK(j["lower_bound"].get<double>() == doctest::Approx(0.0375));
  CHECK(j["pardon_bound"].get<double>() == doctest::Approx(0.0125));
  CHECK(j["crossing_number"] == 126);
  CHECK(j.contains("alpha"));
  CHECK(j.contains("upper_bound"));
  r = kdl_run({"bounds", "--b", "3", "--n", "13", "--t", "3"});
  j = json::parse(r.out);
  CHECK_FALSE(j.contains("alpha"));
  CHECK_FALSE(j.contains("upper_bound"));
  CHECK(kdl_run({"bounds", "--b", "2", "--n", "13", "--t", "3"}).code == cli::kUserError);
}

TEST_CASE("verify prints PASS lines and FAIL with witness under a faulty helix") {
  Run r = kdl_run({"verify", "--t", "3"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("max ratio 4.817") != std::string::npos);
  CHECK(r.out.find("18.85") != std::string::npos);
  CHECK(r.out.find("37.70") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  r = kdl_run({"verify", "--t", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("6.28") != std::string::npos);
  std::ostringstream out, err;
  const int code = cli::cmd_verify({3, 64}, out, err, [](int t, int s) { return helix_polyline(4 * t, s); });
  CHECK(code == cli::kInternal);
  CHECK(out.str().find("FAIL") != std::string::npos);
  CHECK(out.str().find("witness s=") != std::string::npos);
}

TEST_CASE("sweep rows") {
  const fs::path csv = scratch("sweep.csv");
  std::vector<cli::SweepRow> rows;
  std::ostringstream out, err;
  cli::SweepArgs args;
  args.b_min = 3;
  args.b_max = 4;
  args.csv = csv.string();
  REQUIRE(cli::cmd_sweep(args, out, err, &rows) == cli::kOk);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.d == 2 * row.b + 1);
    CHECK(row.n == 4 * row.b * (row.b - 2) + 1);
    REQUIRE(row.certified_hi.has_value());
    CHECK(row.lower_bound <= *row.certified_hi);
    CHECK(*row.certified_lo <= *row.certified_hi);
    CHECK(row.sampled_delta <= *row.certified_hi);
    CHECK(row.sampled_delta <= row.upper_bound);
  }
  CHECK(rows[0].lower_bound < rows[1].lower_bound);
  std::ifstream is(csv);
  std::string header, line;
  std::getline(is, header);
  CHECK(header == cli::kSweepHeader);
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 2);
}

TEST_CASE("refine subcommand writes curve and log") {
  const fs::path in = scratch("hex.json"), out = scratch("hex_out.json"), log = scratch("hex.csv");
  write_text(in, R"({"closed": true, "vertices": [[1,0,0],[0.5,0.9,0],[-0.5,0.8,0],[-1.1,0,0],[-0.5,-0.85,0],[0.5,-0.9,0]]})");
  const Run r = kdl_run({"refine", "--curve", in.string(), "--out", out.string(), "--log", log.string(),
                         "--iterations", "500"});
  REQUIRE(r.code == cli::kOk);
  CHECK(read_curve_file(out.string()).size() == 6);
  std::ifstream is(log);
  std::string header;
  std::getline(is, header);
  CHECK(header == "iteration,best_ratio,clearance");
}

TEST_CASE("installed binary exit codes") {
  const char* bin = std::getenv("KDL_CLI");
  if (bin == nullptr) return;
  auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("verify --t 3") == 0);
  CHECK(status("build --b 3 --n 11 --t 3") == 2);
  CHECK(status("--help") == 0);
}
