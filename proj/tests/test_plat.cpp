#include <doctest.h>

#include <cmath>
#include <random>

#include "kdl/distortion.hpp"
#include "kdl/errors.hpp"
#include "kdl/plat.hpp"
#include "oracle.hpp"

using namespace kdl;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

std::vector<oracle::P3> to_oracle(const std::vector<Point3>& v) {
  std::vector<oracle::P3> out;
  for (const Point3& p : v) out.push_back({p.x, p.y, p.z});
  return out;
}

}  // namespace

TEST_CASE("spec validation") {
  CHECK(kind_of([] { make_alternating_jm_spec(2, 13, 3); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { make_alternating_jm_spec(3, 12, 3); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { make_alternating_jm_spec(3, 11, 3); }) == ErrorKind::InvalidSpec);
  CHECK(kind_of([] { make_alternating_jm_spec(3, 13, 2); }) == ErrorKind::InvalidSpec);
  PlatSpec s = make_alternating_jm_spec(3, 13, 3);
  s.twists[4].pop_back();
  CHECK(kind_of([&] { validate_spec(s); }) == ErrorKind::InvalidSpec);
  s = make_alternating_jm_spec(3, 13, 3);
  s.twists[2][1] = 2;
  CHECK(kind_of([&] { validate_spec(s); }) == ErrorKind::InvalidSpec);
}

TEST_CASE("alternating spec shape") {
  const PlatSpec s = make_alternating_jm_spec(4, 33, 3);
  REQUIRE(s.twists.size() == 33);
  for (int row = 1; row <= 33; ++row) {
    CHECK(static_cast<int>(s.twists[row - 1].size()) == regions_in_row(4, row));
    for (int c : s.twists[row - 1]) {
      CHECK(std::abs(c) >= 3);
      CHECK((row % 2 == 1 ? c > 0 : c < 0));
      CHECK(std::abs(c) % 2 == (row == 1 ? 1 : 0));
    }
  }
}

TEST_CASE("component count agrees with permutation oracle") {
  for (int b = 3; b <= 5; ++b) {
    const int n = 4 * b * (b - 2) + 1;
    const PlatSpec s = make_alternating_jm_spec(b, n, 3);
    CHECK(component_count(s) == 1);
    CHECK(oracle::plat_components(b, s.twists) == 1);
  }
  // All-odd counts: every region swaps.
  const PlatSpec odd = make_uniform_alternating_spec(3, 13, 3);
  CHECK(component_count(odd) == oracle::plat_components(3, odd.twists));
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> pick(3, 6);
  for (int trial = 0; trial < 200; ++trial) {
    PlatSpec s = make_alternating_jm_spec(3, 13, 3);
    for (auto& row : s.twists)
      for (int& c : row) c = (c > 0 ? 1 : -1) * pick(rng);
    CHECK(component_count(s) == oracle::plat_components(3, s.twists));
  }
}

TEST_CASE("multi-component specs are rejected") {
  const PlatSpec odd = make_uniform_alternating_spec(3, 13, 3);
  if (component_count(odd) != 1) CHECK(kind_of([&] { build_plat(odd); }) == ErrorKind::NotAKnot);
  PlatSpec even = make_alternating_jm_spec(3, 13, 3);
  even.twists[0][0] = 4;
  CHECK(component_count(even) > 1);
  CHECK(kind_of([&] { build_plat(even); }) == ErrorKind::NotAKnot);
}

TEST_CASE("helix polyline geometry") {
  const HelixParams h{0.5, 3};
  CHECK(h.length() == doctest::Approx(std::sqrt(M_PI * M_PI * 9 / 4 + 1)));
  const auto pts = helix_polyline(3, 128);
  CHECK(pts.size() == 3 * 128 + 1);
  for (const Point3& p : pts) CHECK(std::hypot(p.x, p.y) == doctest::Approx(0.5));
  CHECK(std::abs(pts.back().z - pts.front().z) == doctest::Approx(1.0));
  // Mirror image for negative counts.
  const auto neg = helix_polyline(-3, 128);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(neg[i].y == doctest::Approx(-pts[i].y));
}

TEST_CASE("helix ratio against oracle") {
  for (int t : {3, 5}) {
    const double measured = oracle::open_max_ratio(to_oracle(helix_polyline(t, 128)));
    CHECK(measured == doctest::Approx(helix_ratio_bound(t)).epsilon(5e-3));
    CHECK(measured <= 2 * M_PI * t);
  }
}

TEST_CASE("built plat: inventory, clearance, arcs") {
  for (int b = 3; b <= 4; ++b) {
    const int n = 4 * b * (b - 2) + 1;
    const PolyCurve c = build_plat(make_alternating_jm_spec(b, n, 3), 16);
    int bridges = 0, verticals = 0, twists = 0;
    std::size_t covered = 0;
    for (const ArcTag& a : c.arcs()) {
      bridges += a.kind == ArcKind::Bridge;
      verticals += a.kind == ArcKind::Vertical;
      twists += a.kind == ArcKind::Twist;
      covered += a.edge_count;
    }
    CHECK(bridges == 2 * b);
    CHECK(verticals == n + 1);
    CHECK(twists == 2 * (b * n - (n + 1) / 2));
    CHECK(covered == c.size());
    CHECK(min_clearance(c) > 0.0);
  }
}

TEST_CASE("built plat: arcs tile the curve in order") {
  const PolyCurve c = build_plat(make_alternating_jm_spec(3, 13, 3), 16);
  std::size_t next = c.arcs().front().first_edge;
  for (const ArcTag& a : c.arcs()) {
    CHECK(a.first_edge == next % c.size());
    next = a.first_edge + a.edge_count;
  }
  CHECK(next % c.size() == c.arcs().front().first_edge);
}

TEST_CASE("verify claims at t = 3") {
  const auto checks = verify_claims(3, 128);
  REQUIRE(checks.size() == 6);
  for (const ClaimCheck& c : checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
  CHECK(checks[0].measured == doctest::Approx(helix_ratio_bound(3)).epsilon(5e-3));
}

TEST_CASE("verify claims detects an overwound helix") {
  const HelixGenerator overwound = [](int t, int samples) { return helix_polyline(4 * t, samples); };
  const auto checks = verify_claims(3, 64, overwound);
  CHECK_FALSE(checks[0].pass);
}

TEST_CASE("arc polylines realize nominal lengths") {
  for (int samples : {16, 128}) {
    const PolyCurve c = build_plat(make_alternating_jm_spec(3, 13, 3), samples);
    for (const ArcTag& a : c.arcs()) {
      double len = 0.0;
      for (std::size_t k = 0; k < a.edge_count; ++k) len += c.edge_length((a.first_edge + k) % c.size());
      const double nominal = a.kind == ArcKind::Bridge ? M_PI / 2
                             : a.kind == ArcKind::Vertical ? 1.0
                                                           : std::hypot(M_PI * a.half_twists / 2, 1.0);
      CHECK(a.nominal_length == doctest::Approx(nominal));
      CHECK(std::abs(len - nominal) / nominal <= (samples == 16 ? 1e-2 : 1e-4));
    }
  }
}
