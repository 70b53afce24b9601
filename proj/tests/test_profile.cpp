#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qtm/profile.hpp"

using namespace qtm;

TEST_CASE("tabulated profile interpolates linearly") {
  const auto p = load_tabulated({{0.0, 0.0, 1.0}, {1.0, 1.0, 1.0}});
  CHECK(p.potential(0.5) == doctest::Approx(0.5));
  CHECK(p.potential(0.25) == doctest::Approx(0.25));
  CHECK(p.v_left == 0.0);
  CHECK(p.v_right == 1.0);
  CHECK(p.mass(0.7) == doctest::Approx(1.0));
}

TEST_CASE("tabulated profile rejects degenerate input") {
  CHECK_THROWS_AS(load_tabulated({{0.0, 0.0, 1.0}}), ConfigError);
  CHECK_THROWS_WITH_AS(load_tabulated({{0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}}),
                       doctest::Contains("row 2"), ConfigError);
  CHECK_THROWS_WITH_AS(load_tabulated({{0.0, 0.0, 1.0}, {0.0, 1.0, 1.0}}),
                       doctest::Contains("row 2"), ConfigError);
}

TEST_CASE("tabulated text format: comments, blanks, malformed lines") {
  std::istringstream good("# header\n0 0 1\n\n0.5 0.3 1.0  # inline comment\n1 1 1\n");
  const auto rows = parse_tabulated(good);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].potential == doctest::Approx(0.3));

  std::istringstream missing("0 0 1\n0.5 0.3\n");
  CHECK_THROWS_WITH_AS(parse_tabulated(missing), doctest::Contains("line 2"), ConfigError);
  std::istringstream extra("0 0 1 9\n");
  CHECK_THROWS_AS(parse_tabulated(extra), ConfigError);
}

TEST_CASE("discretizing a constant potential samples the constant everywhere") {
  const auto profile = make_callback_profile([](double) { return 3.25; },
                                             [](double) { return 1.0; }, -2.0, 2.0, 3.25, 3.25);
  const auto seg = discretize(profile, 4, 0.05);
  CHECK(seg.region_count() == 9);
  for (double v : seg.potentials) CHECK(v == doctest::Approx(3.25));
}

TEST_CASE("even potentials discretize to palindromic region values") {
  const auto profile = make_gaussian(-2.0, 2.0);
  const auto seg = discretize(profile, 5, 0.01);
  const auto& v = seg.potentials;
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i] == doctest::Approx(v[v.size() - 1 - i]).epsilon(1e-12));
  }
}

TEST_CASE("rectangular barrier discretization reproduces the plateau layout") {
  const auto profile = make_rectangular(2.0, 2.42);
  const auto seg = discretize(profile, 3, 0.02);
  CHECK(seg.region_count() == 7);
  CHECK(seg.potentials.front() == 0.0);
  CHECK(seg.potentials.back() == 0.0);
  for (int r = 1; r < seg.region_count() - 1; ++r) {
    CHECK(seg.potentials[r] == doctest::Approx(2.0));
  }
  // uniform junction placement, edge to edge
  CHECK(seg.breakpoints.front() == doctest::Approx(-1.21));
  CHECK(seg.breakpoints.back() == doctest::Approx(1.21));
  const double spacing = seg.breakpoints[2] - seg.breakpoints[0];
  CHECK(spacing == doctest::Approx((2.42 - 0.04) / 2.0));
  for (int j = 0; j < seg.junction_count(); ++j) {
    CHECK(seg.breakpoints[2 * j + 1] - seg.breakpoints[2 * j] == doctest::Approx(0.04));
  }
}

TEST_CASE("single junction is centered") {
  const auto profile = make_rectangular(-20.0, 0.05);
  const auto seg = discretize(profile, 1, 0.025);
  CHECK(seg.region_count() == 3);
  CHECK(seg.breakpoints[0] == doctest::Approx(-0.025));
  CHECK(seg.breakpoints[1] == doctest::Approx(0.025));
  CHECK(seg.potentials[1] == doctest::Approx(-20.0));
}

TEST_CASE("oversized junctions are a configuration error naming both values") {
  const auto profile = make_rectangular(1.0, 1.0);
  CHECK_THROWS_WITH_AS(discretize(profile, 5, 0.2), doctest::Contains("0.4"), ConfigError);
  CHECK_THROWS_AS(discretize(profile, 0, 0.01), ConfigError);
  CHECK_THROWS_AS(discretize(profile, 2, -0.1), ConfigError);
}

TEST_CASE("piecewise-constant plateaus aligned with midpoints round-trip exactly") {
  // Plateaus chosen so every region midpoint of a 3-junction layout falls
  // strictly inside one plateau.
  const auto staircase = [](double x) {
    if (x < -0.4) return 1.0;
    if (x < 0.4) return 2.0;
    return 3.0;
  };
  const auto profile = make_callback_profile(staircase, [](double) { return 1.0; }, -1.0, 1.0,
                                             1.0, 3.0);
  // Junction midpoints land at -0.95, 0, 0.95; wave midpoints at -0.475, 0.475.
  const auto seg = discretize(profile, 3, 0.05);
  CHECK(seg.potentials[1] == 1.0);
  CHECK(seg.potentials[2] == 1.0);
  CHECK(seg.potentials[3] == 2.0);
  CHECK(seg.potentials[4] == 3.0);
  CHECK(seg.potentials[5] == 3.0);
}

TEST_CASE("refining the junction count respects the modulus of continuity") {
  // Lipschitz potential with constant 2.
  const auto profile = make_callback_profile([](double x) { return 2.0 * std::tanh(x); },
                                             [](double) { return 1.0; }, -3.0, 3.0,
                                             2.0 * std::tanh(-3.0), 2.0 * std::tanh(3.0));
  const int coarse_count = 6;
  const auto coarse = discretize(profile, coarse_count, 0.01);
  const auto fine = discretize(profile, 2 * coarse_count, 0.01);
  CHECK(fine.potentials.front() == coarse.potentials.front());
  CHECK(fine.potentials.back() == coarse.potentials.back());
  const double coarse_spacing = coarse.breakpoints[2] - coarse.breakpoints[0];
  for (int j = 0; j < coarse.junction_count(); ++j) {
    const double x_old = coarse.breakpoints[2 * j] + coarse.delta_x;
    const double v_old = coarse.potentials[2 * j + 1];
    // nearest new junction midpoint
    double best = 1e300;
    double v_new = 0.0;
    for (int k = 0; k < fine.junction_count(); ++k) {
      const double x_new = fine.breakpoints[2 * k] + fine.delta_x;
      if (std::abs(x_new - x_old) < best) {
        best = std::abs(x_new - x_old);
        v_new = fine.potentials[2 * k + 1];
      }
    }
    CHECK(std::abs(v_new - v_old) <= 2.0 * (coarse_spacing / 2.0) + 1e-12);
  }
}

TEST_CASE("segmented profile invariants are enforced") {
  CHECK_THROWS_AS(SegmentedProfile({0.0}, {0.0, 1.0}, {1.0, 1.0}, 0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(SegmentedProfile({0.0, -1.0}, {0.0, 1.0, 0.0}, {1.0, 1.0, 1.0}, 0.1, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(SegmentedProfile({0.0, 1.0}, {0.0, 1.0, 0.0}, {1.0, 0.0, 1.0}, 0.1, 1.0),
                  ConfigError);
}
