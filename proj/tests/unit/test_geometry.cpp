#include <algorithm>
#include <cmath>

#include "billiard/errors.hpp"
#include "billiard/geometry.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace billiard;

namespace {

std::vector<Disk> equilateral_unit_disks(double side) {
  return {{{0.0, 0.0}, 1.0},
          {{side, 0.0}, 1.0},
          {{side / 2.0, side * std::sqrt(3.0) / 2.0}, 1.0}};
}

// Golden-section oracle for the hull distance (the objective is convex).
double hull_distance_oracle(Vec2 p, const Disk& a, const Disk& b) {
  auto value = [&](double t) {
    const Vec2 c = a.center + (b.center - a.center) * t;
    const double r = a.radius + t * (b.radius - a.radius);
    return norm(p - c) - r;
  };
  const double t = golden_section_min(value, 0.0, 1.0, 1e-14, 600);
  return std::min({value(0.0), value(1.0), value(t)});
}

}  // namespace

TEST_CASE("no-eclipse passes for spread equilateral disks") {
  const auto disks = equilateral_unit_disks(6.0);
  const auto report = validate_no_eclipse(disks);
  CHECK(report.pass);
  CHECK(report.violations.empty());
  // Closest approach: third center to the hull of the opposite pair.
  CHECK(report.worst_clearance ==
        doctest::Approx(6.0 * std::sqrt(3.0) / 2.0 - 2.0).epsilon(1e-12));
}

TEST_CASE("no-eclipse fails for collinear disks with the offending triple") {
  const std::vector<Disk> disks = {
      {{0.0, 0.0}, 1.0}, {{4.0, 0.0}, 1.0}, {{8.0, 0.0}, 1.0}};
  const auto report = validate_no_eclipse(disks);
  CHECK_FALSE(report.pass);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0] == std::array<int, 3>{1, 3, 2});
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(
      validate_no_eclipse(std::vector<Disk>{{{0, 0}, 1}, {{4, 0}, 1}}),
      ConfigError);
  CHECK_THROWS_AS(validate_no_eclipse(std::vector<Disk>{
                      {{0, 0}, 1}, {{1.5, 0}, 1}, {{8, 0}, 1}}),
                  ConfigError);
  CHECK_THROWS_AS(validate_no_eclipse(std::vector<Disk>{
                      {{0, 0}, -1}, {{4, 0}, 1}, {{8, 0}, 1}}),
                  ConfigError);
}

TEST_CASE("hull distance matches a 1-D minimization oracle") {
  std::uint64_t rng = 42;
  for (int trial = 0; trial < 200; ++trial) {
    const Disk a{{u64_to_unit(splitmix64(rng)) * 10.0 - 5.0,
                  u64_to_unit(splitmix64(rng)) * 10.0 - 5.0},
                 0.2 + u64_to_unit(splitmix64(rng)) * 2.0};
    Disk b = a;
    while (norm(b.center - a.center) <= a.radius + b.radius + 0.1) {
      b = Disk{{u64_to_unit(splitmix64(rng)) * 20.0 - 10.0,
                u64_to_unit(splitmix64(rng)) * 20.0 - 10.0},
               0.2 + u64_to_unit(splitmix64(rng)) * 2.0};
    }
    const Vec2 p{u64_to_unit(splitmix64(rng)) * 24.0 - 12.0,
                 u64_to_unit(splitmix64(rng)) * 24.0 - 12.0};
    CHECK(hull_signed_distance(p, a, b) ==
          doctest::Approx(hull_distance_oracle(p, a, b)).epsilon(1e-9));
  }
}

TEST_CASE("min separation") {
  CHECK(min_separation(equilateral_unit_disks(6.0)) == doctest::Approx(4.0));
  const std::vector<Disk> disks = {
      {{0.0, 0.0}, 1.0}, {{5.0, 0.0}, 1.0}, {{0.0, 7.0}, 1.0}};
  CHECK(min_separation(disks) == doctest::Approx(3.0));
  CHECK_THROWS_AS(min_separation(std::vector<Disk>{
                      {{0, 0}, 1}, {{1.5, 0}, 1}, {{0, 7}, 1}}),
                  ConfigError);
}

TEST_CASE("boundary points") {
  const Disk unit{{0.0, 0.0}, 1.0};
  auto bp = boundary_point(unit, 0.0);
  CHECK(bp.point.x == doctest::Approx(1.0));
  CHECK(bp.point.y == doctest::Approx(0.0));
  CHECK(bp.normal.x == doctest::Approx(1.0));
  CHECK(bp.curvature == doctest::Approx(1.0));

  const Disk two{{3.0, 0.0}, 2.0};
  bp = boundary_point(two, M_PI);
  CHECK(bp.point.x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bp.point.y == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(bp.normal.x == doctest::Approx(-1.0));
  CHECK(bp.curvature == doctest::Approx(0.5));

  // Periodicity and the on-circle / unit-normal invariants.
  std::uint64_t rng = 7;
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = u64_to_unit(splitmix64(rng)) * 20.0 - 10.0;
    const Disk d{{u64_to_unit(splitmix64(rng)) * 4.0,
                  u64_to_unit(splitmix64(rng)) * 4.0},
                 0.3 + u64_to_unit(splitmix64(rng))};
    const auto p1 = boundary_point(d, theta);
    const auto p2 = boundary_point(d, theta + 2.0 * M_PI);
    CHECK(norm(p1.point - p2.point) < 1e-14 * (1.0 + norm(p1.point)));
    CHECK(std::abs(norm(p1.point - d.center) - d.radius) < 1e-14);
    CHECK(std::abs(norm(p1.normal) - 1.0) < 1e-14);
  }
}

TEST_CASE("validation is permutation invariant") {
  auto disks = equilateral_unit_disks(6.0);
  const bool base = validate_no_eclipse(disks).pass;
  std::swap(disks[0], disks[2]);
  CHECK(validate_no_eclipse(disks).pass == base);

  std::vector<Disk> bad = {
      {{0.0, 0.0}, 1.0}, {{4.0, 0.0}, 1.0}, {{8.0, 0.0}, 1.0}};
  std::swap(bad[0], bad[1]);
  CHECK_FALSE(validate_no_eclipse(bad).pass);
}

TEST_CASE("segments between boundary points avoid third disks when (H) holds") {
  const auto& system = billiard::testing::asymmetric_system();
  std::uint64_t rng = 11;
  for (int trial = 0; trial < 300; ++trial) {
    const int i = 1 + static_cast<int>(splitmix64(rng) % system.size());
    int j = i;
    while (j == i) j = 1 + static_cast<int>(splitmix64(rng) % system.size());
    const auto pi =
        boundary_point(system.disk(i), u64_to_unit(splitmix64(rng)) * 2 * M_PI);
    const auto pj =
        boundary_point(system.disk(j), u64_to_unit(splitmix64(rng)) * 2 * M_PI);
    for (int l = 1; l <= system.size(); ++l) {
      if (l == i || l == j) continue;
      // Distance from the segment to the third disk center.
      const Vec2 d = pj.point - pi.point;
      const double t = std::clamp(
          dot(system.disk(l).center - pi.point, d) / norm2(d), 0.0, 1.0);
      const double dist = norm(system.disk(l).center - (pi.point + d * t));
      CHECK(dist > system.disk(l).radius);
    }
  }
}

TEST_CASE("geometry json round trip and validation on load") {
  const auto& system = billiard::testing::asymmetric_system();
  const auto loaded = load_system_from_json(system_to_json(system));
  CHECK(loaded.geometry_hash() == system.geometry_hash());
  CHECK(loaded.min_gap() == doctest::Approx(system.min_gap()).epsilon(1e-15));

  CHECK_THROWS_AS(load_system_from_json("{\"disks\": ["
                                        "{\"center\":[0,0],\"radius\":1},"
                                        "{\"center\":[4,0],\"radius\":1},"
                                        "{\"center\":[8,0],\"radius\":1}]}"),
                  ConfigError);
  CHECK_THROWS_AS(load_system_from_json("not json"), ConfigError);
  CHECK_THROWS_AS(load_system_from_json("{\"disks\": 3}"), ConfigError);
}
