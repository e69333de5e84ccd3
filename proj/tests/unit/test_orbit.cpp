#include <algorithm>
#include <cmath>

#include "billiard/errors.hpp"
#include "billiard/orbit.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace billiard;
using billiard::testing::asymmetric_system;
using billiard::testing::symmetric_system;

namespace {

// On the symmetric system the three-bounce ray is a one-parameter family by
// symmetry: rotate all three contact points by the same offset about their
// centers, measured from the inward (centroid-facing) direction.
double symmetric_triangle_length(double offset) {
  const auto& system = symmetric_system();
  const Vec2 centroid{3.0, std::sqrt(3.0)};
  std::vector<Vec2> pts;
  for (int i = 1; i <= 3; ++i) {
    const Disk& d = system.disk(i);
    const Vec2 dir = normalized(centroid - d.center);
    const double base = std::atan2(dir.y, dir.x);
    pts.push_back(boundary_point(d, base + offset).point);
  }
  double len = 0.0;
  for (int j = 0; j < 3; ++j) len += norm(pts[(j + 1) % 3] - pts[j]);
  return len;
}

// Independent minimizer: cyclic coordinate descent with golden section.
double coordinate_descent_length(const ObstacleSystem& system,
                                 const Word& word) {
  std::vector<double> angles(word.size());
  for (std::size_t j = 0; j < word.size(); ++j) {
    // Aim each point at the centroid of the other disks' centers.
    Vec2 target{0, 0};
    for (int l = 1; l <= system.size(); ++l)
      if (l != word[j]) target = target + system.disk(l).center;
    const Vec2 dir =
        target / (system.size() - 1.0) - system.disk(word[j]).center;
    angles[j] = std::atan2(dir.y, dir.x);
  }
  double len = cycle_length(system, word, angles);
  for (int sweep = 0; sweep < 400; ++sweep) {
    double moved = 0.0;
    for (std::size_t j = 0; j < word.size(); ++j) {
      auto slice = [&](double theta) {
        auto trial = angles;
        trial[j] = theta;
        return cycle_length(system, word, trial);
      };
      const double best = golden_section_min(slice, angles[j] - 0.7,
                                             angles[j] + 0.7, 1e-13, 600);
      moved = std::max(moved, std::abs(best - angles[j]));
      angles[j] = best;
    }
    const double next = cycle_length(system, word, angles);
    if (std::abs(next - len) < 1e-14 && moved < 1e-11) {
      len = next;
      break;
    }
    len = next;
  }
  return len;
}

}  // namespace

TEST_CASE("symmetric two-bounce ray has length 8") {
  const Orbit orbit = solve_cycle(symmetric_system(), {{1, 2}});
  CHECK(std::abs(orbit.length - 8.0) < 1e-9);
  // Reflection points on the line between the centers.
  for (const Vec2& p : orbit.points) CHECK(std::abs(p.y) < 1e-10);
  CHECK(orbit.gradient_residual < 1e-12);
}

TEST_CASE("symmetric triangle ray matches the closed form and a 1-D oracle") {
  const Orbit orbit = solve_cycle(symmetric_system(), {{1, 2, 3}});
  const double closed_form = 18.0 - 3.0 * std::sqrt(3.0);
  CHECK(std::abs(orbit.length - closed_form) < 1e-9);

  const double offset =
      golden_section_min(symmetric_triangle_length, -0.5, 0.5, 1e-13, 600);
  CHECK(std::abs(symmetric_triangle_length(offset) - orbit.length) < 1e-9);
}

TEST_CASE("1213 length agrees with a coordinate-descent oracle") {
  const Word word{1, 2, 1, 3};
  const Orbit orbit = solve_cycle(symmetric_system(), {word});
  const double oracle = coordinate_descent_length(symmetric_system(), word);
  CHECK(std::abs(orbit.length - oracle) < 1e-9);
}

TEST_CASE("solved rays pass admissibility; perturbed rays fail") {
  const auto& system = asymmetric_system();
  for (const Word& word : std::vector<Word>{Word{1, 2}, Word{1, 2, 3}, Word{1, 2, 1, 3}}) {
    Orbit orbit = solve_cycle(system, {word});
    const auto report = verify_admissibility(system, orbit);
    CHECK(report.ok);
    CHECK(report.worst_clearance > 0.0);
    CHECK(report.worst_reflection_residual < 1e-10);

    Orbit broken = orbit;
    broken.angles[0] += 0.1;
    broken.points.clear();
    for (std::size_t j = 0; j < broken.angles.size(); ++j)
      broken.points.push_back(
          boundary_point(system.disk(word[j]), broken.angles[j]).point);
    CHECK_FALSE(verify_admissibility(system, broken).ok);
  }
}

TEST_CASE("two-bounce clearance stays positive") {
  const auto& system = asymmetric_system();
  const Orbit orbit = solve_cycle(system, {{1, 2}});
  const auto report = verify_admissibility(system, orbit);
  CHECK(report.worst_clearance > 0.0);
}

TEST_CASE("iterated rays") {
  const Orbit orbit = solve_cycle(symmetric_system(), {{1, 2}});
  const auto twice = iterate_orbit(orbit, 2);
  CHECK(twice.word == Word{1, 2, 1, 2});
  CHECK(twice.period == doctest::Approx(16.0).epsilon(1e-12));
  const auto once = iterate_orbit(orbit, 1);
  CHECK(once.word == orbit.necklace.word);
  CHECK(once.period == orbit.length);
  const auto thrice = iterate_orbit(orbit, 3);
  CHECK(std::abs(thrice.period - 3.0 * orbit.length) < 1e-14);
  CHECK_THROWS_AS(iterate_orbit(orbit, 0), DomainError);
}

TEST_CASE("length Hessian is positive definite at solutions") {
  const auto& system = asymmetric_system();
  for (const Word& word : std::vector<Word>{Word{1, 2}, Word{1, 2, 3}, Word{1, 2, 1, 3},
                          Word{1, 2, 3, 1, 3, 2}}) {
    const Orbit orbit = solve_cycle(system, {word});
    for (double ev : cycle_hessian_eigenvalues(system, orbit))
      CHECK(ev > 0.0);
  }
}

TEST_CASE("random tangential perturbations never shorten the ray") {
  const auto& system = asymmetric_system();
  const Word word{1, 2, 1, 3, 2, 3};
  const Orbit orbit = solve_cycle(system, {word});
  std::uint64_t rng = 123;
  for (int trial = 0; trial < 100; ++trial) {
    auto angles = orbit.angles;
    for (double& a : angles)
      a += 1e-4 * (2.0 * u64_to_unit(splitmix64(rng)) - 1.0);
    CHECK(cycle_length(system, word, angles) >= orbit.length - 1e-10);
  }
}

TEST_CASE("rotation invariance of the solved point set") {
  const auto& system = asymmetric_system();
  const Word word{1, 2, 1, 3};
  const Orbit base = solve_cycle(system, {word});
  for (int shift = 1; shift < 4; ++shift) {
    const Word rotated = rotate_word(word, shift);
    if (!is_cyclically_admissible(rotated)) continue;
    const Orbit other = solve_cycle(system, {rotated});
    for (std::size_t j = 0; j < word.size(); ++j) {
      const Vec2 diff = other.points[j] - base.points[(j + shift) % 4];
      CHECK(norm(diff) < 1e-9);
    }
  }
}

TEST_CASE("reversal preserves length") {
  const auto& system = asymmetric_system();
  for (const Word& word : std::vector<Word>{Word{1, 2, 3}, Word{1, 2, 1, 3, 2, 3}}) {
    const Orbit fwd = solve_cycle(system, {word});
    const Orbit bwd = solve_cycle(system, {reverse_word(word)});
    CHECK(std::abs(fwd.length - bwd.length) < 1e-12);
  }
}

TEST_CASE("solver rejects bad input") {
  CHECK_THROWS_AS(solve_cycle(symmetric_system(), {{1, 1}}), DomainError);
  CHECK_THROWS_AS(solve_cycle(symmetric_system(), {{1, 2, 1}}), DomainError);
  CHECK_THROWS_AS(solve_cycle(symmetric_system(), {{1, 4}}), DomainError);
}

TEST_CASE("multi-start agreement holds for every short necklace") {
  const auto& system = asymmetric_system();
  for (int m = 2; m <= 6; ++m)
    for (const auto& necklace : enumerate_necklaces(3, m)) {
      const Orbit orbit = solve_cycle(system, necklace);
      CHECK(orbit.gradient_residual < 1e-12);
    }
}

TEST_CASE("open chains: end segments leave their disks radially") {
  const auto& system = asymmetric_system();
  const Chain chain = solve_chain(system, {1, 2, 3, 1, 2});
  REQUIRE(chain.points.size() == 5);
  const Vec2 e0 = normalized(chain.points[1] - chain.points[0]);
  const Vec2 nu0 = normalized(chain.points[0] - system.disk(1).center);
  CHECK(std::abs(std::abs(dot(e0, nu0)) - 1.0) < 1e-9);
  const Vec2 e3 = normalized(chain.points[4] - chain.points[3]);
  const Vec2 nu4 = normalized(chain.points[4] - system.disk(2).center);
  CHECK(std::abs(std::abs(dot(e3, nu4)) - 1.0) < 1e-9);
  CHECK(chain.gradient_residual < 1e-12);
}
