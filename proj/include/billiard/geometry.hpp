#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "billiard/numerics.hpp"

namespace billiard {

struct Disk {
  Vec2 center;
  double radius = 0.0;  // > 0
};

// Result of the no-eclipse check: the convex hull of every disk pair must
// avoid every third disk. Violations are (i, j, l) triples, 1-based, i < j.
struct ValidationReport {
  bool pass = false;
  std::vector<std::array<int, 3>> violations;
  // Smallest signed clearance between a pair hull and a third disk; > 0 iff
  // the configuration passes.
  double worst_clearance = 0.0;
};

struct BoundaryPoint {
  Vec2 point;
  Vec2 normal;        // outward unit normal
  double curvature;   // 1 / radius
};

// Signed distance from a point to the convex hull of two disks (union of
// the interpolated disks c(t), r(t), t in [0,1]); negative inside.
double hull_signed_distance(Vec2 p, const Disk& a, const Disk& b);

ValidationReport validate_no_eclipse(std::span<const Disk> disks);

double min_separation(std::span<const Disk> disks);

BoundaryPoint boundary_point(const Disk& disk, double angle);

// Validated scatterer configuration; immutable after construction.
class ObstacleSystem {
public:
  // Throws ConfigError when fewer than 3 disks, a nonpositive radius, an
  // overlap, or an eclipse-condition failure is found.
  explicit ObstacleSystem(std::vector<Disk> disks);

  int size() const { return static_cast<int>(disks_.size()); }
  const Disk& disk(int index_1based) const { return disks_[index_1based - 1]; }
  std::span<const Disk> disks() const { return disks_; }
  double min_gap() const { return min_gap_; }
  double pair_gap(int i, int j) const;

  // Hash over disk centers/radii (17 significant digits); identifies the
  // geometry for spectrum caching.
  std::uint64_t geometry_hash() const;

private:
  std::vector<Disk> disks_;
  double min_gap_ = 0.0;
};

ObstacleSystem load_system_from_json(const std::string& text);
ObstacleSystem load_system_file(const std::string& path);
std::string system_to_json(const ObstacleSystem& system);

// Three disks with radii 1.0 / 0.9 / 1.1 on a scalene triangle; gaps small
// enough that long shadowing orbits stay numerically resolvable.
ObstacleSystem default_system();

}  // namespace billiard
