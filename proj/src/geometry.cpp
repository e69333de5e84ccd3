#include "billiard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "billiard/errors.hpp"
#include "json.hpp"

namespace billiard {

namespace {

constexpr double kEclipseTol = 1e-12;

void check_basic(std::span<const Disk> disks) {
  if (disks.size() < 3)
    throw ConfigError("obstacle system requires at least 3 disks, got " +
                      std::to_string(disks.size()));
  for (std::size_t i = 0; i < disks.size(); ++i)
    if (!(disks[i].radius > 0.0))
      throw ConfigError("disk " + std::to_string(i + 1) +
                        " has nonpositive radius");
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      const double gap = norm(disks[j].center - disks[i].center) -
                         disks[i].radius - disks[j].radius;
      if (!(gap > 0.0))
        throw ConfigError("disks " + std::to_string(i + 1) + " and " +
                          std::to_string(j + 1) + " overlap (gap " +
                          format_g17(gap) + ")");
    }
}

}  // namespace

double hull_signed_distance(Vec2 p, const Disk& a, const Disk& b) {
  // Minimize h(t) = |p - c(t)| - r(t) over t in [0,1], where c(t), r(t)
  // interpolate the two disks. h is convex; the stationary point solves
  // (t|d|^2 - u.d) = dr * |u - t d|, a quadratic in t.
  const Vec2 d = b.center - a.center;
  const Vec2 u = p - a.center;
  const double dr = b.radius - a.radius;
  const double dd = norm2(d);

  auto value = [&](double t) { return norm(u - d * t) - (a.radius + t * dr); };

  double best = std::min(value(0.0), value(1.0));
  if (dr == 0.0) {
    const double t = std::clamp(dot(u, d) / dd, 0.0, 1.0);
    return std::min(best, value(t));
  }

  const double ud = dot(u, d);
  const double qa = dd * dd - dr * dr * dd;
  const double qb = -2.0 * ud * (dd - dr * dr);
  const double qc = ud * ud - dr * dr * norm2(u);
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc >= 0.0 && qa != 0.0) {
    const double sq = std::sqrt(disc);
    for (double t : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
      if (t <= 0.0 || t >= 1.0) continue;
      // Keep only roots of the unsquared equation (matching signs).
      const double lhs = t * dd - ud;
      if (lhs * dr < 0.0) continue;
      best = std::min(best, value(t));
    }
  }
  return best;
}

ValidationReport validate_no_eclipse(std::span<const Disk> disks) {
  check_basic(disks);
  ValidationReport report;
  report.worst_clearance = std::numeric_limits<double>::infinity();
  const int n = static_cast<int>(disks.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        const double clearance =
            hull_signed_distance(disks[l].center, disks[i], disks[j]) -
            disks[l].radius;
        report.worst_clearance = std::min(report.worst_clearance, clearance);
        if (clearance <= kEclipseTol)
          report.violations.push_back({i + 1, j + 1, l + 1});
      }
  report.pass = report.violations.empty();
  return report;
}

double min_separation(std::span<const Disk> disks) {
  check_basic(disks);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j)
      gap = std::min(gap, norm(disks[j].center - disks[i].center) -
                              disks[i].radius - disks[j].radius);
  return gap;
}

BoundaryPoint boundary_point(const Disk& disk, double angle) {
  const Vec2 normal{std::cos(angle), std::sin(angle)};
  return {disk.center + normal * disk.radius, normal, 1.0 / disk.radius};
}

ObstacleSystem::ObstacleSystem(std::vector<Disk> disks)
    : disks_(std::move(disks)) {
  const auto report = validate_no_eclipse(disks_);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "no-eclipse condition failed for triples:";
    for (const auto& t : report.violations)
      msg << " (" << t[0] << "," << t[1] << "," << t[2] << ")";
    throw ConfigError(msg.str());
  }
  min_gap_ = min_separation(disks_);
}

double ObstacleSystem::pair_gap(int i, int j) const {
  return norm(disk(j).center - disk(i).center) - disk(i).radius -
         disk(j).radius;
}

std::uint64_t ObstacleSystem::geometry_hash() const {
  std::string canon;
  for (const Disk& d : disks_) {
    canon += format_g17(d.center.x);
    canon += ',';
    canon += format_g17(d.center.y);
    canon += ',';
    canon += format_g17(d.radius);
    canon += ';';
  }
  return fnv1a64(canon);
}

ObstacleSystem load_system_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid geometry JSON: ") + e.what());
  }
  if (!doc.contains("disks") || !doc["disks"].is_array())
    throw ConfigError("geometry JSON must contain a \"disks\" array");
  std::vector<Disk> disks;
  for (const auto& entry : doc["disks"]) {
    if (!entry.contains("center") || !entry.contains("radius") ||
        !entry["center"].is_array() || entry["center"].size() != 2)
      throw ConfigError(
          "each disk needs \"center\": [x, y] and \"radius\": r");
    Disk d;
    d.center = {entry["center"][0].get<double>(),
                entry["center"][1].get<double>()};
    d.radius = entry["radius"].get<double>();
    disks.push_back(d);
  }
  return ObstacleSystem(std::move(disks));
}

ObstacleSystem load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_system_from_json(buf.str());
}

std::string system_to_json(const ObstacleSystem& system) {
  nlohmann::json doc;
  doc["disks"] = nlohmann::json::array();
  for (const Disk& d : system.disks())
    doc["disks"].push_back(
        {{"center", {d.center.x, d.center.y}}, {"radius", d.radius}});
  return doc.dump(2) + "\n";
}

ObstacleSystem default_system() {
  return ObstacleSystem({
      {{0.0, 0.0}, 1.0},
      {{2.4, 0.0}, 0.9},
      {{0.806, 2.89}, 1.1},
  });
}

}  // namespace billiard
