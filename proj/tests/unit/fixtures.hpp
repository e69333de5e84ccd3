#pragma once

#include <cmath>
#include <stdexcept>

#include "billiard/geometry.hpp"
#include "billiard/store.hpp"

namespace billiard::testing {

// Unit disks on an equilateral triangle of side 6: the two- and three-bounce
// rays have closed forms, used for calibration.
inline const ObstacleSystem& symmetric_system() {
  static const ObstacleSystem system({
      {{0.0, 0.0}, 1.0},
      {{6.0, 0.0}, 1.0},
      {{3.0, 3.0 * std::sqrt(3.0)}, 1.0},
  });
  return system;
}

inline const ObstacleSystem& asymmetric_system() {
  static const ObstacleSystem system = default_system();
  return system;
}

// Shared census for the slower statistical tests; built once per run.
inline const SpectrumDB& asymmetric_db(int n_max = 10) {
  static const SpectrumDB db = build_spectrum(asymmetric_system(), 10, 2);
  if (n_max > db.n_max) throw std::logic_error("fixture census too small");
  return db;
}

}  // namespace billiard::testing
