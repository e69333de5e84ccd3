#pragma once

#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/orbit.hpp"

namespace billiard {

// Transverse linearization of the return map along a periodic ray, in
// (displacement, slope) coordinates with the dispersing sign convention.
struct StabilityData {
  Mat2 monodromy;          // full-period product, det 1
  double lambda_u = 0.0;   // expanding eigenvalue modulus, > 1
  double det_factor = 0.0; // |det(I - P)| = |2 - trace| for det-1 2x2
  double g_sum = 0.0;      // cycle sum of per-bounce expansion weights
};

// Free flight of a diverging wavefront: B -> B / (1 + t B).
double propagate_curvature(double curvature, double flight_length);

// Dispersing reflection: B -> B + 2 kappa / cos(phi).
double reflect_curvature(double curvature, double boundary_curvature,
                         double cos_incidence);

// Reflection composed with the incoming flight of length t.
Mat2 bounce_matrix(double flight_length, double boundary_curvature,
                   double cos_incidence);

StabilityData poincare_map(const ObstacleSystem& system, const Orbit& orbit,
                           int g_memory = 40);

// Per-bounce expansion weights log(1 + t_j B_j) of the invariant unstable
// wavefront, converged by iterating the curvature map `memory` bounces
// around the cycle from a flat seed.
std::vector<double> orbit_g_weights(const ObstacleSystem& system,
                                    const Orbit& orbit, int memory = 40,
                                    double seed_curvature = 0.0);

// Same weight from a finite past window only: the reflecting chain pinned
// to `context` approximates the true ray, and the curvature is converged
// along the `memory` bounces preceding `index`.
double g_weight(const ObstacleSystem& system, const Word& context,
                int index, int memory, double seed_curvature = 0.0);

}  // namespace billiard
