#pragma once

#include <cstdint>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/symbolic.hpp"

namespace billiard {

// Solved periodic reflecting ray for one necklace.
struct Orbit {
  Necklace necklace;
  std::vector<double> angles;   // boundary parameter per reflection
  std::vector<Vec2> points;
  double length = 0.0;
  double gradient_residual = 0.0;
  int solver_iterations = 0;
};

struct SolveOptions {
  double tol = 1e-12;           // on the max-norm of the length gradient
  int max_iterations = 200;
  int starts = 5;               // multi-start agreement enforces uniqueness
  double jitter = 0.3;          // radians
  double agreement_tol = 1e-9;  // max point distance between starts
  std::uint64_t seed = 0;
};

struct AdmissibilityReport {
  bool ok = false;
  // Smallest distance from an open segment to a non-endpoint disk.
  double worst_clearance = 0.0;
  // Largest componentwise deviation from the reflection law.
  double worst_reflection_residual = 0.0;
};

// Critical point of the cyclic length functional over boundary angles.
// Throws SolverError on non-convergence or multi-start disagreement and
// GeometryError when the result fails admissibility.
Orbit solve_cycle(const ObstacleSystem& system, const Necklace& necklace,
                  const SolveOptions& options = {});

AdmissibilityReport verify_admissibility(const ObstacleSystem& system,
                                         const Orbit& orbit);

struct IteratedRay {
  Word word;       // necklace word repeated k times
  double period;   // k * primitive length
};

IteratedRay iterate_orbit(const Orbit& orbit, int k);

// Open reflecting chain pinned to a fixed itinerary, endpoints free on
// their disks; used for finite-memory approximations of the return-length
// observable.
struct Chain {
  Word word;
  std::vector<double> angles;
  std::vector<Vec2> points;
  double length = 0.0;          // total polyline length
  double gradient_residual = 0.0;
};

Chain solve_chain(const ObstacleSystem& system, const Word& word,
                  const SolveOptions& options = {});

// Cyclic length functional value at given angles (exposed for tests).
double cycle_length(const ObstacleSystem& system, const Word& word,
                    const std::vector<double>& angles);

// Eigenvalues of the length Hessian at the solution (diagnostic; positive
// definiteness is expected for dispersing geometry but not enforced).
std::vector<double> cycle_hessian_eigenvalues(const ObstacleSystem& system,
                                              const Orbit& orbit);

}  // namespace billiard
