#pragma once

#include <complex>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/orbit.hpp"
#include "billiard/store.hpp"

namespace billiard {

// Weighted sum over all period-n points of the shift: each primitive
// m-necklace with m | n contributes m points of total length (n/m) * T.
double partition_sum(const SpectrumDB& db, int n, double s);

struct PressureEstimate {
  double value = 0.0;
  double extrapolation_error = 0.0;
};

// Ratio estimator log(Z_n / Z_{n-1}); the ratio form cancels the
// subexponential prefactors of the partition sums.
PressureEstimate pressure(const SpectrumDB& db, double s, int n_max);

struct PressureCurve {
  std::vector<double> s_values;
  std::vector<double> pressures;
  std::vector<double> errors;
  int n_used = 0;
  double extrapolation_error = 0.0;  // max over samples
  // Smallest second difference of the sampled curve (convexity diagnostic).
  double min_second_difference = 0.0;
};

PressureCurve pressure_curve(const SpectrumDB& db,
                             const std::vector<double>& s_values, int n_max);

// Root of s -> pressure(-s): exponential growth rate of the census by
// geometric length.
double flow_entropy(const SpectrumDB& db, int n_max);

struct VarianceEstimate {
  double from_pressure = 0.0;  // 2 P''(0), central differences + Richardson
  double from_orbits = 0.0;    // pair-difference variance of lengths / n
  double agreement = 0.0;      // relative difference
  bool step_warning = false;   // ds too coarse to resolve the curvature
};

VarianceEstimate variance_beta2(const SpectrumDB& db, int n_max,
                                double ds = 1e-2);

// Partition sum on the product shift (double sum over pairs); for cross
// checking the additivity P(s,-s) = P(s) + P(-s).
double partition_sum_pair(const SpectrumDB& db, int n, double s);

struct LatticeRow {
  int k = 0;
  double length = 0.0;  // period of the alternating-family orbit
  double gap = 0.0;     // T_k - T_{k-1} - 4 d
};

struct LatticeReport {
  std::vector<LatticeRow> rows;  // k = 2 .. k_max (k = 1 solved internally)
  double d = 0.0;                // dist(K_1, K_2)
  double fitted_delta = 0.0;     // geometric decay rate of the gaps
  double fit_r2 = 0.0;
  bool complete = true;          // false when a long word failed to solve
};

// Lengths of the orbit family (2 1)^{2k} (3 1); their successive gaps decay
// geometrically, which rules out lattice-supported length spectra.
LatticeReport lattice_diagnostic(const ObstacleSystem& system, int k_max,
                                 const SolveOptions& options = {});

// Transfer operator with complex weight exp(i t f - h0) truncated to
// admissible k-blocks; f on a block is the first leg of the open chain
// pinned to the block's obstacles.
class FiniteMemoryOperator {
public:
  FiniteMemoryOperator(const ObstacleSystem& system, int memory,
                       const SolveOptions& options = {});

  int dimension() const { return static_cast<int>(blocks_.size()); }
  int memory() const { return memory_; }
  const std::vector<double>& block_lengths() const { return block_f_; }

  // Spectral radius by power iteration on the norm growth rate.
  double spectral_radius(double t, double tol = 1e-12,
                         int max_iter = 20000) const;

private:
  int kappa0_;
  int memory_;
  double h0_;
  std::vector<Word> blocks_;
  std::vector<double> block_f_;
  // Flattened preimage lists: state i has kappa0-1 predecessors.
  std::vector<int> preimages_;
};

double complex_spectral_radius(const ObstacleSystem& system, double t,
                               int memory, const SolveOptions& options = {});

// Number of census rays with length <= x.
std::int64_t census_length_count(const SpectrumDB& db, double x);

// Largest x at which the census is provably complete: any ray with more
// than n_max reflections is longer than (n_max + 1) * min_gap.
double census_coverage_bound(const ObstacleSystem& system,
                             const SpectrumDB& db);

}  // namespace billiard
