#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "billiard/correlations.hpp"
#include "billiard/store.hpp"

namespace billiard {

// Census lengths organized for the isolation scans.
//
// Every ray and its time reversal have exactly equal length, so the length
// SET that the isolation conditions intersect is built over reversal
// classes: one value per class. Counting (fractions, growth curves) still
// runs over all oriented rays.
struct SpectrumSets {
  struct PrimitiveEntry {
    double length = 0.0;
    int row_index = -1;   // into the source SpectrumDB
    int class_id = -1;    // reversal class
    bool even = false;    // even number of reflections
  };
  struct ClassEntry {
    double length = 0.0;
    int row_index = -1;   // representative ray
    bool even = false;
    bool palindromic = false;  // reversal-invariant necklace
  };
  struct PeriodEntry {
    double period = 0.0;  // k * primitive length
    int row_index = -1;
    int class_id = -1;
    int k = 1;
  };

  std::vector<PrimitiveEntry> primitives;   // all rays, sorted by length
  std::vector<ClassEntry> classes;          // sorted by length
  std::vector<double> class_lengths;        // sorted, parallel convenience
  std::vector<double> odd_class_lengths;    // classes with odd parity
  std::vector<PeriodEntry> periods;         // all rays + iterates, sorted
  double cutoff = 0.0;
};

// Lexicographically minimal representative among the rotations of the word
// and of its reversal; identifies the time-reversal class.
Word reversal_class_representative(const Word& word);

// cutoff <= 0 selects the default max(primitive length) + 2.
SpectrumSets build_spectrum_sets(const SpectrumDB& db, double cutoff = 0.0);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// [T - e^{-delta T}, T + e^{-delta T}].
Interval isolation_interval(double length, double delta);

struct IsolationFractionReport {
  double delta = 0.0;
  std::int64_t isolated = 0;
  std::int64_t total = 0;
  double fraction = 0.0;
};

// Fraction of primitive rays whose isolation interval contains no other
// primitive length.
IsolationFractionReport check_isolation(const SpectrumSets& sets,
                                        double delta);

struct GrowthRow {
  double x = 0.0;
  std::int64_t count = 0;
  double reference = 0.0;
  double ratio = 0.0;
};

// #{T <= x, interval isolated} against e^{(h/2) x}.
std::vector<GrowthRow> isolation_growth(const SpectrumSets& sets, double delta,
                                        const std::vector<double>& x_grid,
                                        double h);

struct ParityGrowthReport {
  std::vector<GrowthRow> isolated_even;  // vs e^{(h/3) x}
  std::vector<GrowthRow> census_even;    // vs e^{hx} / (2hx)
  std::vector<GrowthRow> census_odd;     // vs e^{hx} / (2hx)
};

// Even-parity rays whose interval avoids all odd-parity lengths, plus the
// parity-split census growth.
ParityGrowthReport parity_isolation_growth(const SpectrumSets& sets,
                                           double delta,
                                           const std::vector<double>& x_grid,
                                           double h);

struct RayTerm {
  int row_index = -1;
  int k = 1;
  double period = 0.0;
  double term = 0.0;
};

struct WeightedSumResult {
  double value = 0.0;
  std::vector<RayTerm> contributors;
};

// Alternating stability-weighted sum over all periodic rays whose period
// falls in the localized window around T_j:
//   sum over gamma of (-1)^{reflections} T |det(I - P^k)|^{-1/2} phi(d),
// phi(d) = chi(e^{delta T_j} (d - T_j)).
WeightedSumResult weighted_ray_sum(const SpectrumSets& sets,
                                   const SpectrumDB& db, double t_j,
                                   double delta, const TestFunction& chi);

struct LoneContributor {
  int row_index = -1;
  double length = 0.0;
  double sum = 0.0;  // reduces to T |det(I - P)|^{-1/2}
};

// Census rays whose window contains no other period (candidate sequence
// for the localized sums).
std::vector<LoneContributor> lone_contributor_scan(const SpectrumSets& sets,
                                                   const SpectrumDB& db,
                                                   double delta,
                                                   const TestFunction& chi);

struct RatioFlag {
  int index_a = 0;  // positions in the sorted primitive list
  int index_b = 0;
  long long num = 0;
  long long den = 0;
  double error = 0.0;
};

// Pairs of primitive lengths whose ratio is within tol of a rational with
// denominator <= q_max.
std::vector<RatioFlag> near_rational_ratios(const SpectrumSets& sets,
                                            long long q_max, double tol);

// |det(I - P^k)| for a det-1 hyperbolic matrix with expanding eigenvalue
// lambda: lambda^k + lambda^{-k} - 2.
double iterated_det_factor(double lambda_u, int k);

}  // namespace billiard
