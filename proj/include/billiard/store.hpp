#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/orbit.hpp"

namespace billiard {

struct SpectrumRow {
  Word word;            // minimal-rotation representative
  int m = 0;            // word length
  double length = 0.0;  // primitive period
  double lambda_u = 0.0;
  double det_factor = 0.0;
  double residual = 0.0;
};

// Census of all primitive periodic rays with word length up to n_max,
// sorted by (m, representative). Content is deterministic for a given
// geometry and independent of the thread count used to build it.
class SpectrumDB {
public:
  std::uint64_t geometry_hash = 0;
  int kappa0 = 0;
  int n_max = 0;
  std::vector<SpectrumRow> rows;

  std::span<const SpectrumRow> rows_at(int m) const;
  bool complete_to(int n) const { return n >= 2 && n <= n_max; }

  std::string serialize() const;
  void save(const std::string& path) const;

  static SpectrumDB deserialize(const std::string& text);
  // Load and validate against the live geometry (hash must match).
  static SpectrumDB load(const std::string& path,
                         const ObstacleSystem& system);
};

SpectrumDB build_spectrum(const ObstacleSystem& system, int n_max,
                          int threads = 1, const SolveOptions& options = {});

// Reuses rows of an existing census and solves only the new word lengths.
SpectrumDB extend_spectrum(const SpectrumDB& base, const ObstacleSystem& system,
                           int n_max, int threads = 1,
                           const SolveOptions& options = {});

}  // namespace billiard
