#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace billiard {

// Itinerary over obstacle indices 1..kappa0; admissible means no two equal
// consecutive symbols.
using Word = std::vector<int>;

bool is_admissible(const Word& word);
bool is_cyclically_admissible(const Word& word);
bool is_primitive(const Word& word);
bool is_minimal_rotation(const Word& word);

Word rotate_word(const Word& word, int shift);
Word reverse_word(const Word& word);
Word repeat_word(const Word& word, int times);

std::string word_to_string(const Word& word, int kappa0);
Word word_from_string(const std::string& text, int kappa0);

// Primitive cyclically admissible word, stored as its lexicographically
// minimal rotation.
struct Necklace {
  Word word;
  int period() const { return static_cast<int>(word.size()); }
};

// kappa0 x kappa0 transition matrix: zero diagonal, ones elsewhere.
class AdjacencyMatrix {
public:
  explicit AdjacencyMatrix(int kappa0);

  int size() const { return kappa0_; }
  int entry(int i_1based, int j_1based) const {
    return i_1based == j_1based ? 0 : 1;
  }
  // Exact trace of the n-th power, by integer matrix power.
  std::int64_t trace_power(int n) const;

private:
  int kappa0_;
};

AdjacencyMatrix adjacency_matrix(int kappa0);

// log(kappa0 - 1): the all-ones vector is the Perron eigenvector.
double map_entropy(int kappa0);
// Same quantity via power iteration on the matrix, for cross-checking.
double map_entropy_power_iteration(int kappa0, double tol = 1e-14,
                                   int max_iter = 10000);

// All primitive cyclically admissible necklaces of period exactly m, in
// lexicographic order of representatives. Deterministic.
std::vector<Necklace> enumerate_necklaces(int kappa0, int m);

// Number of such necklaces (Moebius inversion of the trace identity).
std::int64_t necklace_count(int kappa0, int m);

std::int64_t count_periodic_points(int kappa0, int n);

struct CycleCountRow {
  int n = 0;
  std::int64_t trace = 0;
  std::int64_t divisor_sum = 0;     // sum over d | n of d * c_d
  std::int64_t cumulative = 0;      // #{necklaces with period <= n}
  double asymptotic = 0.0;          // e^{h0}/(e^{h0}-1) * e^{h0 n} / n
  double ratio = 0.0;               // cumulative / asymptotic
};

// Per-n verification of the divisor identity plus comparison of the
// cumulative census against its exponential growth law.
std::vector<CycleCountRow> cycle_count_check(int kappa0, int n_max);

}  // namespace billiard
