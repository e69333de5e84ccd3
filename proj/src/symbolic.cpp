#include "billiard/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "billiard/errors.hpp"

namespace billiard {

bool is_admissible(const Word& word) {
  for (std::size_t j = 0; j + 1 < word.size(); ++j)
    if (word[j] == word[j + 1]) return false;
  return true;
}

bool is_cyclically_admissible(const Word& word) {
  if (word.size() < 2) return false;
  return is_admissible(word) && word.front() != word.back();
}

bool is_primitive(const Word& word) {
  const int m = static_cast<int>(word.size());
  for (int p = 1; p < m; ++p) {
    if (m % p != 0) continue;
    bool repeats = true;
    for (int j = p; j < m && repeats; ++j) repeats = (word[j] == word[j - p]);
    if (repeats) return false;
  }
  return true;
}

Word rotate_word(const Word& word, int shift) {
  const int m = static_cast<int>(word.size());
  Word out(m);
  for (int j = 0; j < m; ++j) out[j] = word[(j + shift) % m];
  return out;
}

bool is_minimal_rotation(const Word& word) {
  const int m = static_cast<int>(word.size());
  for (int s = 1; s < m; ++s)
    if (rotate_word(word, s) < word) return false;
  return true;
}

Word reverse_word(const Word& word) {
  return Word(word.rbegin(), word.rend());
}

Word repeat_word(const Word& word, int times) {
  Word out;
  out.reserve(word.size() * times);
  for (int k = 0; k < times; ++k) out.insert(out.end(), word.begin(), word.end());
  return out;
}

std::string word_to_string(const Word& word, int kappa0) {
  std::string out;
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (kappa0 > 9 && j > 0) out += '-';
    out += std::to_string(word[j]);
  }
  return out;
}

Word word_from_string(const std::string& text, int kappa0) {
  Word out;
  if (kappa0 > 9) {
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, '-')) out.push_back(std::stoi(part));
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw ParseError("bad word symbol: " + text);
      out.push_back(c - '0');
    }
  }
  for (int s : out)
    if (s < 1 || s > kappa0) throw ParseError("word symbol out of range: " + text);
  return out;
}

AdjacencyMatrix::AdjacencyMatrix(int kappa0) : kappa0_(kappa0) {
  if (kappa0 < 3)
    throw DomainError("adjacency matrix requires kappa0 >= 3, got " +
                      std::to_string(kappa0));
}

std::int64_t AdjacencyMatrix::trace_power(int n) const {
  if (n < 1) throw DomainError("trace power requires n >= 1");
  const int k = kappa0_;
  std::vector<std::int64_t> m(k * k), acc(k * k), tmp(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m[i * k + j] = (i == j) ? 0 : 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) acc[i * k + j] = (i == j) ? 1 : 0;
  auto mul = [&](const std::vector<std::int64_t>& a,
                 const std::vector<std::int64_t>& b,
                 std::vector<std::int64_t>& out) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        std::int64_t s = 0;
        for (int l = 0; l < k; ++l) s += a[i * k + l] * b[l * k + j];
        out[i * k + j] = s;
      }
  };
  int e = n;
  while (e > 0) {
    if (e & 1) {
      mul(acc, m, tmp);
      acc.swap(tmp);
    }
    mul(m, m, tmp);
    m.swap(tmp);
    e >>= 1;
  }
  std::int64_t trace = 0;
  for (int i = 0; i < k; ++i) trace += acc[i * k + i];
  return trace;
}

AdjacencyMatrix adjacency_matrix(int kappa0) { return AdjacencyMatrix(kappa0); }

double map_entropy(int kappa0) {
  if (kappa0 < 3) throw DomainError("map entropy requires kappa0 >= 3");
  return std::log(static_cast<double>(kappa0 - 1));
}

double map_entropy_power_iteration(int kappa0, double tol, int max_iter) {
  AdjacencyMatrix a(kappa0);
  const int k = a.size();
  std::vector<double> v(k, 1.0), w(k);
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    double sum = 0.0;
    for (double x : v) sum += x;
    for (int i = 0; i < k; ++i) w[i] = sum - v[i];  // zero-diagonal row action
    double next = 0.0;
    for (double x : w) next = std::max(next, std::abs(x));
    for (int i = 0; i < k; ++i) w[i] /= next;
    if (std::abs(next - lambda) < tol) {
      lambda = next;
      break;
    }
    lambda = next;
    v.swap(w);
  }
  return std::log(lambda);
}

namespace {

// FKM-style DFS over admissible prenecklaces. p tracks the period of the
// longest Lyndon prefix; leaves with p == m are primitive minimal rotations.
void necklace_dfs(int kappa0, int m, int t, int p, Word& w,
                  std::vector<Necklace>& out) {
  if (t == m) {
    if (p == m && w[m - 1] != w[0]) out.push_back({w});
    return;
  }
  for (int c = w[t - p]; c <= kappa0; ++c) {
    if (c == w[t - 1]) continue;  // adjacency
    w[t] = c;
    necklace_dfs(kappa0, m, t + 1, c == w[t - p] ? p : t + 1, w, out);
  }
}

}  // namespace

std::vector<Necklace> enumerate_necklaces(int kappa0, int m) {
  if (kappa0 < 3) throw DomainError("enumeration requires kappa0 >= 3");
  std::vector<Necklace> out;
  if (m < 2) return out;  // no admissible 1-cycles
  Word w(m);
  for (int first = 1; first <= kappa0; ++first) {
    w[0] = first;
    necklace_dfs(kappa0, m, 1, 1, w, out);
  }
  return out;
}

std::int64_t necklace_count(int kappa0, int m) {
  if (m < 2) return 0;
  AdjacencyMatrix a(kappa0);
  // Moebius inversion: m * c_m = sum_{d | m} mu(m/d) trace(A^d).
  auto moebius = [](int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
  };
  std::int64_t sum = 0;
  for (int d = 1; d <= m; ++d) {
    if (m % d) continue;
    const int mu = moebius(m / d);
    if (mu != 0) sum += mu * a.trace_power(d);
  }
  return sum / m;
}

std::int64_t count_periodic_points(int kappa0, int n) {
  return AdjacencyMatrix(kappa0).trace_power(n);
}

std::vector<CycleCountRow> cycle_count_check(int kappa0, int n_max) {
  if (n_max < 2) throw DomainError("cycle count check requires n_max >= 2");
  AdjacencyMatrix a(kappa0);
  std::vector<std::int64_t> counts(n_max + 1, 0);
  for (int m = 2; m <= n_max; ++m) counts[m] = necklace_count(kappa0, m);

  const double h0 = map_entropy(kappa0);
  std::vector<CycleCountRow> rows;
  std::int64_t cumulative = 0;
  for (int n = 1; n <= n_max; ++n) {
    CycleCountRow row;
    row.n = n;
    row.trace = a.trace_power(n);
    row.divisor_sum = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) row.divisor_sum += static_cast<std::int64_t>(d) * counts[d];
    cumulative += (n >= 2) ? counts[n] : 0;
    row.cumulative = cumulative;
    row.asymptotic =
        std::exp(h0) / (std::exp(h0) - 1.0) * std::exp(h0 * n) / n;
    row.ratio = static_cast<double>(cumulative) / row.asymptotic;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace billiard
