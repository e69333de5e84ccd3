#include <algorithm>
#include <cmath>
#include <set>

#include "billiard/errors.hpp"
#include "billiard/symbolic.hpp"
#include "doctest.h"

using namespace billiard;

namespace {

// Brute-force necklace enumeration: filter all kappa0^m words.
std::vector<Word> brute_force_necklaces(int kappa0, int m) {
  std::vector<Word> out;
  std::vector<int> w(m, 1);
  while (true) {
    if (is_cyclically_admissible(w) && is_primitive(w) &&
        is_minimal_rotation(w))
      out.push_back(w);
    int pos = m - 1;
    while (pos >= 0 && w[pos] == kappa0) w[pos--] = 1;
    if (pos < 0) break;
    ++w[pos];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("adjacency matrix") {
  const auto a3 = adjacency_matrix(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(a3.entry(i, j) == (i == j ? 0 : 1));
  const auto a4 = adjacency_matrix(4);
  for (int i = 1; i <= 4; ++i) {
    int row_sum = 0;
    for (int j = 1; j <= 4; ++j) row_sum += a4.entry(i, j);
    CHECK(row_sum == 3);
  }
  CHECK_THROWS_AS(adjacency_matrix(2), DomainError);
}

TEST_CASE("map entropy") {
  CHECK(map_entropy(3) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(map_entropy(4) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(map_entropy(2), DomainError);
  // Power iteration converges to the same eigenvalue.
  CHECK(std::abs(std::exp(map_entropy_power_iteration(3)) - 2.0) < 1e-12);
  CHECK(std::abs(map_entropy_power_iteration(5) - std::log(4.0)) < 1e-12);
}

TEST_CASE("periodic point counts") {
  CHECK(count_periodic_points(3, 1) == 0);
  CHECK(count_periodic_points(3, 2) == 6);
  CHECK(count_periodic_points(3, 3) == 6);  // 2^3 + 2 (-1)^3
  CHECK(count_periodic_points(3, 4) == 18);
  // Closed form (kappa0-1)^n + (kappa0-1)(-1)^n.
  for (int kappa0 : {3, 4, 5})
    for (int n = 1; n <= 12; ++n) {
      const double closed = std::pow(kappa0 - 1.0, n) +
                            (kappa0 - 1.0) * ((n % 2) ? -1.0 : 1.0);
      CHECK(count_periodic_points(kappa0, n) ==
            static_cast<std::int64_t>(std::llround(closed)));
    }
}

TEST_CASE("necklace enumeration matches brute force") {
  CHECK(enumerate_necklaces(3, 1).empty());

  const auto m2 = enumerate_necklaces(3, 2);
  REQUIRE(m2.size() == 3);
  CHECK(m2[0].word == Word{1, 2});
  CHECK(m2[1].word == Word{1, 3});
  CHECK(m2[2].word == Word{2, 3});

  const auto m3 = enumerate_necklaces(3, 3);
  REQUIRE(m3.size() == 2);
  CHECK(m3[0].word == Word{1, 2, 3});
  CHECK(m3[1].word == Word{1, 3, 2});

  for (int kappa0 : {3, 4})
    for (int m = 2; m <= 8; ++m) {
      const auto fast = enumerate_necklaces(kappa0, m);
      const auto slow = brute_force_necklaces(kappa0, m);
      REQUIRE(fast.size() == slow.size());
      for (std::size_t i = 0; i < fast.size(); ++i)
        CHECK(fast[i].word == slow[i]);
    }
}

TEST_CASE("every yielded necklace is admissible, primitive, minimal") {
  for (int m = 2; m <= 10; ++m)
    for (const auto& necklace : enumerate_necklaces(3, m)) {
      CHECK(is_cyclically_admissible(necklace.word));
      CHECK(is_primitive(necklace.word));
      CHECK(is_minimal_rotation(necklace.word));
    }
}

TEST_CASE("enumeration is deterministic") {
  const auto a = enumerate_necklaces(3, 9);
  const auto b = enumerate_necklaces(3, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].word == b[i].word);
}

TEST_CASE("divisor identity ties necklace counts to traces") {
  for (int kappa0 : {3, 4})
    for (int m = 1; m <= 16; ++m) {
      std::int64_t divisor_sum = 0;
      for (int d = 1; d <= m; ++d)
        if (m % d == 0) divisor_sum += d * necklace_count(kappa0, d);
      CHECK(divisor_sum == count_periodic_points(kappa0, m));
    }
  CHECK(necklace_count(3, 2) == 3);
  CHECK(necklace_count(3, 3) == 2);
  CHECK(necklace_count(3, 4) == 3);
}

TEST_CASE("cycle count report") {
  const auto rows = cycle_count_check(3, 14);
  REQUIRE(rows.size() == 14);
  CHECK(rows[0].divisor_sum == 0);  // no admissible 1-cycles
  for (const auto& row : rows) CHECK(row.divisor_sum == row.trace);
  CHECK(rows[3].divisor_sum == 18);  // 2 * 3 + 4 * 3
  for (const auto& row : rows)
    if (row.n >= 12) {
      CHECK(row.ratio > 0.8);
      CHECK(row.ratio < 1.2);
    }
}

TEST_CASE("word helpers") {
  const Word w{1, 2, 1, 3};
  CHECK(word_to_string(w, 3) == "1213");
  CHECK(word_from_string("1213", 3) == w);
  CHECK(rotate_word(w, 1) == Word{2, 1, 3, 1});
  CHECK(reverse_word(w) == Word{3, 1, 2, 1});
  CHECK(repeat_word(Word{1, 2}, 2) == Word{1, 2, 1, 2});
  CHECK_FALSE(is_primitive(Word{1, 2, 1, 2}));
  CHECK(is_admissible(Word{1, 2, 1}));
  CHECK_FALSE(is_cyclically_admissible(Word{1, 2, 1}));
  CHECK_THROWS_AS(word_from_string("140", 4), ParseError);
}
