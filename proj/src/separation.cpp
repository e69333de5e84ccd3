#include "billiard/separation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

constexpr double kTieTol = 1e-12;

// Entries of `sorted` strictly inside [lo, hi] (tolerance-widened).
template <typename T, typename Proj>
std::pair<std::size_t, std::size_t> range_in(const std::vector<T>& sorted,
                                             double lo, double hi,
                                             Proj proj) {
  auto first = std::lower_bound(
      sorted.begin(), sorted.end(), lo - kTieTol,
      [&](const T& e, double v) { return proj(e) < v; });
  auto last = std::upper_bound(
      sorted.begin(), sorted.end(), hi + kTieTol,
      [&](double v, const T& e) { return v < proj(e); });
  return {static_cast<std::size_t>(first - sorted.begin()),
          static_cast<std::size_t>(last - sorted.begin())};
}

}  // namespace

Word reversal_class_representative(const Word& word) {
  const int m = static_cast<int>(word.size());
  Word best = word;
  const Word reversed(word.rbegin(), word.rend());
  for (int s = 0; s < m; ++s) {
    best = std::min(best, rotate_word(word, s));
    best = std::min(best, rotate_word(reversed, s));
  }
  return best;
}

SpectrumSets build_spectrum_sets(const SpectrumDB& db, double cutoff) {
  SpectrumSets sets;
  double max_len = 0.0;
  for (const SpectrumRow& row : db.rows) max_len = std::max(max_len, row.length);
  sets.cutoff = cutoff > 0.0 ? cutoff : max_len + 2.0;

  // Group rays into time-reversal classes; the class carries one length
  // value, taken from the representative ray.
  std::map<Word, int> class_of_rep;
  std::vector<int> class_id(db.rows.size(), -1);
  for (std::size_t i = 0; i < db.rows.size(); ++i) {
    const SpectrumRow& row = db.rows[i];
    const Word rep = reversal_class_representative(row.word);
    auto [it, fresh] =
        class_of_rep.emplace(rep, static_cast<int>(sets.classes.size()));
    if (fresh) {
      SpectrumSets::ClassEntry entry;
      entry.length = row.length;
      entry.row_index = static_cast<int>(i);
      entry.even = row.m % 2 == 0;
      entry.palindromic = true;  // set false below when a partner shows up
      sets.classes.push_back(entry);
    } else {
      sets.classes[it->second].palindromic = false;
    }
    class_id[i] = it->second;
  }

  for (std::size_t i = 0; i < db.rows.size(); ++i) {
    const SpectrumRow& row = db.rows[i];
    SpectrumSets::PrimitiveEntry entry;
    entry.length = row.length;
    entry.row_index = static_cast<int>(i);
    entry.class_id = class_id[i];
    entry.even = row.m % 2 == 0;
    sets.primitives.push_back(entry);
    for (int k = 1; k * row.length <= sets.cutoff; ++k)
      sets.periods.push_back(
          {k * row.length, static_cast<int>(i), class_id[i], k});
  }

  // Sorting invalidates the positional class ids into `classes`, so remap
  // through a permutation.
  std::vector<int> order(sets.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sets.classes[a].length < sets.classes[b].length;
  });
  std::vector<int> new_id(order.size());
  std::vector<SpectrumSets::ClassEntry> sorted_classes;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    new_id[order[pos]] = static_cast<int>(pos);
    sorted_classes.push_back(sets.classes[order[pos]]);
  }
  sets.classes = std::move(sorted_classes);
  for (auto& p : sets.primitives) p.class_id = new_id[p.class_id];
  for (auto& p : sets.periods) p.class_id = new_id[p.class_id];

  std::sort(sets.primitives.begin(), sets.primitives.end(),
            [](const auto& a, const auto& b) { return a.length < b.length; });
  std::sort(sets.periods.begin(), sets.periods.end(),
            [](const auto& a, const auto& b) { return a.period < b.period; });
  for (const auto& c : sets.classes) {
    sets.class_lengths.push_back(c.length);
    if (!c.even) sets.odd_class_lengths.push_back(c.length);
  }
  return sets;
}

Interval isolation_interval(double length, double delta) {
  if (delta < 0.0) throw DomainError("delta must be nonnegative");
  const double radius = std::exp(-delta * length);
  return {length - radius, length + radius};
}

namespace {

// The isolation interval around T may contain only length values equal to
// T itself (the length set collapses reversal partners and exact ties to
// one value).
bool is_isolated(const SpectrumSets& sets, double t, double delta) {
  const Interval j = isolation_interval(t, delta);
  const auto [lo, hi] =
      range_in(sets.class_lengths, j.lo, j.hi, [](double v) { return v; });
  for (std::size_t i = lo; i < hi; ++i)
    if (std::abs(sets.class_lengths[i] - t) > kTieTol) return false;
  return true;
}

}  // namespace

IsolationFractionReport check_isolation(const SpectrumSets& sets,
                                        double delta) {
  IsolationFractionReport report;
  report.delta = delta;
  report.total = static_cast<std::int64_t>(sets.primitives.size());
  for (const auto& p : sets.primitives)
    if (is_isolated(sets, p.length, delta)) ++report.isolated;
  report.fraction = report.total
                        ? static_cast<double>(report.isolated) / report.total
                        : 1.0;
  return report;
}

std::vector<GrowthRow> isolation_growth(const SpectrumSets& sets, double delta,
                                        const std::vector<double>& x_grid,
                                        double h) {
  std::vector<GrowthRow> rows;
  for (double x : x_grid) {
    GrowthRow row;
    row.x = x;
    for (const auto& p : sets.primitives) {
      if (p.length > x) break;
      if (is_isolated(sets, p.length, delta)) ++row.count;
    }
    row.reference = std::exp(0.5 * h * x);
    row.ratio = row.count / row.reference;
    rows.push_back(row);
  }
  return rows;
}

ParityGrowthReport parity_isolation_growth(const SpectrumSets& sets,
                                           double delta,
                                           const std::vector<double>& x_grid,
                                           double h) {
  ParityGrowthReport report;
  for (double x : x_grid) {
    GrowthRow iso, even, odd;
    iso.x = even.x = odd.x = x;
    for (const auto& p : sets.primitives) {
      if (p.length > x) break;
      if (p.even) {
        ++even.count;
        const Interval j = isolation_interval(p.length, delta);
        const auto [lo, hi] = range_in(sets.odd_class_lengths, j.lo, j.hi,
                                       [](double v) { return v; });
        if (hi == lo) ++iso.count;
      } else {
        ++odd.count;
      }
    }
    iso.reference = std::exp(h * x / 3.0);
    iso.ratio = iso.count / iso.reference;
    even.reference = odd.reference = std::exp(h * x) / (2.0 * h * x);
    even.ratio = even.count / even.reference;
    odd.ratio = odd.count / odd.reference;
    report.isolated_even.push_back(iso);
    report.census_even.push_back(even);
    report.census_odd.push_back(odd);
  }
  return report;
}

double iterated_det_factor(double lambda_u, int k) {
  if (!(lambda_u > 1.0)) throw DomainError("lambda_u must exceed 1");
  if (k < 1) throw DomainError("iterate requires k >= 1");
  return std::pow(lambda_u, k) + std::pow(lambda_u, -k) - 2.0;
}

WeightedSumResult weighted_ray_sum(const SpectrumSets& sets,
                                   const SpectrumDB& db, double t_j,
                                   double delta, const TestFunction& chi) {
  if (sets.cutoff < t_j + 1.0)
    throw DomainError("iterate cutoff " + format_g17(sets.cutoff) +
                      " too small; localized sum at " + format_g17(t_j) +
                      " requires cutoff >= " + format_g17(t_j + 1.0));
  const double window = chi.support_radius() * std::exp(-delta * t_j);

  WeightedSumResult result;
  std::vector<double> terms;
  const auto [lo, hi] =
      range_in(sets.periods, t_j - window, t_j + window,
               [](const SpectrumSets::PeriodEntry& e) { return e.period; });
  for (std::size_t i = lo; i < hi; ++i) {
    const auto& entry = sets.periods[i];
    const SpectrumRow& row = db.rows[entry.row_index];
    const double phi = chi(std::exp(delta * t_j) * (entry.period - t_j));
    if (phi == 0.0) continue;
    const int reflections = entry.k * row.m;
    const double sign = (reflections % 2 == 0) ? 1.0 : -1.0;
    const double weight =
        row.length / std::sqrt(iterated_det_factor(row.lambda_u, entry.k));
    RayTerm term;
    term.row_index = entry.row_index;
    term.k = entry.k;
    term.period = entry.period;
    term.term = sign * weight * phi;
    result.contributors.push_back(term);
    terms.push_back(term.term);
  }
  result.value = pairwise_sum(terms);
  return result;
}

std::vector<LoneContributor> lone_contributor_scan(const SpectrumSets& sets,
                                                   const SpectrumDB& db,
                                                   double delta,
                                                   const TestFunction& chi) {
  std::vector<LoneContributor> out;
  for (const auto& c : sets.classes) {
    if (sets.cutoff < c.length + 1.0) continue;
    const double window = chi.support_radius() * std::exp(-delta * c.length);
    const auto [lo, hi] =
        range_in(sets.periods, c.length - window, c.length + window,
                 [](const SpectrumSets::PeriodEntry& e) { return e.period; });
    // Every period in the window must be the candidate's own length value
    // (its reversal partner shares it exactly).
    bool lone = true;
    for (std::size_t i = lo; i < hi && lone; ++i)
      lone = std::abs(sets.periods[i].period - c.length) <= kTieTol;
    if (!lone || hi == lo) continue;
    const auto result = weighted_ray_sum(sets, db, c.length, delta, chi);
    LoneContributor entry;
    entry.row_index = c.row_index;
    entry.length = c.length;
    entry.sum = result.value;
    out.push_back(entry);
  }
  return out;
}

std::vector<RatioFlag> near_rational_ratios(const SpectrumSets& sets,
                                            long long q_max, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  std::vector<RatioFlag> flags;
  // Pairs of distinct reversal classes; partners share a length exactly and
  // would otherwise flood the scan with trivial 1/1 flags.
  const auto& lengths = sets.class_lengths;
  for (std::size_t i = 0; i < lengths.size(); ++i)
    for (std::size_t j = i + 1; j < lengths.size(); ++j) {
      const double ratio = lengths[i] / lengths[j];  // <= 1, list is sorted
      const Rational best = best_rational(ratio, q_max);
      if (best.error < tol) {
        RatioFlag flag;
        flag.index_a = static_cast<int>(i);
        flag.index_b = static_cast<int>(j);
        flag.num = best.num;
        flag.den = best.den;
        flag.error = best.error;
        flags.push_back(flag);
      }
    }
  return flags;
}

}  // namespace billiard
