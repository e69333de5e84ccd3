#include "billiard/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include "billiard/errors.hpp"
#include "billiard/symbolic.hpp"

namespace billiard {

namespace {

void require_divisors(const SpectrumDB& db, int n) {
  std::vector<int> missing;
  for (int m = 2; m <= n; ++m)
    if (n % m == 0 && m > db.n_max) missing.push_back(m);
  if (n >= 2 && db.n_max < 2) missing.insert(missing.begin(), 2);
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "spectrum incomplete for period " << n << "; missing word lengths:";
    for (int m : missing) msg << ' ' << m;
    throw DomainError(msg.str());
  }
}

}  // namespace

double partition_sum(const SpectrumDB& db, int n, double s) {
  if (n < 1) throw DomainError("partition sum requires n >= 1");
  require_divisors(db, n);
  std::vector<double> terms;
  for (int m = 2; m <= n; ++m) {
    if (n % m != 0) continue;
    for (const SpectrumRow& row : db.rows_at(m))
      terms.push_back(m * std::exp(s * (n / m) * row.length));
  }
  return pairwise_sum(terms);
}

PressureEstimate pressure(const SpectrumDB& db, double s, int n_max) {
  if (n_max < 3) throw DomainError("pressure requires n_max >= 3");
  if (!db.complete_to(n_max))
    throw DomainError("spectrum complete to " + std::to_string(db.n_max) +
                      " only; pressure needs " + std::to_string(n_max));
  const double top = partition_sum(db, n_max, s);
  const double mid = partition_sum(db, n_max - 1, s);
  const double low = partition_sum(db, n_max - 2, s);
  PressureEstimate est;
  est.value = std::log(top / mid);
  const double prev = (n_max >= 4 && low > 0.0) ? std::log(mid / low)
                                                : est.value;
  est.extrapolation_error = std::abs(est.value - prev);
  return est;
}

PressureCurve pressure_curve(const SpectrumDB& db,
                             const std::vector<double>& s_values, int n_max) {
  PressureCurve curve;
  curve.s_values = s_values;
  curve.n_used = n_max;
  for (double s : s_values) {
    const auto est = pressure(db, s, n_max);
    curve.pressures.push_back(est.value);
    curve.errors.push_back(est.extrapolation_error);
    curve.extrapolation_error =
        std::max(curve.extrapolation_error, est.extrapolation_error);
  }
  curve.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < curve.pressures.size(); ++i)
    curve.min_second_difference = std::min(
        curve.min_second_difference, curve.pressures[i + 1] -
                                         2.0 * curve.pressures[i] +
                                         curve.pressures[i - 1]);
  if (curve.pressures.size() < 3) curve.min_second_difference = 0.0;
  return curve;
}

double flow_entropy(const SpectrumDB& db, int n_max) {
  auto p = [&](double s) { return pressure(db, -s, n_max).value; };
  double lo = 0.0;
  double p_lo = p(lo);
  if (p_lo <= 0.0) throw DomainError("pressure at 0 should be positive");
  double hi = 1.0;
  int doublings = 0;
  while (p(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 60) throw DomainError("entropy bracket failure");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (p(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

VarianceEstimate variance_beta2(const SpectrumDB& db, int n_max, double ds) {
  if (!(ds > 0.0)) throw DomainError("variance step must be positive");
  auto p = [&](double s) { return pressure(db, s, n_max).value; };
  const double p0 = p(0.0);
  auto second_diff = [&](double h) {
    return (p(h) - 2.0 * p0 + p(-h)) / (h * h);
  };
  const double coarse = second_diff(ds);
  const double fine = second_diff(0.5 * ds);
  const double curvature = (4.0 * fine - coarse) / 3.0;

  VarianceEstimate est;
  est.from_pressure = 2.0 * curvature;
  est.step_warning = std::abs(coarse - fine) > 0.5 * std::abs(fine);

  // Variance of the per-pair length difference over period-n points equals
  // twice the single-marginal variance.
  std::vector<double> values;
  std::vector<double> weights;
  for (int m = 2; m <= n_max; ++m) {
    if (n_max % m != 0) continue;
    for (const SpectrumRow& row : db.rows_at(m)) {
      values.push_back((n_max / m) * row.length);
      weights.push_back(m);
    }
  }
  double wsum = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    wsum += weights[i];
    mean += weights[i] * values[i];
  }
  mean /= wsum;
  double var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    var += weights[i] * (values[i] - mean) * (values[i] - mean);
  var /= wsum;
  est.from_orbits = 2.0 * var / n_max;

  est.agreement = std::abs(est.from_pressure - est.from_orbits) /
                  std::max(std::abs(est.from_pressure),
                           std::abs(est.from_orbits));
  return est;
}

double partition_sum_pair(const SpectrumDB& db, int n, double s) {
  require_divisors(db, n);
  std::vector<double> xs;  // weight m, value e^{s f_n}
  std::vector<double> ys;
  for (int m = 2; m <= n; ++m) {
    if (n % m != 0) continue;
    for (const SpectrumRow& row : db.rows_at(m)) {
      xs.push_back(m * std::exp(s * (n / m) * row.length));
      ys.push_back(m * std::exp(-s * (n / m) * row.length));
    }
  }
  std::vector<double> terms;
  terms.reserve(xs.size() * ys.size());
  for (double x : xs)
    for (double y : ys) terms.push_back(x * y);
  return pairwise_sum(terms);
}

LatticeReport lattice_diagnostic(const ObstacleSystem& system, int k_max,
                                 const SolveOptions& options) {
  if (k_max < 2) throw DomainError("lattice diagnostic requires k_max >= 2");
  LatticeReport report;
  report.d = system.pair_gap(1, 2);

  auto family_word = [](int k) {
    Word w;
    for (int r = 0; r < 2 * k; ++r) {
      w.push_back(2);
      w.push_back(1);
    }
    w.push_back(3);
    w.push_back(1);
    return w;
  };

  std::vector<double> lengths;
  for (int k = 1; k <= k_max; ++k) {
    try {
      const Orbit orbit = solve_cycle(system, {family_word(k)}, options);
      lengths.push_back(orbit.length);
    } catch (const std::exception&) {
      report.complete = false;
      break;
    }
  }

  for (int k = 2; k < static_cast<int>(lengths.size()) + 1; ++k) {
    if (k - 1 >= static_cast<int>(lengths.size())) break;
    LatticeRow row;
    row.k = k;
    row.length = lengths[k - 1];
    row.gap = lengths[k - 1] - lengths[k - 2] - 4.0 * report.d;
    report.rows.push_back(row);
  }

  std::vector<double> ks, logs;
  for (const LatticeRow& row : report.rows) {
    if (row.gap <= 0.0) continue;
    ks.push_back(row.k);
    logs.push_back(std::log(row.gap));
  }
  if (ks.size() >= 2) {
    const LinearFit fit = linear_fit(ks, logs);
    report.fitted_delta = std::exp(0.5 * fit.slope);
    report.fit_r2 = fit.r2;
  }
  return report;
}

namespace {

void block_dfs(int kappa0, int memory, Word& w, std::vector<Word>& out) {
  if (static_cast<int>(w.size()) == memory) {
    out.push_back(w);
    return;
  }
  for (int c = 1; c <= kappa0; ++c) {
    if (!w.empty() && c == w.back()) continue;
    w.push_back(c);
    block_dfs(kappa0, memory, w, out);
    w.pop_back();
  }
}

std::uint64_t pack_block(const Word& w) {
  std::uint64_t key = 0;
  for (int s : w) key = key * 37 + static_cast<std::uint64_t>(s);
  return key;
}

}  // namespace

FiniteMemoryOperator::FiniteMemoryOperator(const ObstacleSystem& system,
                                           int memory,
                                           const SolveOptions& options)
    : kappa0_(system.size()), memory_(memory), h0_(map_entropy(kappa0_)) {
  if (memory < 2) throw DomainError("finite-memory operator requires k >= 2");
  double dim = kappa0_;
  for (int i = 1; i < memory; ++i) dim *= (kappa0_ - 1);
  if (dim > 20000.0)
    throw DomainError("finite-memory dimension " + std::to_string(dim) +
                      " exceeds budget (20000); reduce k");

  Word scratch;
  block_dfs(kappa0_, memory, scratch, blocks_);

  std::map<std::uint64_t, int> index;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    index[pack_block(blocks_[i])] = static_cast<int>(i);

  block_f_.resize(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Chain chain = solve_chain(system, blocks_[i], options);
    block_f_[i] = norm(chain.points[1] - chain.points[0]);
  }

  // Predecessors of block (x0..x_{k-1}) are (a, x0..x_{k-2}) for a != x0.
  preimages_.assign(blocks_.size() * (kappa0_ - 1), -1);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Word& b = blocks_[i];
    int slot = 0;
    for (int a = 1; a <= kappa0_; ++a) {
      if (a == b[0]) continue;
      Word pre;
      pre.push_back(a);
      pre.insert(pre.end(), b.begin(), b.end() - 1);
      preimages_[i * (kappa0_ - 1) + slot] = index.at(pack_block(pre));
      ++slot;
    }
  }
}

double FiniteMemoryOperator::spectral_radius(double t, double tol,
                                             int max_iter) const {
  const int dim = dimension();
  const int fan = kappa0_ - 1;
  std::vector<std::complex<double>> v(dim, {1.0, 0.0}), w(dim);
  std::vector<std::complex<double>> weight(dim);
  for (int i = 0; i < dim; ++i)
    weight[i] = std::exp(std::complex<double>(-h0_, t * block_f_[i]));

  double norm_prev = std::sqrt(static_cast<double>(dim));
  double estimate = 0.0;
  // Geometric mean of the growth over a window damps the oscillation that
  // close eigenvalue moduli induce on single-step ratios.
  constexpr int kWindow = 16;
  std::vector<double> ratios;
  for (int it = 0; it < max_iter; ++it) {
    for (int i = 0; i < dim; ++i) {
      std::complex<double> acc{0.0, 0.0};
      for (int s = 0; s < fan; ++s) {
        const int j = preimages_[i * fan + s];
        acc += weight[j] * v[j];
      }
      w[i] = acc;
    }
    double norm_cur = 0.0;
    for (const auto& z : w) norm_cur += std::norm(z);
    norm_cur = std::sqrt(norm_cur);
    if (norm_cur == 0.0) return 0.0;
    ratios.push_back(norm_cur / norm_prev);
    if (static_cast<int>(ratios.size()) > kWindow)
      ratios.erase(ratios.begin());
    const double scale = 1.0 / norm_cur;
    for (int i = 0; i < dim; ++i) v[i] = w[i] * scale;
    norm_prev = 1.0;

    double geo = 0.0;
    for (double r : ratios) geo += std::log(r);
    geo = std::exp(geo / ratios.size());
    if (it > kWindow && std::abs(geo - estimate) < tol) return geo;
    estimate = geo;
  }
  return estimate;
}

double complex_spectral_radius(const ObstacleSystem& system, double t,
                               int memory, const SolveOptions& options) {
  return FiniteMemoryOperator(system, memory, options).spectral_radius(t);
}

std::int64_t census_length_count(const SpectrumDB& db, double x) {
  std::int64_t count = 0;
  for (const SpectrumRow& row : db.rows)
    if (row.length <= x) ++count;
  return count;
}

double census_coverage_bound(const ObstacleSystem& system,
                             const SpectrumDB& db) {
  return (db.n_max + 1) * system.min_gap();
}

}  // namespace billiard
