#include "billiard/correlations.hpp"

#include <algorithm>
#include <cmath>

#include "billiard/errors.hpp"
#include "billiard/symbolic.hpp"

namespace billiard {

namespace {

constexpr double kTieTol = 1e-12;

std::vector<double> lengths_up_to(const SpectrumDB& db, int n) {
  if (!db.complete_to(n))
    throw DomainError("spectrum complete to " + std::to_string(db.n_max) +
                      " only; need word length " + std::to_string(n));
  std::vector<double> out;
  for (const SpectrumRow& row : db.rows)
    if (row.m <= n) out.push_back(row.length);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> lengths_at(const SpectrumDB& db, int n) {
  if (!db.complete_to(n))
    throw DomainError("spectrum complete to " + std::to_string(db.n_max) +
                      " only; need word length " + std::to_string(n));
  const auto span = db.rows_at(n);
  std::vector<double> out;
  out.reserve(span.size());
  for (const SpectrumRow& row : span) out.push_back(row.length);
  std::sort(out.begin(), out.end());
  return out;
}

// Ordered pairs (i, j) with lengths[i] - lengths[j] in [lo, hi], closed
// endpoints widened by the tie tolerance.
std::int64_t count_diff_in(const std::vector<double>& lengths, double lo,
                           double hi) {
  std::int64_t count = 0;
  for (double t : lengths) {
    const auto first = std::lower_bound(lengths.begin(), lengths.end(),
                                        t - hi - kTieTol);
    const auto last = std::upper_bound(lengths.begin(), lengths.end(),
                                       t - lo + kTieTol);
    count += last - first;
  }
  return count;
}

double h0_of(const SpectrumDB& db) {
  return std::log(static_cast<double>(db.kappa0 - 1));
}

}  // namespace

std::int64_t pair_count(const SpectrumDB& db, int n, double a, double b) {
  if (a >= b) throw DomainError("interval requires a < b");
  return count_diff_in(lengths_up_to(db, n), a, b);
}

std::int64_t window_count(const SpectrumDB& db, int n, double z, double eps,
                          double a, double b) {
  if (a >= b) throw DomainError("interval requires a < b");
  if (!(eps > 0.0)) throw DomainError("window scale eps must be positive");
  return count_diff_in(lengths_at(db, n), z + eps * a, z + eps * b);
}

PlateauBump::PlateauBump(double support_radius, double edge_width)
    : support_radius_(support_radius), edge_width_(edge_width) {
  if (!(support_radius > 0.0) || !(edge_width > 0.0) || edge_width >= 0.5)
    throw DomainError("bump parameters out of range");
  peak_ = 1.0;
  peak_ = autocorr(0.0);
}

double PlateauBump::bump(double s) const {
  const double a = std::abs(s);
  if (a >= 0.5) return 0.0;
  if (a <= 0.5 - edge_width_) return 1.0;
  // C-infinity ramp between the plateau and the support edge.
  const double u = (0.5 - a) / edge_width_;  // in (0, 1)
  const double e0 = std::exp(-1.0 / u);
  const double e1 = std::exp(-1.0 / (1.0 - u));
  return e0 / (e0 + e1);
}

double PlateauBump::autocorr(double shift) const {
  const double u = std::abs(shift);
  if (u >= 1.0) return 0.0;
  // Simpson on the overlap [-1/2 + u, 1/2] of b(s) b(s - u).
  const double lo = -0.5 + u;
  const double hi = 0.5;
  constexpr int kIntervals = 512;  // even
  const double h = (hi - lo) / kIntervals;
  double sum = 0.0;
  for (int i = 0; i <= kIntervals; ++i) {
    const double s = lo + i * h;
    const double f = bump(s) * bump(s - u);
    const double w = (i == 0 || i == kIntervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

double PlateauBump::operator()(double x) const {
  return autocorr(x / support_radius_) / peak_;
}

double PlateauBump::plateau_level() const {
  return (*this)(kPlateauEdge * support_radius_);
}

double smoothed_correlation(const SpectrumDB& db, int n,
                            const TestFunction& chi) {
  const auto lengths = lengths_up_to(db, n);
  const double radius = chi.support_radius();
  std::vector<double> terms;
  for (double t : lengths) {
    const auto first =
        std::lower_bound(lengths.begin(), lengths.end(), t - radius);
    const auto last =
        std::upper_bound(lengths.begin(), lengths.end(), t + radius);
    for (auto it = first; it != last; ++it) {
      const double value = chi(t - *it);
      if (value < 0.0)
        throw DomainError("test function must be nonnegative");
      terms.push_back(value);
    }
  }
  return pairwise_sum(terms);
}

std::vector<CorrelationReport> pair_asymptotics_report(const SpectrumDB& db,
                                                       double a, double b,
                                                       double beta, int n_lo,
                                                       int n_hi) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (a > b) throw DomainError("interval requires a <= b");
  const double h0 = h0_of(db);
  const double base = std::exp(h0) - 1.0;
  std::vector<CorrelationReport> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    CorrelationReport rep;
    rep.n = n;
    rep.a = a;
    rep.b = b;
    rep.count = count_diff_in(lengths_up_to(db, n), a, b);
    rep.predicted = (b - a) * std::exp(2.0 * h0) /
                    (std::sqrt(2.0 * M_PI) * beta * base * base) *
                    std::exp(2.0 * h0 * n) / std::pow(n, 2.5);
    rep.ratio = rep.predicted > 0.0 ? rep.count / rep.predicted : 0.0;
    out.push_back(rep);
  }
  return out;
}

EpsRule parse_eps_rule(const std::string& text) {
  if (text == "exp(-n)")
    return {text, [](int n) { return std::exp(-static_cast<double>(n)); }};
  if (text.rfind("n^", 0) == 0) {
    const double p = std::stod(text.substr(2));
    return {text, [p](int n) { return std::pow(n, p); }};
  }
  const double c = std::stod(text);
  if (!(c > 0.0)) throw DomainError("eps rule must be positive");
  return {text, [c](int) { return c; }};
}

WindowProfileReport window_profile_report(const SpectrumDB& db, int n,
                                          double a, double b, double beta,
                                          const EpsRule& eps_rule,
                                          const std::vector<double>& z_grid) {
  if (a >= b) throw DomainError("interval requires a < b");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  const double h0 = h0_of(db);
  const double eps = eps_rule.value(n);
  if (!(eps > 0.0)) throw DomainError("eps_n must be positive");
  if (std::abs(std::log(eps)) / n > h0)
    throw DomainError(
        "window sequence '" + eps_rule.name +
        "' shrinks exponentially (|log eps_n|/n > h0); the pair-correlation "
        "profile for such windows is tied to unresolved length-separation "
        "conditions and is not evaluated");

  const auto all = lengths_up_to(db, n);
  const auto same = lengths_at(db, n);
  const double base = std::exp(h0) - 1.0;
  const double scale_le =
      beta * std::pow(n, 2.5) / (eps * std::exp(2.0 * h0 * n));
  const double scale_eq = std::pow(n, 2.5) / (eps * std::exp(2.0 * h0 * n));
  const double amp_le =
      (b - a) * std::exp(2.0 * h0) / (std::sqrt(2.0 * M_PI) * base * base);
  const double amp_eq = (b - a) / (std::sqrt(2.0 * M_PI) * beta);

  WindowProfileReport report;
  report.n = n;
  report.eps = eps;
  std::vector<double> measured, profile;
  for (double z : z_grid) {
    WindowProfileRow row;
    row.z = z;
    row.count_le = count_diff_in(all, z + eps * a, z + eps * b);
    row.count_eq = count_diff_in(same, z + eps * a, z + eps * b);
    const double gauss = std::exp(-z * z / (2.0 * beta * beta * n));
    row.deviation_le = std::abs(scale_le * row.count_le - amp_le * gauss);
    row.deviation_eq = std::abs(scale_eq * row.count_eq - amp_eq * gauss);
    report.sup_deviation_le =
        std::max(report.sup_deviation_le, row.deviation_le);
    report.sup_deviation_eq =
        std::max(report.sup_deviation_eq, row.deviation_eq);
    measured.push_back(scale_eq * row.count_eq);
    profile.push_back(amp_eq * gauss);
    report.rows.push_back(row);
  }
  report.profile_r2 = pearson_r2(measured, profile);
  report.predicted_at_zero = (b - a) * std::exp(2.0 * h0) * eps /
                             (std::sqrt(2.0 * M_PI) * beta * base * base) *
                             std::exp(2.0 * h0 * n) / std::pow(n, 2.5);
  return report;
}

double gaussian_shape_ks(const SpectrumDB& db, int n, double beta2) {
  if (!(beta2 > 0.0)) throw DomainError("beta2 must be positive");
  const auto lengths = lengths_at(db, n);
  const double scale = 1.0 / std::sqrt(beta2 * n);
  std::vector<double> sample;
  sample.reserve(lengths.size() * lengths.size());
  for (double x : lengths)
    for (double y : lengths) sample.push_back((x - y) * scale);
  return ks_distance_to_standard_normal(std::move(sample));
}

std::int64_t tie_count(const SpectrumDB& db, int n) {
  const auto lengths = lengths_at(db, n);
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    std::size_t j = i + 1;
    while (j < lengths.size() && lengths[j] - lengths[i] <= kTieTol) {
      ++j;
      ++pairs;
    }
  }
  return 2 * pairs;  // ordered pairs
}

}  // namespace billiard
