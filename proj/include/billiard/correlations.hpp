#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "billiard/store.hpp"

namespace billiard {

// Counting conventions: ordered pairs (gamma, gamma'), equality allowed,
// closed interval endpoints, ties resolved at 1e-12.

// #{(gamma, gamma'): |gamma|,|gamma'| <= n, a <= T - T' <= b}.
std::int64_t pair_count(const SpectrumDB& db, int n, double a, double b);

// Same with |gamma| = |gamma'| = n and the window z + [eps a, eps b].
std::int64_t window_count(const SpectrumDB& db, int n, double z, double eps,
                          double a, double b);

// Continuous nonnegative test function with compact support.
class TestFunction {
public:
  virtual ~TestFunction() = default;
  virtual double operator()(double x) const = 0;
  virtual double support_radius() const = 0;
};

// Normalized autocorrelation of a smooth plateau-edged bump: nonnegative,
// supported in (-c, c), peak 1 at 0, and with nonnegative transform by
// construction. An exact plateau is impossible for a compactly supported
// positive-definite function, so the level actually attained at the nominal
// plateau edge is exposed instead.
class PlateauBump final : public TestFunction {
public:
  explicit PlateauBump(double support_radius = 1.0, double edge_width = 0.08);
  double operator()(double x) const override;
  double support_radius() const override { return support_radius_; }

  static constexpr double kPlateauEdge = 0.25;  // fraction of the support
  double plateau_level() const;  // value at kPlateauEdge * support_radius

private:
  double bump(double s) const;  // plateau bump on (-1/2, 1/2)
  double autocorr(double shift) const;
  double support_radius_;
  double edge_width_;
  double peak_;
};

// Exact double sum of chi(T - T') over pairs with |gamma|,|gamma'| <= n.
double smoothed_correlation(const SpectrumDB& db, int n,
                            const TestFunction& chi);

struct CorrelationReport {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  std::int64_t count = 0;
  double predicted = 0.0;
  double ratio = 0.0;
};

// Per-n comparison of pair counts against the quadratic-census asymptotic
// (b-a) e^{2 h0} / (sqrt(2 pi) beta (e^{h0}-1)^2) * e^{2 h0 n} / n^{5/2}.
std::vector<CorrelationReport> pair_asymptotics_report(const SpectrumDB& db,
                                                       double a, double b,
                                                       double beta, int n_lo,
                                                       int n_hi);

// Window sequence eps_n for the shrinking-interval profile.
struct EpsRule {
  std::string name;
  std::function<double(int)> value;
};

EpsRule parse_eps_rule(const std::string& text);

struct WindowProfileRow {
  double z = 0.0;
  std::int64_t count_le = 0;     // pairs with |gamma|,|gamma'| <= n
  std::int64_t count_eq = 0;     // pairs with |gamma| = |gamma'| = n
  double deviation_le = 0.0;     // rescaled count minus Gaussian profile
  double deviation_eq = 0.0;
};

struct WindowProfileReport {
  int n = 0;
  double eps = 0.0;
  std::vector<WindowProfileRow> rows;
  double sup_deviation_le = 0.0;
  double sup_deviation_eq = 0.0;
  // Squared correlation of the rescaled same-length counts with the
  // Gaussian profile over the z grid.
  double profile_r2 = 0.0;
  double predicted_at_zero = 0.0;  // pointwise form at z = 0
};

// Rejects eps rules decaying exponentially (|log eps_n| / n > h0): the
// shrinking-window asymptotics are open in that regime.
WindowProfileReport window_profile_report(const SpectrumDB& db, int n,
                                          double a, double b, double beta,
                                          const EpsRule& eps_rule,
                                          const std::vector<double>& z_grid);

// KS distance to N(0,1) of same-length pair differences normalized by
// sqrt(beta2 * n).
double gaussian_shape_ks(const SpectrumDB& db, int n, double beta2);

// Ordered pairs of distinct rays with |T - T'| <= 1e-12 at word length n.
std::int64_t tie_count(const SpectrumDB& db, int n);

}  // namespace billiard
