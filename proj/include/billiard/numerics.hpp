#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace billiard {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }

// 2x2 real matrix, row major.
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static Mat2 identity() { return {}; }
  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

Mat2 mat2_power(Mat2 m, int k);

// Fixed-tree pairwise reduction; summation order is independent of the
// caller's parallelism so results are reproducible byte for byte.
double pairwise_sum(std::span<const double> values);

std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(std::uint64_t value);

// Serialize with 17 significant digits (round-trips a double exactly).
std::string format_g17(double value);

std::uint64_t splitmix64(std::uint64_t& state);
// Uniform double in [0, 1) from a 64-bit word.
inline double u64_to_unit(std::uint64_t w) {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Golden-section minimizer for a unimodal function on [lo, hi].
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int max_iter = 400);

double normal_cdf(double x);

// Kolmogorov-Smirnov distance of a sample (will be sorted) to N(0, 1).
double ks_distance_to_standard_normal(std::vector<double> sample);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

double pearson_r2(std::span<const double> xs, std::span<const double> ys);

struct Rational {
  long long num = 0;
  long long den = 1;
  double error = 0.0;
};
// Best rational approximation p/q to x with q <= q_max, via continued
// fractions (convergents and intermediate fractions).
Rational best_rational(double x, long long q_max);

}  // namespace billiard
