#include "billiard/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

constexpr double kTangencyTol = 1e-6;

struct BounceData {
  double flight_in = 0.0;   // leg length into this reflection
  double curvature = 0.0;   // boundary curvature 1/r
  double cos_phi = 0.0;     // cosine of the incidence angle
};

std::vector<BounceData> collect_bounces(const ObstacleSystem& system,
                                        const Orbit& orbit) {
  const int m = orbit.necklace.period();
  std::vector<BounceData> out(m);
  for (int j = 0; j < m; ++j) {
    const Vec2 prev = orbit.points[(j + m - 1) % m];
    const Disk& d = system.disk(orbit.necklace.word[j]);
    const Vec2 nu = (orbit.points[j] - d.center) / d.radius;
    const Vec2 in_dir = normalized(orbit.points[j] - prev);
    BounceData b;
    b.flight_in = norm(orbit.points[j] - prev);
    b.curvature = 1.0 / d.radius;
    b.cos_phi = std::min(1.0, -dot(in_dir, nu));
    if (b.cos_phi < kTangencyTol)
      throw DomainError("near-tangent reflection (cos phi = " +
                        format_g17(b.cos_phi) + ") at bounce " +
                        std::to_string(j));
    out[j] = b;
  }
  return out;
}

}  // namespace

double propagate_curvature(double curvature, double flight_length) {
  const double denom = 1.0 + flight_length * curvature;
  if (std::abs(denom) < 1e-14)
    throw DomainError("focusing singularity: 1 + t B = 0");
  return curvature / denom;
}

double reflect_curvature(double curvature, double boundary_curvature,
                         double cos_incidence) {
  if (cos_incidence <= 0.0 || cos_incidence > 1.0)
    throw DomainError("reflection requires cos(phi) in (0, 1], got " +
                      format_g17(cos_incidence));
  return curvature + 2.0 * boundary_curvature / cos_incidence;
}

Mat2 bounce_matrix(double flight_length, double boundary_curvature,
                   double cos_incidence) {
  if (cos_incidence <= 0.0 || cos_incidence > 1.0)
    throw DomainError("bounce matrix requires cos(phi) in (0, 1]");
  const double c = 2.0 * boundary_curvature / cos_incidence;
  const double t = flight_length;
  return {1.0, t, c, c * t + 1.0};
}

StabilityData poincare_map(const ObstacleSystem& system, const Orbit& orbit,
                           int g_memory) {
  const int m = orbit.necklace.period();
  const auto bounces = collect_bounces(system, orbit);

  Mat2 p = Mat2::identity();
  for (int s = 1; s <= m; ++s) {
    const int j = s % m;
    p = bounce_matrix(bounces[j].flight_in, bounces[j].curvature,
                      bounces[j].cos_phi) *
        p;
  }

  StabilityData data;
  data.monodromy = p;
  const double tr = p.trace();
  if (tr <= 2.0 + 1e-9)
    throw SolverError("monodromy is not hyperbolic (trace " + format_g17(tr) +
                      ") for necklace " +
                      word_to_string(orbit.necklace.word, system.size()));
  data.lambda_u = 0.5 * (tr + std::sqrt(tr * tr - 4.0));
  data.det_factor = std::abs(2.0 - tr);

  const auto weights = orbit_g_weights(system, orbit, g_memory);
  data.g_sum = 0.0;
  for (double w : weights) data.g_sum += w;
  return data;
}

std::vector<double> orbit_g_weights(const ObstacleSystem& system,
                                    const Orbit& orbit, int memory,
                                    double seed_curvature) {
  const int m = orbit.necklace.period();
  const auto bounces = collect_bounces(system, orbit);

  // Converge the incoming unstable curvature by running `memory` bounces
  // around the cycle; contraction is quadratic in the per-bounce rate.
  double b_pre = seed_curvature;
  int idx = ((-memory) % m + m) % m;
  for (int s = 0; s < memory; ++s) {
    const double post = reflect_curvature(b_pre, bounces[idx].curvature,
                                          bounces[idx].cos_phi);
    const int next = (idx + 1) % m;
    b_pre = propagate_curvature(post, bounces[next].flight_in);
    idx = next;
  }

  std::vector<double> weights(m);
  for (int j = 0; j < m; ++j) {
    const double post =
        reflect_curvature(b_pre, bounces[j].curvature, bounces[j].cos_phi);
    const double t_out = bounces[(j + 1) % m].flight_in;
    weights[j] = std::log(1.0 + t_out * post);
    b_pre = propagate_curvature(post, t_out);
  }
  return weights;
}

double g_weight(const ObstacleSystem& system, const Word& context, int index,
                int memory, double seed_curvature) {
  if (index < memory)
    throw DomainError("past window shorter than memory: index " +
                      std::to_string(index) + " < memory " +
                      std::to_string(memory));
  if (index + 1 >= static_cast<int>(context.size()))
    throw DomainError("context must extend one bounce past the index");

  const Chain chain = solve_chain(system, context);
  double b_pre = seed_curvature;
  for (int j = index - memory; j <= index; ++j) {
    const Disk& d = system.disk(context[j]);
    const Vec2 nu = (chain.points[j] - d.center) / d.radius;
    const Vec2 in_dir = (j == 0)
                            ? nu * -1.0  // flat seed enters head-on
                            : normalized(chain.points[j] - chain.points[j - 1]);
    const double cos_phi = std::min(1.0, -dot(in_dir, nu));
    if (cos_phi < kTangencyTol) throw DomainError("near-tangent reflection");
    const double post = reflect_curvature(b_pre, 1.0 / d.radius, cos_phi);
    const double t_out = norm(chain.points[j + 1] - chain.points[j]);
    if (j == index) return std::log(1.0 + t_out * post);
    b_pre = propagate_curvature(post, t_out);
  }
  return 0.0;  // unreachable
}

}  // namespace billiard
