#include "billiard/orbit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "billiard/errors.hpp"

namespace billiard {

namespace {

struct Functional {
  const ObstacleSystem* system;
  const Word* word;
  bool cyclic;

  int size() const { return static_cast<int>(word->size()); }

  std::vector<Vec2> points(const std::vector<double>& angles) const {
    std::vector<Vec2> out(angles.size());
    for (std::size_t j = 0; j < angles.size(); ++j) {
      const Disk& d = system->disk((*word)[j]);
      out[j] = d.center + Vec2{std::cos(angles[j]), std::sin(angles[j])} *
                              d.radius;
    }
    return out;
  }

  double value(const std::vector<double>& angles) const {
    const auto p = points(angles);
    const int m = size();
    const int legs = cyclic ? m : m - 1;
    double total = 0.0;
    for (int j = 0; j < legs; ++j) total += norm(p[(j + 1) % m] - p[j]);
    return total;
  }

  void gradient_hessian(const std::vector<double>& angles,
                        Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const int m = size();
    const auto p = points(angles);
    std::vector<Vec2> tangent(m), second(m);
    for (int j = 0; j < m; ++j) {
      const Disk& d = system->disk((*word)[j]);
      tangent[j] = Vec2{-std::sin(angles[j]), std::cos(angles[j])} * d.radius;
      second[j] = (p[j] - d.center) * -1.0;
    }
    grad = Eigen::VectorXd::Zero(m);
    hess = Eigen::MatrixXd::Zero(m, m);
    const int legs = cyclic ? m : m - 1;
    for (int j = 0; j < legs; ++j) {
      const int a = j, b = (j + 1) % m;
      const Vec2 s = p[b] - p[a];
      const double len = norm(s);
      const Vec2 e = s / len;
      grad[a] += -dot(e, tangent[a]);
      grad[b] += dot(e, tangent[b]);
      // P = I - e e^T applied through dot products.
      auto proj = [&](Vec2 u, Vec2 v) {
        return dot(u, v) - dot(u, e) * dot(v, e);
      };
      hess(a, a) += proj(tangent[a], tangent[a]) / len - dot(e, second[a]);
      hess(b, b) += proj(tangent[b], tangent[b]) / len + dot(e, second[b]);
      const double cross = -proj(tangent[a], tangent[b]) / len;
      hess(a, b) += cross;
      hess(b, a) += cross;
    }
  }
};

double grad_inf_norm(const Eigen::VectorXd& g) {
  return g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
}

struct NewtonResult {
  std::vector<double> angles;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

NewtonResult minimize(const Functional& fn, std::vector<double> angles,
                      const SolveOptions& opt) {
  const int m = static_cast<int>(angles.size());
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  NewtonResult res;
  double value = fn.value(angles);

  for (int it = 0; it < opt.max_iterations; ++it) {
    fn.gradient_hessian(angles, grad, hess);
    const double gnorm = grad_inf_norm(grad);
    res.iterations = it;
    res.residual = gnorm;
    if (gnorm < opt.tol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd step = -hess.ldlt().solve(grad);
    if (!step.allFinite() || grad.dot(step) >= 0.0)
      step = -grad;  // Hessian not usable as a descent model here

    if (gnorm < 1e-6) {
      // Close to the critical point a value-based line search stalls on
      // rounding; plain Newton converges quadratically on the gradient.
      for (int j = 0; j < m; ++j) angles[j] += step[j];
      value = fn.value(angles);
      continue;
    }

    // Backtracking on the length value.
    double t = 1.0;
    bool accepted = false;
    const double slope = grad.dot(step);
    for (int bt = 0; bt < 48; ++bt) {
      std::vector<double> trial(m);
      for (int j = 0; j < m; ++j) trial[j] = angles[j] + t * step[j];
      const double trial_value = fn.value(trial);
      if (trial_value <= value + 1e-4 * t * slope) {
        angles = std::move(trial);
        value = trial_value;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // Flat to machine precision; report current residual.
      res.iterations = it + 1;
      break;
    }
  }
  if (!res.converged) {
    fn.gradient_hessian(angles, grad, hess);
    res.residual = grad_inf_norm(grad);
    res.converged = res.residual < opt.tol;
  }
  res.angles = std::move(angles);
  return res;
}

// Each reflection point starts facing the midpoint of its neighbor centers.
std::vector<double> initial_angles(const ObstacleSystem& system,
                                   const Word& word, bool cyclic) {
  const int m = static_cast<int>(word.size());
  std::vector<double> angles(m);
  for (int j = 0; j < m; ++j) {
    Vec2 target;
    if (cyclic) {
      const Vec2 prev = system.disk(word[(j + m - 1) % m]).center;
      const Vec2 next = system.disk(word[(j + 1) % m]).center;
      target = (prev + next) / 2.0;
    } else if (j == 0) {
      target = system.disk(word[1]).center;
    } else if (j == m - 1) {
      target = system.disk(word[m - 2]).center;
    } else {
      target = (system.disk(word[j - 1]).center +
                system.disk(word[j + 1]).center) /
               2.0;
    }
    const Vec2 dir = target - system.disk(word[j]).center;
    angles[j] = std::atan2(dir.y, dir.x);
  }
  return angles;
}

double segment_disk_clearance(Vec2 a, Vec2 b, const Disk& disk) {
  const Vec2 d = b - a;
  const double t =
      std::clamp(dot(disk.center - a, d) / norm2(d), 0.0, 1.0);
  return norm(disk.center - (a + d * t)) - disk.radius;
}

}  // namespace

double cycle_length(const ObstacleSystem& system, const Word& word,
                    const std::vector<double>& angles) {
  Functional fn{&system, &word, true};
  return fn.value(angles);
}

Orbit solve_cycle(const ObstacleSystem& system, const Necklace& necklace,
                  const SolveOptions& options) {
  const Word& word = necklace.word;
  if (!is_cyclically_admissible(word))
    throw DomainError("necklace is not cyclically admissible: " +
                      word_to_string(word, system.size()));
  for (int s : word)
    if (s < 1 || s > system.size())
      throw DomainError("necklace symbol out of range");

  Functional fn{&system, &word, true};
  const auto base = initial_angles(system, word, true);
  const int m = static_cast<int>(word.size());

  std::uint64_t rng = options.seed ^
                      fnv1a64(word_to_string(word, system.size())) ^
                      0x9e3779b97f4a7c15ull;

  std::vector<NewtonResult> runs;
  for (int s = 0; s < std::max(1, options.starts); ++s) {
    std::vector<double> start = base;
    if (s > 0)
      for (int j = 0; j < m; ++j)
        start[j] += options.jitter * (2.0 * u64_to_unit(splitmix64(rng)) - 1.0);
    NewtonResult run = minimize(fn, std::move(start), options);
    if (!run.converged) {
      std::ostringstream msg;
      msg << "solver did not converge for necklace "
          << word_to_string(word, system.size()) << " (start " << s
          << ", residual " << format_g17(run.residual) << " after "
          << run.iterations << " iterations)";
      throw SolverError(msg.str());
    }
    runs.push_back(std::move(run));
  }

  const auto ref_points = fn.points(runs[0].angles);
  for (std::size_t s = 1; s < runs.size(); ++s) {
    const auto pts = fn.points(runs[s].angles);
    double dev = 0.0;
    for (int j = 0; j < m; ++j) dev = std::max(dev, norm(pts[j] - ref_points[j]));
    if (dev > options.agreement_tol) {
      std::ostringstream msg;
      msg << "multi-start disagreement " << format_g17(dev) << " for necklace "
          << word_to_string(word, system.size());
      throw SolverError(msg.str());
    }
  }

  Orbit orbit;
  orbit.necklace = necklace;
  orbit.angles = runs[0].angles;
  orbit.points = ref_points;
  orbit.length = fn.value(orbit.angles);
  orbit.gradient_residual = runs[0].residual;
  orbit.solver_iterations = runs[0].iterations;

  const auto adm = verify_admissibility(system, orbit);
  if (!adm.ok) {
    std::ostringstream msg;
    msg << "solved ray fails admissibility for necklace "
        << word_to_string(word, system.size()) << " (clearance "
        << format_g17(adm.worst_clearance) << ", reflection residual "
        << format_g17(adm.worst_reflection_residual) << ")";
    throw GeometryError(msg.str());
  }
  return orbit;
}

AdmissibilityReport verify_admissibility(const ObstacleSystem& system,
                                         const Orbit& orbit) {
  AdmissibilityReport report;
  const Word& word = orbit.necklace.word;
  const int m = static_cast<int>(word.size());
  if (m < 2 || orbit.points.size() != static_cast<std::size_t>(m)) return report;

  report.worst_clearance = std::numeric_limits<double>::infinity();
  report.worst_reflection_residual = 0.0;

  for (int j = 0; j < m; ++j) {
    const Vec2 a = orbit.points[j];
    const Vec2 b = orbit.points[(j + 1) % m];
    for (int l = 1; l <= system.size(); ++l) {
      if (l == word[j] || l == word[(j + 1) % m]) continue;
      report.worst_clearance = std::min(
          report.worst_clearance, segment_disk_clearance(a, b, system.disk(l)));
    }
  }

  for (int j = 0; j < m; ++j) {
    const Vec2 prev = orbit.points[(j + m - 1) % m];
    const Vec2 next = orbit.points[(j + 1) % m];
    const Vec2 in = normalized(orbit.points[j] - prev);
    const Vec2 out = normalized(next - orbit.points[j]);
    const Disk& d = system.disk(word[j]);
    const Vec2 nu = (orbit.points[j] - d.center) / d.radius;
    const Vec2 reflected = in - nu * (2.0 * dot(in, nu));
    report.worst_reflection_residual =
        std::max({report.worst_reflection_residual,
                  std::abs(out.x - reflected.x), std::abs(out.y - reflected.y)});
  }

  report.ok = report.worst_clearance > 0.0 &&
              report.worst_reflection_residual < 1e-10;
  return report;
}

IteratedRay iterate_orbit(const Orbit& orbit, int k) {
  if (k < 1) throw DomainError("iterate requires k >= 1");
  return {repeat_word(orbit.necklace.word, k), k * orbit.length};
}

Chain solve_chain(const ObstacleSystem& system, const Word& word,
                  const SolveOptions& options) {
  if (word.size() < 2) throw DomainError("chain needs at least 2 reflections");
  if (!is_admissible(word))
    throw DomainError("chain word is not admissible: " +
                      word_to_string(word, system.size()));
  Functional fn{&system, &word, false};
  NewtonResult run = minimize(fn, initial_angles(system, word, false), options);
  if (!run.converged)
    throw SolverError("chain solver did not converge for " +
                      word_to_string(word, system.size()));
  Chain chain;
  chain.word = word;
  chain.angles = run.angles;
  chain.points = fn.points(run.angles);
  chain.length = fn.value(run.angles);
  chain.gradient_residual = run.residual;
  return chain;
}

std::vector<double> cycle_hessian_eigenvalues(const ObstacleSystem& system,
                                              const Orbit& orbit) {
  Functional fn{&system, &orbit.necklace.word, true};
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  fn.gradient_hessian(orbit.angles, grad, hess);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hess);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace billiard
