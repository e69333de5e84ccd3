#include <chrono>
#include <cmath>
#include <algorithm>
// Scratch probe for tuning the default geometry; not part of the build
// deliverable.
#include <cstdio>
#include <vector>

#include "billiard/correlations.hpp"
#include "billiard/linearization.hpp"
#include "billiard/separation.hpp"
#include "billiard/store.hpp"
#include "billiard/thermo.hpp"

using namespace billiard;

int main(int argc, char** argv) {
  const ObstacleSystem system =
      argc > 1 ? load_system_file(argv[1]) : default_system();
  std::printf("min_gap = %.6f  gaps: 12=%.4f 13=%.4f 23=%.4f\n",
              system.min_gap(), system.pair_gap(1, 2), system.pair_gap(1, 3),
              system.pair_gap(2, 3));
  const auto rep = validate_no_eclipse(system.disks());
  std::printf("eclipse worst clearance = %.6f\n", rep.worst_clearance);

  // Gap family decay.
  const auto lattice = lattice_diagnostic(system, 6);
  std::printf("d = %.9f\n", lattice.d);
  for (const auto& row : lattice.rows)
    std::printf("k=%d  T=%.15f  gap=%.6e\n", row.k, row.length, row.gap);
  std::printf("fitted delta = %.6g  r2 = %.6f\n", lattice.fitted_delta,
              lattice.fit_r2);

  // Census to n = 14, timing.
  const auto t0 = std::chrono::steady_clock::now();
  const SpectrumDB db = build_spectrum(system, 14, 4);
  const auto t1 = std::chrono::steady_clock::now();
  std::printf("census rows = %zu  build = %.1f s\n", db.rows.size(),
              std::chrono::duration<double>(t1 - t0).count());
  double max_resid = 0;
  for (const auto& r : db.rows) max_resid = std::max(max_resid, r.residual);
  std::printf("max residual = %.3e\n", max_resid);

  // Entropy / variance.
  const double h = flow_entropy(db, 14);
  const auto pressure0 = pressure(db, 0.0, 12);
  std::printf("pressure(0) @12 = %.6f (log2 = %.6f)\n", pressure0.value,
              std::log(2.0));
  std::printf("flow entropy h = %.6f\n", h);
  const auto var = variance_beta2(db, 14);
  std::printf("beta2: pressure=%.6f orbit=%.6f agreement=%.3f%%\n",
              var.from_pressure, var.from_orbits, 100.0 * var.agreement);
  const auto var12 = variance_beta2(db, 12);
  std::printf("beta2 @12: pressure=%.6f orbit=%.6f\n", var12.from_pressure,
              var12.from_orbits);

  // Counting check at coverage bound.
  const double xcov = census_coverage_bound(system, db);
  const auto count = census_length_count(db, xcov);
  const double ref = std::exp(h * xcov) / (h * xcov);
  std::printf("x_cov=%.3f count=%lld ref=%.1f ratio=%.3f\n", xcov,
              static_cast<long long>(count), ref, count / ref);

  // KS at n = 14.
  const double beta2 = var.from_orbits;
  std::printf("KS(n=14) = %.4f\n", gaussian_shape_ks(db, 14, beta2));
  std::printf("ties n<=10: ");
  for (int n = 2; n <= 10; ++n)
    std::printf("%lld ", static_cast<long long>(tie_count(db, n)));
  std::printf("\n");

  // Theorem-1 style ratios.
  const double beta = std::sqrt(beta2);
  for (const auto& r : pair_asymptotics_report(db, -0.5, 0.5, beta, 8, 14))
    std::printf("n=%d count=%lld predicted=%.1f ratio=%.3f\n", r.n,
                static_cast<long long>(r.count), r.predicted, r.ratio);

  // Window profile at n=14. Half-step offset keeps the z = 0 window away
  // from the exact-tie atom (self pairs + reversal partners).
  std::vector<double> zs;
  const double span = 2.5 * std::sqrt(beta2 * 14.0);
  for (int i = 0; i < 40; ++i)
    zs.push_back(-span + 2 * span * (i + 0.5) / 40.0);
  const auto prof = window_profile_report(db, 14, -0.5, 0.5, beta,
                                          parse_eps_rule("n^-2"), zs);
  std::printf("profile r2 = %.4f  sup dev eq = %.4f\n", prof.profile_r2,
              prof.sup_deviation_eq);

  // Complex radius scan.
  for (int k : {4, 5, 6})
    for (double t : {0.0, 2.0, 5.0, 10.0, 20.0, 50.0})
      std::printf("radius(t=%.0f, k=%d) = %.6f\n", t, k,
                  complex_spectral_radius(system, t, k));

  // Separation scans.
  const auto sets = build_spectrum_sets(db);
  for (double mult : {0.0, 1.0, 1.5, 10.0}) {
    const auto iso = check_isolation(sets, mult * h);
    std::printf("check_S(delta=%.2fh): fraction=%.4f\n", mult, iso.fraction);
  }
  const auto flags = near_rational_ratios(sets, 50, 1e-9);
  std::printf("rational flags = %zu\n", flags.size());
  return 0;
}
