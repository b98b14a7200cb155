// Release gate. Each criterion prints one PASS/FAIL line with its runtime;
// the exit status is the number of failures. Tolerances are frozen here on
// purpose; loosening them is a release decision, not a test fix.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <geomphase/angles.hpp>
#include <geomphase/blochgeo.hpp>
#include <geomphase/compare.hpp>
#include <geomphase/fringes.hpp>
#include <geomphase/pancharatnam.hpp>
#include <geomphase/qstate.hpp>

using namespace geomphase;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

// body fills `detail` and returns pass/fail; a throw is a failure. A stated
// time budget is part of the criterion.
template <typename Body>
void criterion(int id, const char* label, double budget_s, Body body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0.0 && secs > budget_s) {
        ok = false;
        detail += detail.empty() ? "" : "; ";
        detail += "over the " + fmt("%.1f", budget_s) + " s budget";
    }
    std::printf("criterion %d/8: %-64s %s [%7.3f s]\n", id, label, ok ? "PASS" : "FAIL", secs);
    if (!detail.empty()) std::printf("    %s\n", detail.c_str());
    if (!ok) ++failures;
}

}  // namespace

int main() {
    criterion(1, "closed-form total phase equals the overlap argument, 1e4 draws", 1.0,
              [](std::string& detail) {
                  std::mt19937_64 rng(20260817);
                  std::uniform_real_distribution<double> uT(0.0, 1.0);
                  std::uniform_real_distribution<double> uphi(-kTwoPi, kTwoPi);
                  double worst = 0.0;
                  for (int i = 0; i < 10000; ++i) {
                      const double T = uT(rng);
                      const double phi1 = uphi(rng);
                      const double phi2 = uphi(rng);
                      const complexd z =
                          std::polar(1.0, phi1) + std::polar(std::sqrt(T), phi2);
                      const double got = total_phase_closed_form(T, phi1, phi2);
                      worst = std::max(worst,
                                       std::abs(wrap_principal(got - std::arg(z))));
                  }
                  detail = "max |difference mod 2pi| = " + fmt("%.3e", worst);
                  return worst < 1e-12;
              });

    criterion(2, "zero-dynamical split cancels the dynamical phase, 1e3 draws", 0.1,
              [](std::string& detail) {
                  std::mt19937_64 rng(20260818);
                  std::uniform_real_distribution<double> uT(0.0, 1.0);
                  std::uniform_real_distribution<double> ud(-20.0 * kPi, 20.0 * kPi);
                  double worst = 0.0;
                  for (int i = 0; i < 1000; ++i) {
                      const double T = uT(rng);
                      const auto [phi1, phi2] = zero_dynamical_split(ud(rng), T);
                      worst = std::max(worst, std::abs(dynamical_phase(T, phi1, phi2)));
                  }
                  detail = "max |dynamical phase| = " + fmt("%.3e", worst);
                  return worst <= 1e-14;
              });

    criterion(3, "cyclic loop area matches 2*pi*(1-cos(theta)), 50 latitudes", 2.0,
              [](std::string& detail) {
                  // theta = 0 has no lower path and no loop; the grid spans
                  // (0, pi/2] instead.
                  double worst = 0.0;
                  for (int i = 1; i <= 50; ++i) {
                      const double theta = 0.5 * kPi * i / 50.0;
                      const double T = std::tan(0.5 * theta) * std::tan(0.5 * theta);
                      const double omega = signed_solid_angle(build_path(T, kTwoPi));
                      worst = std::max(worst,
                                       std::abs(omega - kTwoPi * (1.0 - std::cos(theta))));
                  }
                  detail = "max |area error| = " + fmt("%.3e", worst);
                  return worst < 1e-8;
              });

    criterion(4, "interferometric and solid-angle routes agree on a 64-grid", 10.0,
              [](std::string& detail) {
                  double worst = 0.0;
                  std::size_t skipped = 0;
                  for (double T : {0.05, 0.118, 0.125, 0.3, 0.5, 0.9}) {
                      const CompareReport rep = compare_geometric_phase(T, 64);
                      worst = std::max(worst, rep.max_abs_deviation);
                      skipped += rep.skipped.size();
                  }
                  detail = "max |route difference| = " + fmt("%.3e", worst) + ", skipped points: " +
                           std::to_string(skipped);
                  return worst < 1e-6 && skipped == 0;
              });

    criterion(5, "one-eighth-transmission sweep: shape and frozen landmarks", 0.0,
              [](std::string& detail) {
                  const SweepResult r = sweep(0.125, 65);  // grid hits pi/2, pi, 2pi exactly
                  std::vector<double> g;
                  for (const auto& d : r.decompositions) {
                      if (!d) return false;
                      g.push_back(d->geometric);
                  }
                  std::size_t amax = 0, amin = 0;
                  for (std::size_t i = 1; i < g.size(); ++i) {
                      if (g[i] > g[amax]) amax = i;
                      if (g[i] < g[amin]) amin = i;
                  }
                  bool shape = std::abs(g.front()) < 1e-12;
                  shape = shape && amax > 0 && amax < amin && g[amax] > 0.0;
                  for (std::size_t i = 0; i < amax; ++i) shape = shape && g[i] < g[i + 1];
                  for (std::size_t i = amax; i < amin; ++i) shape = shape && g[i] > g[i + 1];
                  const bool l1 = std::abs(g[16] - 0.16530398425468895) < 1e-9;
                  const bool l2 = std::abs(g[32] - (-kPi / 9.0)) < 1e-9;
                  const bool l3 = std::abs(g[64] - (-2.0 * kPi / 9.0)) < 1e-9;
                  detail = "rise to " + fmt("%.6f", g[amax]) + " at index " +
                           std::to_string(amax) + ", fall to " + fmt("%.6f", g[amin]) +
                           " at index " + std::to_string(amin) + "; value(pi/2) = " +
                           fmt("%.12f", g[16]) + ", value(pi) = " + fmt("%.12f", g[32]) +
                           ", value(2pi) = " + fmt("%.12f", g[64]);
                  return shape && l1 && l2 && l3;
              });

    criterion(6, "fringe fits return the overlap phase, clean and under noise", 30.0,
              [](std::string& detail) {
                  const std::vector<double> eta = default_eta_grid(32);
                  std::mt19937_64 rng(20260819);
                  std::uniform_real_distribution<double> uT(0.05, 0.95);
                  std::uniform_real_distribution<double> uphi(-kPi, kPi);
                  double worst = 0.0;
                  for (int i = 0; i < 1000; ++i) {
                      InterferometerConfig cfg;
                      cfg.T = uT(rng);
                      cfg.phi1 = uphi(rng);
                      cfg.phi2 = uphi(rng);
                      const TwoLevelState ref = project_q(TwoLevelState{1.0, 0.0}).projected;
                      const TwoLevelState fin = project_q(evolve_second_loop(cfg)).projected;
                      const double truth = pancharatnam_phase(ref, fin);
                      const double fitted = fit_sinusoid(synthesize(cfg, eta)).phase;
                      worst = std::max(worst, std::abs(wrap_principal(fitted - truth)));
                  }
                  const bool clean_ok = worst < 1e-10;

                  InterferometerConfig cfg;
                  cfg.T = 0.118;
                  const auto [p1, p2] = zero_dynamical_split(0.5 * kPi, cfg.T);
                  cfg.phi1 = p1;
                  cfg.phi2 = p2;
                  const FringeScan clean = synthesize(cfg, eta);
                  const double truth = fit_sinusoid(clean).phase;
                  int within = 0;
                  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
                      const double fitted =
                          fit_sinusoid(poisson_sample(clean, 1e6, seed)).phase;
                      if (std::abs(wrap_principal(fitted - truth)) < 3e-3) ++within;
                  }
                  detail = "clean max |error| = " + fmt("%.3e", worst) +
                           "; noisy within 3 mrad: " + std::to_string(within) + "/1000";
                  return clean_ok && within >= 990;
              });

    criterion(7, "reduced lower-arm contrast strictly flattens the sweep", 0.0,
              [](std::string& detail) {
                  auto extremum = [](const FlatteningCurve& c) {
                      double m = 0.0;
                      for (const FlatteningPoint& p : c.points)
                          m = std::max(m, std::abs(p.phi_geo));
                      return m;
                  };
                  const double ideal = extremum(flattening_curve(0.118, Contrast{}, 65, 32));
                  const double flat =
                      extremum(flattening_curve(0.118, Contrast{1.0, 0.8, 1.0}, 65, 32));
                  detail = "extremal |phase|: ideal contrast " + fmt("%.6f", ideal) +
                           ", reduced contrast " + fmt("%.6f", flat);
                  return flat < ideal;
              });

    criterion(8, "the singular setting fails loudly on both routes, once each", 0.0,
              [](std::string& detail) {
                  bool undef = false, ambig = false;
                  try {
                      geometric_phase_interferometric(1.0, kPi);
                  } catch (const UndefinedPhase& e) {
                      undef = e.code() == "UndefinedPhase";
                  }
                  try {
                      build_path(1.0, kPi);
                  } catch (const AmbiguousGeodesic& e) {
                      ambig = e.code() == "AmbiguousGeodesic";
                  }
                  const CompareReport rep = compare_geometric_phase(1.0, 65);
                  bool recorded = rep.skipped.size() == 1 && rep.skipped[0].index == 32;
                  if (recorded) {
                      const auto& rs = rep.skipped[0].reasons;
                      recorded = rs.size() == 2 && rs[0] == "UndefinedPhase" &&
                                 rs[1] == "AmbiguousGeodesic";
                  }
                  detail = std::string("UndefinedPhase: ") + (undef ? "raised" : "MISSING") +
                           "; AmbiguousGeodesic: " + (ambig ? "raised" : "MISSING") +
                           "; compare skip record: " + (recorded ? "present" : "MISSING");
                  return undef && ambig && recorded;
              });

    if (failures == 0) {
        std::printf("all 8 criteria passed\n");
    } else {
        std::printf("%d of 8 criteria FAILED\n", failures);
    }
    return failures;
}
