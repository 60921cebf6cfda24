// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "liesphere/critical_curves.hpp"
#include "liesphere/suites.hpp"
#include "liesphere/variational.hpp"

using namespace liesphere;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

Outcome algebra_and_exponential() {
  std::mt19937_64 rng(101);
  double alg = 0.0, grp = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AlgebraElement X = random_algebra_element(rng);
    alg = std::max(alg, algebra_residual(X.matrix()));
    grp = std::max(grp, group_residual(mat_exp(X, 0.1).matrix()));
  }
  return {alg <= 1e-13 && grp <= 1e-9, "algebra " + format_short(alg) + ", exp " + format_short(grp)};
}

Outcome gauge_inverses() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const GaugeElement g = random_gauge_element(rng);
    const Mat6 prod = gauge_inverse(g).matrix() * gauge_assemble(g).matrix();
    worst = std::max(worst, max_abs(prod - Mat6::Identity()));
  }
  return {worst <= 1e-12, "max |g^-1 g - I| " + format_short(worst)};
}

Outcome orbit_invariants() {
  double worst = 0.0;
  for (double u : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
    for (double v : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      const CriticalOrbit orb = critical_orbit(CriticalParams{u, v}, GroupElement::identity(), 1.0, 1000);
      const InvariantProfile prof = analyze(*orb.curve, orb.frames.t);
      const std::array<double, 4> expect{std::abs(u), v, 0.0, u * u - v * v};
      for (const auto& k : prof.kappa)
        for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(k[i] - expect[i]));
    }
  }
  return {worst <= 1e-6, "30 orbits, max kappa error " + format_short(worst)};
}

Outcome from_suite(const SuiteReport& r) {
  return {r.pass, std::to_string(r.lines.size()) + " cases, headline " + format_short(r.max_value)};
}

Outcome integrator_order() {
  FourierSeries k1{1.0, {0.0}, {0.5}}, k2{0.2, {}, {}}, k3{0.0, {0.3}, {0.0}}, k4{0.3, {}, {}};
  const CurvatureSpec spec = CurvatureSpec::fourier({k1, k2, k3, k4}, std::numbers::pi / 4.0, 4.0);
  const Mat6 ref = integrate_frame(spec, GroupElement::identity(), 8000).A.back();
  auto err = [&](int n) { return max_abs(integrate_frame(spec, GroupElement::identity(), n).A.back() - ref); };
  const double ratio = err(250) / err(500);
  return {ratio >= 12.0 && ratio <= 20.0, "error ratio 250/500 steps " + format_short(ratio)};
}

Outcome error_taxonomy() {
  auto kind_of = [](const CurvePtr& c) {
    try {
      analyze(*c, 400);
    } catch (const Error& e) {
      return std::string(to_string(e.kind()));
    }
    return std::string("none");
  };
  const std::string got[4] = {kind_of(legendre_segment_curve()), kind_of(rank_deficient_orbit()),
                              kind_of(reversed_orbit()), kind_of(nongeneric_orbit())};
  const std::string want[4] = {std::string(to_string(ErrorKind::Transversality)),
                               std::string(to_string(ErrorKind::Nondegeneracy)),
                               std::string(to_string(ErrorKind::Orientation)),
                               std::string(to_string(ErrorKind::Genericity))};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 4; ++i) {
    ok = ok && got[i] == want[i];
    detail += (i ? ", " : "") + got[i];
  }
  return {ok, detail};
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"algebra and exponential", 5.0, algebra_and_exponential},
      {"gauge inverse", 1.0, gauge_inverses},
      {"critical orbit invariants", 30.0, orbit_invariants},
      {"reconstruction round trip", 60.0, [] { return from_suite(run_roundtrip_suite(4)); }},
      {"group invariance", 60.0, [] { return from_suite(run_invariance_suite(5, 20)); }},
      {"cartan residuals", 10.0, [] { return from_suite(run_cartan_suite()); }},
      {"criticality classification", 300.0, [] { return from_suite(run_criticality_suite()); }},
      {"integrator order", 10.0, integrator_order},
      {"error taxonomy", 5.0, error_taxonomy},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = out.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %d %s: %s (%.2f s of %.0f s%s)\n", pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
