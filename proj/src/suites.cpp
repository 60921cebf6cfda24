#include "liesphere/suites.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "liesphere/critical_curves.hpp"
#include "liesphere/io.hpp"
#include "liesphere/variational.hpp"

namespace liesphere {

namespace {

constexpr int kSteps = 1000;
constexpr int kVariationSteps = 500;
constexpr double kKappaTol = 1e-6;
constexpr double kCongruenceTol = 1e-8;
constexpr double kInvarianceTol = 1e-8;
constexpr double kCartanTol = 1e-6;
constexpr double kCartanPerturbed = 1e-2;
constexpr double kCriticalTol = 1e-6;
constexpr double kVariationTol = 1e-5;

FourierSeries series(double a0, std::vector<double> a, std::vector<double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  return FourierSeries{a0, a, b};
}

CurvatureSpec periodic(const std::array<FourierSeries, 4>& f, double length) {
  return CurvatureSpec::fourier(f, 2.0 * std::numbers::pi, length);
}

double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

double up_to_sign(const Mat6& a, const Mat6& b) { return std::min(max_abs(a - b), max_abs(a + b)); }

std::string line(const std::string& head, bool ok, const std::string& body) {
  return head + (ok ? " ok: " : " FAIL: ") + body;
}

}  // namespace

std::string format_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::vector<CurvatureSpec> roundtrip_specs() {
  return {
      periodic({series(1.0, {}, {0.2}), series(0.0, {0.3}, {}), series(0.0, {}, {0.0, 0.1}), series(0.5, {0.1}, {})}, 2.0),
      periodic({series(0.8, {0.2}, {}), series(-0.4, {}, {0.1}), series(0.2, {0.0, -0.1}, {}), series(0.6, {}, {-0.3})},
               1.5),
      periodic({series(1.5, {}, {0.0, 0.0, 0.3}), series(0.0, {}, {0.2}), series(-0.1, {0.05}, {}),
                series(1.0, {0.0, 0.2}, {})},
               1.0),
      periodic({series(0.6, {}, {0.0, 0.1}), series(0.0, {0.0, 0.0, 0.5}, {}), series(0.0, {}, {0.3}),
                series(-0.2, {}, {0.0, 0.4})},
               2.0),
      periodic({series(1.2, {-0.2}, {}), series(-0.3, {}, {0.0, 0.3}), series(0.0, {0.15}, {}),
                series(0.9, {}, {0.0, 0.0, 0.1})},
               1.8),
  };
}

std::vector<LabelledSpec> criticality_specs() {
  std::vector<LabelledSpec> out;
  const std::array<std::array<double, 2>, 6> uv = {{{1.0, 0.5}, {1.0, 0.0}, {0.5, -0.5}, {2.0, 1.0}, {1.5, 0.3}, {0.7, -0.2}}};
  for (const auto& p : uv) {
    const double u = p[0], v = p[1];
    out.push_back({"critical (" + format_number(u) + ", " + format_number(v) + ")",
                   CurvatureSpec::constants({u, v, 0.0, u * u - v * v}, 1.0), true});
  }
  out.push_back({"kappa4 off by 0.2", CurvatureSpec::constants({1.0, 0.5, 0.0, 0.95}, 1.0), false});
  out.push_back({"kappa3 = 0.1", CurvatureSpec::constants({1.0, 0.2, 0.1, 0.91}, 1.0), false});
  out.push_back({"kappa4 = 0.5", CurvatureSpec::constants({1.0, 0.0, 0.0, 0.5}, 1.0), false});
  out.push_back({"kappa1 varying",
                 periodic({series(1.0, {}, {0.2}), series(0.5, {}, {}), series(0.0, {}, {}), series(0.75, {}, {})}, 1.0),
                 false});
  out.push_back({"kappa2 varying",
                 periodic({series(1.0, {}, {}), series(0.5, {0.2}, {}), series(0.0, {}, {}), series(0.75, {}, {})}, 1.0),
                 false});
  out.push_back({"kappa3 varying",
                 periodic({series(1.2, {}, {}), series(-0.3, {}, {}), series(0.0, {}, {0.1}), series(1.35, {}, {})}, 1.0),
                 false});
  return out;
}

SuiteReport run_roundtrip_suite(std::uint64_t seed) {
  SuiteReport rep;
  std::mt19937_64 rng(seed);
  const auto specs = roundtrip_specs();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const CurvatureSpec& spec = specs[i];
    const std::string head = "roundtrip spec " + std::to_string(i + 1);
    try {
      const ReconstructedCurve a = reconstruct_curve(spec, GroupElement::identity(), kSteps);
      const InvariantProfile pa = analyze(*a.curve, a.frames.t);
      double dk = 0.0, ds = 0.0;
      for (std::size_t k = 0; k < pa.size(); ++k) {
        const auto want = spec.at(pa.t[k]);
        for (int j = 0; j < 4; ++j) dk = std::max(dk, std::abs(pa.kappa[k][j] - want[j]));
        ds = std::max(ds, std::abs(pa.s[k] - pa.t[k]));
      }
      const GroupElement g = random_group_element(rng);
      const ReconstructedCurve b = reconstruct_curve(spec, g, kSteps);
      const InvariantProfile pb = analyze(*b.curve, b.frames.t);
      double dg = std::numeric_limits<double>::infinity();
      bool certified = true;
      try {
        const GroupElement rec = congruence_transform(pa.frames, pb.frames, kCongruenceTol);
        dg = up_to_sign(rec.matrix(), g.matrix());
      } catch (const Error&) {
        certified = false;
      }
      const bool ok = dk <= kKappaTol && ds <= kKappaTol && certified && dg <= kCongruenceTol;
      rep.pass = rep.pass && ok;
      rep.max_value = std::max(rep.max_value, dk);
      rep.lines.push_back(line(head, ok,
                               "max|dkappa| = " + format_short(dk) + ", max|s - t| = " + format_short(ds) +
                                   (certified ? ", |g_rec - g| = " + format_short(dg) : ", congruence not certified")));
    } catch (const Error& e) {
      rep.pass = false;
      rep.lines.push_back(line(head, false, e.what()));
    }
  }
  return rep;
}

SuiteReport run_invariance_suite(std::uint64_t seed, int count) {
  SuiteReport rep;
  std::mt19937_64 rng(seed);
  const CriticalOrbit orbit = critical_orbit({1.2, 0.3}, GroupElement::identity(), 1.0, 2);
  const ReconstructedCurve rec = reconstruct_curve(roundtrip_specs()[0], GroupElement::identity(), kSteps);
  const std::array<std::pair<std::string, CurvePtr>, 2> curves = {{{"orbit", orbit.curve}, {"reconstructed", rec.curve}}};
  std::vector<GroupElement> gs;
  for (int i = 0; i < count; ++i) gs.push_back(random_group_element(rng));
  for (const auto& [name, curve] : curves) {
    const std::vector<double> grid = uniform_grid(curve->t_min(), curve->t_max(), kSteps);
    const InvariantProfile base = analyze(*curve, grid);
    const double len = functional_length(base, grid.front(), grid.back());
    double worst = 0.0, worst_len = 0.0;
    bool ok = true;
    for (const GroupElement& g : gs) {
      try {
        const TransformedCurve moved(g, curve);
        const InvariantProfile p = analyze(moved, grid);
        for (std::size_t k = 0; k < p.size(); ++k) {
          worst = std::max(worst, std::abs(p.s[k] - base.s[k]));
          for (int j = 0; j < 4; ++j) worst = std::max(worst, std::abs(p.kappa[k][j] - base.kappa[k][j]));
        }
        worst_len = std::max(worst_len, std::abs(functional_length(p, grid.front(), grid.back()) - len));
      } catch (const Error& e) {
        ok = false;
        rep.lines.push_back(line("invariance " + name, false, e.what()));
      }
    }
    ok = ok && worst <= kInvarianceTol && worst_len <= kInvarianceTol;
    rep.pass = rep.pass && ok;
    rep.max_value = std::max(rep.max_value, worst);
    rep.lines.push_back(line("invariance " + name, ok,
                             std::to_string(count) + " group elements, max|d(s, kappa)| = " + format_short(worst) +
                                 ", max|dL| = " + format_short(worst_len)));
  }
  return rep;
}

SuiteReport run_cartan_suite() {
  SuiteReport rep;
  const std::array<CriticalParams, 4> params = {{{1.0, 0.5}, {1.0, 0.0}, {-0.5, 0.5}, {2.0, -1.0}}};
  for (const CriticalParams& cp : params) {
    const std::string head = "cartan (" + format_number(cp.u) + ", " + format_number(cp.v) + ")";
    try {
      const CriticalOrbit o = critical_orbit(cp, GroupElement::identity(), 1.0, 2);
      const InvariantProfile prof = analyze(*o.curve, kSteps);
      std::vector<MomentumPoint> fiber;
      for (const auto& k : prof.kappa) fiber.push_back(momentum_profile(k));
      const CartanResidual r = cartan_residuals(prof.frames, prof, fiber);
      const double base = std::max(r.max, r.pfaffian_max);
      double weakest = std::numeric_limits<double>::infinity();
      for (int a = 0; a < 14; ++a) {
        std::vector<MomentumPoint> bent = fiber;
        for (auto& m : bent) m.p[a] += 0.1;
        weakest = std::min(weakest, cartan_residuals(prof.frames, prof, bent).max);
      }
      const bool ok = base <= kCartanTol && weakest > kCartanPerturbed;
      rep.pass = rep.pass && ok;
      rep.max_value = std::max(rep.max_value, base);
      rep.lines.push_back(line(head, ok,
                               "max residual " + format_short(base) + " <= 1e-6, smallest perturbed max " +
                                   format_short(weakest) + " > 1e-2"));
    } catch (const Error& e) {
      rep.pass = false;
      rep.lines.push_back(line(head, false, e.what()));
    }
  }
  return rep;
}

SuiteReport run_criticality_suite() {
  SuiteReport rep;
  for (const LabelledSpec& ls : criticality_specs()) {
    const std::string head = "criticality " + ls.name;
    try {
      const ReconstructedCurve rc = reconstruct_curve(ls.spec, GroupElement::identity(), kSteps);
      const InvariantProfile prof = analyze(*rc.curve, rc.frames.t);
      const CriticalityReport crit = is_critical(prof, kCriticalTol);
      const ELResiduals el = el_residuals(prof);
      const std::vector<double> grid = uniform_grid(0.0, ls.spec.length, kVariationSteps);
      const double a = grid[static_cast<std::size_t>(0.15 * kVariationSteps)];
      const double b = grid[static_cast<std::size_t>(0.85 * kVariationSteps)];
      double dl = 0.0;
      int arg = -1;
      for (int i = 0; i < 15; ++i) {
        const double d = std::abs(first_variation(*rc.curve, VariationSpec{algebra_basis()[i], a, b, 1e-5}, grid));
        if (d > dl) {
          dl = d;
          arg = i;
        }
      }
      const bool by_el = el.max <= kCriticalTol;
      const bool by_var = dl <= kVariationTol;
      const bool var_clear = by_var || dl >= 10.0 * kVariationTol;
      const bool ok = crit.critical == ls.critical && by_el == ls.critical && by_var == ls.critical && var_clear;
      rep.pass = rep.pass && ok;
      if (ls.critical) rep.max_value = std::max(rep.max_value, dl);
      std::string why;
      for (const auto& w : crit.witnesses) why += (why.empty() ? "" : ", ") + w;
      rep.lines.push_back(line(head, ok,
                               std::string(crit.critical ? "critical" : "not critical (" + why + ")") +
                                   ", max el residual " + format_short(el.max) + ", max|dL| " + format_short(dl) +
                                   " (basis " + std::to_string(arg) + ")"));
    } catch (const Error& e) {
      rep.pass = false;
      rep.lines.push_back(line(head, false, e.what()));
    }
  }
  return rep;
}

}  // namespace liesphere
