#include <cmath>

#include "liesphere/critical_curves.hpp"
#include "liesphere/reconstruction.hpp"
#include "liesphere/variational.hpp"
#include "test_support.hpp"

using namespace liesphere;

namespace {

InvariantProfile constant_profile(const std::array<double, 4>& k, int n = 50) {
  InvariantProfile p;
  p.t = uniform_grid(0.0, 1.0, n);
  p.s = p.t;
  p.sigma.assign(p.t.size(), 1.0);
  p.kappa.assign(p.t.size(), k);
  return p;
}

InvariantProfile orbit_profile(double u, double v, int n = 1000) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{u, v}, GroupElement::identity(), 1.0, 2);
  return analyze(*orb.curve, n);
}

ReconstructedCurve off_critical(const GroupElement& g = GroupElement::identity()) {
  return reconstruct_curve(CurvatureSpec::constants({1.0, 0.5, 0.0, 0.95}, 1.0), g, 1000);
}

}  // namespace

TEST(Length, OrbitAndEmptyInterval) {
  const InvariantProfile p = orbit_profile(1.0, 0.0);
  EXPECT_NEAR(functional_length(p, 0.0, 1.0), 1.0, 1e-8);
  EXPECT_EQ(functional_length(p, 0.4, 0.4), 0.0);
  EXPECT_NEAR(functional_length(p, 0.1234, 0.8765), 0.8765 - 0.1234, 1e-8);
  EXPECT_ERROR(functional_length(p, 0.0, 1.5), ErrorKind::OutOfDomain);
  EXPECT_ERROR(functional_length(InvariantProfile{}, 0.0, 0.0), ErrorKind::OutOfDomain);
}

TEST(Length, InvariantUnderGroupAction) {
  auto rng = test_rng(50);
  const GroupElement g = random_group_element(rng);
  const ReconstructedCurve a = off_critical(), b = off_critical(g);
  const double la = functional_length(analyze(*a.curve, 400), 0.1, 0.9);
  const double lb = functional_length(analyze(*b.curve, 400), 0.1, 0.9);
  EXPECT_NEAR(la, lb, 1e-8);
  EXPECT_NEAR(la, 0.8, 1e-8);
}

TEST(Criticality, Witnesses) {
  EXPECT_TRUE(is_critical(constant_profile({1.0, 0.5, 0.0, 0.75}), 1e-8).critical);
  const CriticalityReport r = is_critical(constant_profile({1.0, 0.0, 0.0, 0.0}), 1e-8);
  EXPECT_FALSE(r.critical);
  EXPECT_EQ(r.witnesses, std::vector<std::string>{"kappa4 mismatch"});
  InvariantProfile ramp = constant_profile({1.0, 0.0, 0.0, 1.0});
  for (std::size_t k = 0; k < ramp.size(); ++k) {
    const double k1 = 1.0 + ramp.s[k];
    ramp.kappa[k] = {k1, 0.0, 0.0, k1 * k1};
  }
  const CriticalityReport rr = is_critical(ramp, 1e-8);
  EXPECT_FALSE(rr.critical);
  EXPECT_EQ(rr.witnesses, (std::vector<std::string>{"kappa1 non-constant", "kappa4 non-constant"}));
  EXPECT_NEAR(rr.variation[0], 1.0, 1e-12);
  EXPECT_FALSE(is_critical(constant_profile({0.0, 0.0, 0.0, 0.0}), 1e-8).critical);
  EXPECT_FALSE(is_critical(constant_profile({1.0, 0.2, 0.1, 0.96}), 1e-8).critical);
}

TEST(Momentum, Examples) {
  const MomentumPoint m = momentum_profile({1.0, 0.5, 0.0, 0.75});
  const std::array<double, 14> want = {-1.0 / 3, -1.0 / 6, -1.0 / 6, -1.0 / 3, 1.0 / 3, 1.0 / 3, 0, 0, 0, 0, 0, 0, 0, 0};
  for (int a = 0; a < 14; ++a) EXPECT_NEAR(m.p[a], want[a], 1e-15) << "p" << a + 1;
  const MomentumPoint n = momentum_profile({3.0, 0.0, 0.0, 9.0});
  EXPECT_DOUBLE_EQ(n.p[0], -1.0);
  EXPECT_DOUBLE_EQ(n.p[3], -1.0);
  EXPECT_EQ(n.p[1], 0.0);
  EXPECT_EQ(n.p[2], 0.0);
  EXPECT_ERROR(momentum_profile({0.0, 1.0, 0.0, 0.0}), ErrorKind::DegenerateKappa1);
}

TEST(Momentum, AlgebraicSlotsHoldExactly) {
  auto rng = test_rng(51);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const MomentumPoint m = momentum_profile({0.5 + std::abs(d(rng)), d(rng), d(rng), d(rng)});
    EXPECT_EQ(m.p[8], m.p[9]);
    EXPECT_EQ(m.p[10], m.p[11]);
    EXPECT_EQ(m.p[12], 0.0);
    EXPECT_EQ(m.p[13], 0.0);
  }
}

TEST(Pfaffian, CanonicalFramesAreIntegralCurves) {
  std::array<FourierSeries, 4> f;
  f[0] = {1.2, {-0.2}, {0.0}};
  f[1] = {-0.3, {0.0}, {0.3}};
  f[2] = {0.0, {0.15}, {0.0}};
  f[3] = {0.4, {0.0}, {0.2}};
  const ReconstructedCurve rc = reconstruct_curve(CurvatureSpec::fourier(f, 6.0, 2.0), GroupElement::identity(), 500);
  const CurvePtr bent = perturbed_orbit(CriticalParams{1.0, 0.5}, 1.0, 0.05, 14);
  for (const ParametrizedCurve* c : {rc.curve.get(), bent.get()}) {
    const InvariantProfile p = analyze(*c, 500);
    const PfaffianResidual r = pfaffian_residuals(p.frames, p);
    EXPECT_LE(r.max_mu, 1e-6);
    for (double e : r.eta) EXPECT_NEAR(e, 1.0, 1e-8);
    EXPECT_GE(r.min_eta, 1e-8);
  }
}

TEST(Pfaffian, DifferencedFramesAgree) {
  const InvariantProfile p = orbit_profile(1.0, 0.5, 2000);
  FramePath copy = p.frames;
  // Same frames up to the sign class, so the profile's form is not reused.
  for (Mat6& A : copy.A) A = -A;
  const PfaffianResidual r = pfaffian_residuals(copy, p);
  double mid = 0.0;
  for (std::size_t k = 1; k + 1 < p.size(); ++k)
    for (double m : r.mu[k]) mid = std::max(mid, std::abs(m));
  EXPECT_LE(mid, 1e-5);
}

TEST(Pfaffian, KappaDefectIsLinear) {
  InvariantProfile p = orbit_profile(1.0, 0.5, 300);
  for (auto& k : p.kappa) k[0] += 0.1;
  const PfaffianResidual r = pfaffian_residuals(p.frames, p);
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_NEAR(r.mu[k][8], -0.1 * r.eta[k], 1e-9);
    EXPECT_NEAR(r.mu[k][9], 0.1 * r.eta[k], 1e-9);
    EXPECT_LE(std::abs(r.mu[k][0]), 1e-9);
  }
  EXPECT_ERROR(pfaffian_residuals(FramePath{}, p), ErrorKind::InvalidParams);
}

TEST(Cartan, CriticalOrbitWithMomentumFiber) {
  const InvariantProfile p = orbit_profile(1.0, 0.5, 500);
  const std::vector<MomentumPoint> fiber(p.size(), momentum_profile({1.0, 0.5, 0.0, 0.75}));
  const CartanResidual r = cartan_residuals(p.frames, p, fiber);
  EXPECT_LE(r.max, 1e-8);

  std::vector<MomentumPoint> bad = fiber;
  for (auto& m : bad) m.p[4] = 0.0;
  EXPECT_GE(cartan_residuals(p.frames, p, bad).max_abs[8], 0.1);

  std::vector<MomentumPoint> slot = fiber;
  for (auto& m : slot) m.p[12] = 0.2;
  const CartanResidual rs = cartan_residuals(p.frames, p, slot);
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(rs.values[k][16], 0.2, 1e-8);

  EXPECT_ERROR(cartan_residuals(p.frames, p, std::vector<MomentumPoint>(3)), ErrorKind::InvalidParams);
}

TEST(EulerLagrange, ConstantExamples) {
  const ELResiduals a = el_residuals(constant_profile({1.0, 0.5, 0.0, 0.75}));
  // Differencing constants leaves rounding of order 1e-13.
  EXPECT_LE(a.max, 1e-12);
  const ELResiduals b = el_residuals(constant_profile({1.0, 0.0, 0.0, 0.5}));
  EXPECT_NEAR(b.max_abs[0], 0.5, 1e-12);
  EXPECT_NEAR(b.max_abs[3], 0.5, 1e-12);
  EXPECT_LE(b.max_abs[1] + b.max_abs[2], 1e-12);
  const ELResiduals c = el_residuals(constant_profile({1.0, 0.2, 0.1, 1.0 - 0.09}));
  EXPECT_NEAR(c.max_abs[2], 0.2, 1e-12);
  EXPECT_LE(c.max_abs[0] + c.max_abs[1] + c.max_abs[3], 1e-12);
}

TEST(EulerLagrange, AgreesWithCriticality) {
  for (auto [u, v] : {std::pair{1.0, 0.5}, std::pair{2.0, 1.0}}) {
    const InvariantProfile p = orbit_profile(u, v);
    EXPECT_TRUE(is_critical(p, 1e-6).critical);
    EXPECT_LE(el_residuals(p).max, 1e-6);
  }
  const InvariantProfile q = analyze(*off_critical().curve, 1000);
  EXPECT_FALSE(is_critical(q, 1e-6).critical);
  EXPECT_GE(el_residuals(q).max, 0.1);
}

TEST(Derivative, ExactOnQuadratics) {
  std::vector<double> s = {0.0, 0.1, 0.25, 0.3, 0.7, 0.71, 1.0};
  std::vector<double> f(s.size()), df(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    f[i] = 2.0 - 3.0 * s[i] + 1.5 * s[i] * s[i];
    df[i] = -3.0 + 3.0 * s[i];
  }
  const auto d = derivative_in_s(s, f);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(d[i], df[i], 1e-12) << s[i];
}

TEST(Variation, ZeroDirectionIsExactlyZero) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, 2);
  VariationSpec var;
  var.a = 0.2;
  var.b = 0.8;
  EXPECT_EQ(first_variation(*orb.curve, var, uniform_grid(0.0, 1.0, 300)), 0.0);
  var.u = 0.0;
  EXPECT_ERROR(first_variation(*orb.curve, var, uniform_grid(0.0, 1.0, 300)), ErrorKind::InvalidParams);
  var.u = 1e-5;
  var.b = 1.5;
  EXPECT_ERROR(first_variation(*orb.curve, var, uniform_grid(0.0, 1.0, 300)), ErrorKind::InvalidParams);
}

TEST(Variation, CriticalOrbitIsStationary) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, 2);
  const auto grid = uniform_grid(0.0, 1.0, 500);
  auto rng = test_rng(52);
  std::uniform_real_distribution<double> ends(0.1, 0.45);
  for (int i = 0; i < 10; ++i) {
    VariationSpec var;
    var.Y = random_algebra_element(rng);
    var.a = ends(rng);
    var.b = 1.0 - ends(rng);
    EXPECT_LE(std::abs(first_variation(*orb.curve, var, grid)), 1e-5) << i;
  }
}

TEST(Variation, NonCriticalCurveMoves) {
  const ReconstructedCurve rc = off_critical();
  const auto grid = uniform_grid(0.0, 1.0, 500);
  double best = 0.0;
  for (const AlgebraElement& Y : algebra_basis()) {
    VariationSpec var;
    var.Y = Y;
    var.a = 0.2;
    var.b = 0.8;
    best = std::max(best, std::abs(first_variation(*rc.curve, var, grid)));
  }
  EXPECT_GE(best, 1e-4);
}

TEST(Variation, InvariantUnderGroupAction) {
  auto rng = test_rng(53);
  const GroupElement g = random_group_element(rng);
  const ReconstructedCurve a = off_critical(), b = off_critical(g);
  const auto grid = uniform_grid(0.0, 1.0, 500);
  VariationSpec var;
  var.Y = random_algebra_element(rng);
  var.a = 0.2;
  var.b = 0.8;
  VariationSpec moved = var;
  moved.Y = AlgebraElement(g.matrix() * var.Y.matrix() * g.inverse().matrix());
  EXPECT_NEAR(first_variation(*a.curve, var, grid), first_variation(*b.curve, moved, grid), 1e-5);
}

// d eta = -eta ^ (mu9 + mu10) on a family of canonical frames of varied curves,
// evaluated on (d/dt, d/du) at u = 0 where all mu^a(d/dt) vanish.
TEST(Structure, EtaEquationIsSecondOrder) {
  const CurvePtr base = perturbed_orbit(CriticalParams{1.0, 0.5}, 1.0, 0.05, 14);
  auto rng = test_rng(54);
  const AlgebraElement Y = random_algebra_element(rng);
  const ScalarFunction phi = bump_function(0.1, 0.9);
  auto residual = [&](double h) {
    const auto grid = uniform_grid(0.3, 0.7, static_cast<int>(std::lround(0.4 / h)));
    std::array<InvariantProfile, 3> p;
    const double du = 0.01 * h;
    for (int j = 0; j < 3; ++j) p[j] = analyze(VariedCurve(base, Y, phi, (j - 1) * du), grid);
    const std::size_t n = grid.size();
    std::vector<double> eta_u(n), alpha_u(n);
    for (std::size_t k = 0; k < n; ++k) {
      // Canonical frames are defined up to sign; align with the middle one.
      const Mat6& mid = p[1].frames.A[k];
      auto aligned = [&](const Mat6& A) { return (A - mid).cwiseAbs().maxCoeff() < (A + mid).cwiseAbs().maxCoeff() ? A : Mat6(-A); };
      const Mat6 dA = aligned(p[2].frames.A[k]) - aligned(p[0].frames.A[k]);
      const Mat6 th = group_inverse(p[1].frames.A[k]) * dA / (2 * du);
      eta_u[k] = th(4, 0);
      alpha_u[k] = th(0, 0) + th(1, 1);
    }
    double worst = 0.0, wrong_sign = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double d_eta_u = (eta_u[k + 1] - eta_u[k - 1]) / (2 * h);
      const double d_sigma = (p[2].sigma[k] - p[0].sigma[k]) / (2 * du);
      worst = std::max(worst, std::abs(d_eta_u - d_sigma + p[1].sigma[k] * alpha_u[k]));
      wrong_sign = std::max(wrong_sign, std::abs(d_eta_u - d_sigma - p[1].sigma[k] * alpha_u[k]));
    }
    return std::pair{worst, wrong_sign};
  };
  // The variation is strong, so the asymptotic ratio 4 is reached only below h ~ 0.01.
  const auto [r1, wrong1] = residual(0.005);
  const auto [r2, wrong2] = residual(0.0025);
  EXPECT_LE(r2, 1e-2);
  EXPECT_NEAR(r1 / r2, 4.0, 0.6);
  EXPECT_GE(wrong2, 100.0 * r2);
}
