#include <cmath>
#include <numbers>

#include "liesphere/critical_curves.hpp"
#include "liesphere/moving_frame.hpp"
#include "liesphere/reconstruction.hpp"
#include "test_support.hpp"

using namespace liesphere;

namespace {

double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

std::array<double, 4> orbit_kappa(double u, double v) { return {u, v, 0.0, u * u - v * v}; }

double kappa_error(const InvariantProfile& p, const std::array<double, 4>& want, std::size_t from = 0,
                   std::size_t to = 0) {
  if (to == 0) to = p.size();
  double e = 0.0;
  for (std::size_t k = from; k < to; ++k)
    for (int j = 0; j < 4; ++j) e = std::max(e, std::abs(p.kappa[k][j] - want[j]));
  return e;
}

CurvatureSpec fourier_spec() {
  std::array<FourierSeries, 4> f;
  f[0] = {1.2, {-0.2}, {0.0}};
  f[1] = {-0.3, {0.0, 0.0}, {0.0, 0.3}};
  f[2] = {0.0, {0.15}, {0.0}};
  f[3] = {0.4, {0.0}, {0.2}};
  return CurvatureSpec::fourier(f, 2.0 * std::numbers::pi, 2.0);
}

CurvePtr constant_curve() {
  return std::make_shared<AnalyticCurve>(
      [](const Jet& t, std::array<Jet, 4>& v, std::array<Jet, 4>& xi) {
        const Jet z(0.0, t.order()), one(1.0, t.order());
        v = {one, z, z, z};
        xi = {z, one, z, z};
      },
      0.0, 1.0);
}

// Checks the normalizations reached after each stage of the ladder.
void expect_stage_conditions(const NodeStages& st, const NodeResult& r, double tol) {
  const Mat6 t1 = st.theta[1].value();
  EXPECT_LE(theta_omega4(t1).cwiseAbs().maxCoeff(), tol);
  const Mat6 t2 = st.theta[2].value();
  EXPECT_LE((theta_p_block(t2) / theta_rho(t2) - Mat2::Identity()).cwiseAbs().maxCoeff(), tol);
  EXPECT_LE(theta_omega4(t2).cwiseAbs().maxCoeff(), tol);
  EXPECT_NEAR(theta_rho(t2), r.sigma, tol);
  const Mat6 t3 = st.theta[3].value();
  EXPECT_NEAR(theta_theta1(t3).trace(), 0.0, tol);
  const Mat6 t4 = st.theta[4].value();
  const double sigma = theta_rho(t4);
  EXPECT_NEAR(0.5 * (t4(0, 1) + t4(1, 0)) / sigma, 0.0, tol);
  EXPECT_NEAR(t4(1, 1) / sigma, -r.kappa[0], tol);
  EXPECT_GT(r.kappa[0], 0.0);
  // The final form is sigma K(kappa).
  EXPECT_LE(max_abs(t4 - sigma * curvature_block_matrix(r.kappa)), tol * std::max(1.0, sigma));
  EXPECT_LE(max_abs(t4 - r.theta), 0.0);
}

}  // namespace

TEST(Grid, UniformGrid) {
  const auto g = uniform_grid(0.0, 2.0, 4);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 2.0);
  EXPECT_DOUBLE_EQ(g[1], 0.5);
  EXPECT_ERROR(uniform_grid(0.0, 1.0, 0), ErrorKind::InvalidParams);
  EXPECT_ERROR(uniform_grid(1.0, 1.0, 4), ErrorKind::InvalidParams);
}

TEST(Theta, SlotAccessors) {
  Mat6 t = Mat6::Zero();
  for (int i = 0; i < 36; ++i) t.data()[i] = i;
  EXPECT_EQ(theta_rho(t), t(4, 0));
  EXPECT_EQ(theta_omega4(t), Mat2(t.block<2, 2>(2, 0)));
  EXPECT_EQ(theta_p_block(t), Mat2(t.block<2, 2>(2, 4)));
  EXPECT_EQ(theta_theta1(t), Mat2(t.block<2, 2>(0, 0)));
}

TEST(Lift, OrientationFlipIsInGroup) {
  const Mat6& f = orientation_flip();
  EXPECT_EQ(group_residual(f), 0.0);
  EXPECT_EQ(f.determinant(), 1.0);
  EXPECT_EQ(f * f, Mat6::Identity());
}

TEST(Lift, GreatCircle) {
  const CurvePtr c = great_circle_curve();
  const auto grid = uniform_grid(0.0, 2.0 * std::numbers::pi, 400);
  const FramePath F = natural_lift(*c, grid);
  ASSERT_EQ(F.size(), grid.size());
  for (std::size_t k = 0; k < F.size(); ++k) {
    EXPECT_LE(group_residual(F.A[k]), 1e-9);
    EXPECT_GT(F.A[k].determinant(), 0.0);
    const CurveSample s = c->sample(grid[k]);
    EXPECT_TRUE(planes_equal(IsotropicPlane{F.A[k].col(0), F.A[k].col(1)}, embed_t1s3({s.v, s.xi})));
    if (k > 0) {
      EXPECT_LE(max_abs(F.A[k] - F.A[k - 1]), 0.05);
    }
  }
}

TEST(Lift, ConstantCurveAndSingleNode) {
  const CurvePtr c = constant_curve();
  const FramePath F = natural_lift(*c, uniform_grid(0.0, 1.0, 10));
  for (const Mat6& A : F.A) EXPECT_EQ(A, F.A.front());
  const FramePath one = natural_lift(*c, {0.5});
  EXPECT_EQ(one.size(), 1u);
  EXPECT_ERROR(natural_lift(*c, {0.5, 2.0}), ErrorKind::OutOfDomain);
  EXPECT_ERROR(natural_lift(*c, {0.5, 0.4}), ErrorKind::InvalidParams);
}

TEST(Pullback, OrbitIsSecondOrder) {
  const AlgebraElement X = generator(CriticalParams{1.0, 0.5});
  auto error = [&](int n) {
    const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, n);
    const ThetaSample th = mc_pullback(orb.frames);
    double e = 0.0, res = 0.0;
    for (const Mat6& t : th.theta) {
      e = std::max(e, max_abs(t - X.matrix()));
      res = std::max(res, algebra_residual(t));
    }
    return std::pair{e, res};
  };
  const auto [e1, r1] = error(201);
  const auto [e2, r2] = error(401);
  EXPECT_LE(e2, 1e-4);
  EXPECT_NEAR(e1 / e2, 4.0, 0.5);
  EXPECT_GE(r1 / r2, 3.0);
}

TEST(Pullback, ConstantPathIsZero) {
  FramePath F;
  F.t = uniform_grid(0.0, 1.0, 10);
  F.A.assign(F.t.size(), mat_exp(generator(CriticalParams{1.0, 0.0}), 0.3).matrix());
  for (const Mat6& t : mc_pullback(F).theta) EXPECT_LE(max_abs(t), 1e-13);
}

TEST(Reduce, OrbitFramePaths) {
  for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{1.0, 0.5}}) {
    const CriticalOrbit orb = critical_orbit(CriticalParams{u, v}, GroupElement::identity(), 1.0, 1001);
    const Reduction red = reduce_to_canonical(orb.frames, mc_pullback(orb.frames));
    EXPECT_LE(kappa_error(red.profile, orbit_kappa(u, v)), 1e-6);
    for (std::size_t k = 0; k < red.profile.size(); ++k) EXPECT_NEAR(red.profile.s[k], red.profile.t[k], 1e-8);
    for (std::size_t k = 0; k < red.profile.size(); k += 50) {
      EXPECT_LE(theta_omega4(red.stages[1].theta[k]).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((theta_p_block(red.stages[2].theta[k]) / theta_rho(red.stages[2].theta[k]) - Mat2::Identity())
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
      EXPECT_NEAR(theta_theta1(red.stages[3].theta[k]).trace(), 0.0, 1e-12);
      EXPECT_LE(group_residual(red.frames.A[k]), 1e-9);
    }
  }
}

TEST(Reduce, SizeMismatchAndCoarseGrid) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.0}, GroupElement::identity(), 1.0, 101);
  ThetaSample th = mc_pullback(orb.frames);
  th.theta.pop_back();
  EXPECT_ERROR(reduce_to_canonical(orb.frames, th), ErrorKind::InvalidParams);
  const CriticalOrbit small = critical_orbit(CriticalParams{1.0, 0.0}, GroupElement::identity(), 1.0, 5);
  EXPECT_ERROR(reduce_to_canonical(small.frames, mc_pullback(small.frames)), ErrorKind::GridTooCoarse);
}

TEST(Reduce, LegendreDirectionFailsTransversality) {
  const CurvePtr c = legendre_segment_curve();
  const auto grid = uniform_grid(c->t_min(), c->t_max(), 400);
  const FramePath F = natural_lift(*c, grid);
  // Nodes whose stencil reaches the singular point fail first.
  try {
    reduce_to_canonical(F, mc_pullback(F));
    ADD_FAILURE() << "expected a ladder error";
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::Transversality || e.kind() == ErrorKind::Nondegeneracy ||
                e.kind() == ErrorKind::Orientation);
    const std::string msg = e.what();
    const double t = std::stod(msg.substr(msg.find("at t = ") + 7));
    EXPECT_NEAR(t, std::numbers::pi / 2, 0.25) << msg;
  }
}

TEST(Analyze, CriticalOrbits) {
  for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{1.0, 0.5}, std::pair{2.0, 1.0}, std::pair{-0.5, 1.0}}) {
    const CriticalOrbit orb = critical_orbit(CriticalParams{u, v}, GroupElement::identity(), 1.0, 2);
    const InvariantProfile p = analyze(*orb.curve, 1000);
    // kappa1 > 0 by convention; the orbit of -u has the invariants of u.
    EXPECT_LE(kappa_error(p, orbit_kappa(std::abs(u), v)), 1e-6) << u << " " << v;
    EXPECT_LE(std::abs(p.s.back() - 1.0), 1e-8);
  }
}

TEST(Analyze, StageConditionsAtNodes) {
  auto rng = test_rng(30);
  const GroupElement g = random_group_element(rng);
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.3, -0.4}, g, 1.0, 2);
  const ReconstructedCurve rc = reconstruct_curve(fourier_spec(), GroupElement::identity(), 400);
  const CurvePtr bent = perturbed_orbit(CriticalParams{1.0, 0.5}, 1.0, 0.05, 14);
  for (const ParametrizedCurve* c : {static_cast<const ParametrizedCurve*>(orb.curve.get()), rc.curve.get(), bent.get()}) {
    for (double t : {0.1, 0.37, 0.5, 0.81}) {
      NodeStages st;
      const NodeResult r = canonical_node(c->jet(t, 5), &st);
      ASSERT_TRUE(r.ok);
      expect_stage_conditions(st, r, 1e-9);
      EXPECT_LE(group_residual(r.frame), 1e-9);
    }
  }
}

TEST(Analyze, ReparametrizationInvariance) {
  const ReconstructedCurve rc = reconstruct_curve(fourier_spec(), GroupElement::identity(), 1000);
  const double T = rc.curve->t_max();
  const ScalarFunction phi = [T](const Jet& tau) { return tau + (0.05 * T) * sin(tau * (std::numbers::pi / T)); };
  const ReparametrizedCurve re(rc.curve, phi, 0.0, T);
  const auto tau = uniform_grid(0.0, T, 500);
  std::vector<double> t(tau.size());
  for (std::size_t k = 0; k < tau.size(); ++k) t[k] = phi(Jet(tau[k], 0)).value();
  t.back() = std::min(t.back(), T);
  const InvariantProfile a = analyze(re, tau);
  const InvariantProfile b = analyze(*rc.curve, t);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(a.kappa[k][j], b.kappa[k][j], 1e-8);
    EXPECT_NEAR(a.sigma[k], b.sigma[k] * phi(Jet::variable(tau[k], 1))[1], 1e-8);
  }
}

TEST(Analyze, FramesAreContinuousGroupPaths) {
  const ReconstructedCurve rc = reconstruct_curve(fourier_spec(), GroupElement::identity(), 500);
  const InvariantProfile p = analyze(*rc.curve, rc.frames.t);
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_LE(group_residual(p.frames.A[k]), 1e-9);
    EXPECT_NEAR(theta_rho(p.theta[k]), p.sigma[k], 1e-12);
    if (k > 0) {
      EXPECT_LE(max_abs(p.frames.A[k] - p.frames.A[k - 1]), 0.05 * max_abs(p.frames.A[k]));
      EXPECT_GT(p.s[k], p.s[k - 1]);
    }
  }
}

TEST(Analyze, StencilRouteMatchesExactJets) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, 2);
  AnalyzeOptions opts;
  opts.source = DerivativeSource::Stencil;
  const InvariantProfile p = analyze(*orb.curve, 1000, opts);
  // One-sided stencils at the ends lose about three digits.
  EXPECT_LE(kappa_error(p, orbit_kappa(1.0, 0.5), 200, 801), 1e-5);
  EXPECT_LE(kappa_error(p, orbit_kappa(1.0, 0.5)), 5e-3);
  EXPECT_NEAR(p.s.back(), 1.0, 1e-6);
}

TEST(Analyze, SampledCurveInput) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, 2);
  const auto grid = uniform_grid(0.0, 1.0, 1000);
  std::vector<CurveSample> samples;
  for (double t : grid) samples.push_back(orb.curve->sample(t));
  const SampledCurve sc(grid, samples);
  EXPECT_FALSE(sc.has_jets());
  const InvariantProfile p = analyze(sc, grid);
  EXPECT_LE(kappa_error(p, orbit_kappa(1.0, 0.5), 200, 801), 1e-5);
  AnalyzeOptions exact;
  exact.source = DerivativeSource::Exact;
  EXPECT_ERROR(analyze(sc, grid, exact), ErrorKind::InvalidCurve);
}

TEST(Analyze, SampledRoute) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, 1001);
  EXPECT_LE(kappa_error(analyze_sampled(*orb.curve, orb.frames.t), orbit_kappa(1.0, 0.5)), 1e-3);
  const ReconstructedCurve rc = reconstruct_curve(fourier_spec(), GroupElement::identity(), 1000);
  const InvariantProfile p = analyze_sampled(*rc.curve, rc.frames.t);
  const CurvatureSpec spec = fourier_spec();
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto want = spec.at(p.t[k]);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(p.kappa[k][j], want[j], 1e-3);
  }
}

TEST(Analyze, GridErrors) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.0}, GroupElement::identity(), 1.0, 2);
  EXPECT_ERROR(analyze(*orb.curve, std::vector<double>{}), ErrorKind::GridTooCoarse);
  EXPECT_ERROR(analyze(*orb.curve, std::vector<double>{0.0, 2.0}), ErrorKind::OutOfDomain);
  EXPECT_ERROR(analyze(*orb.curve, std::vector<double>{0.5, 0.5}), ErrorKind::InvalidParams);
  AnalyzeOptions stencil;
  stencil.source = DerivativeSource::Stencil;
  EXPECT_ERROR(analyze(*orb.curve, uniform_grid(0.0, 1.0, 8), stencil), ErrorKind::GridTooCoarse);
  std::vector<double> uneven = uniform_grid(0.0, 1.0, 100);
  uneven[50] += 1e-3;
  EXPECT_ERROR(analyze(*orb.curve, uneven, stencil), ErrorKind::InvalidParams);
}

TEST(Analyze, ErrorTaxonomy) {
  auto kind_of = [](const ParametrizedCurve& c) {
    try {
      analyze(c, 400);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidCurve;
  };
  EXPECT_EQ(kind_of(*legendre_segment_curve()), ErrorKind::Transversality);
  EXPECT_EQ(kind_of(*rank_deficient_orbit()), ErrorKind::Nondegeneracy);
  EXPECT_EQ(kind_of(*reversed_orbit()), ErrorKind::Orientation);
  EXPECT_EQ(kind_of(*nongeneric_orbit()), ErrorKind::Genericity);
  try {
    analyze(*legendre_segment_curve(), 400);
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("at t = 1.570796"), std::string::npos) << e.what();
  }
}

TEST(Analyze, GreatCircleIsDegenerate) {
  // The great circle is transversal but its second-order block is singular.
  const CurvePtr c = great_circle_curve();
  for (int run = 0; run < 2; ++run) {
    try {
      analyze(*c, 400);
      ADD_FAILURE() << "expected a ladder error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Nondegeneracy);
      EXPECT_NE(std::string(e.what()).find("at t = 0.000000"), std::string::npos);
    }
  }
  const NodeResult r = [] {
    NodeResult out;
    try {
      out = canonical_node(great_circle_curve()->jet(1.0, 5));
    } catch (const Error&) {
    }
    return out;
  }();
  EXPECT_FALSE(r.ok);
}

TEST(Analyze, Deterministic) {
  const CurvePtr bent = perturbed_orbit(CriticalParams{1.0, 0.5}, 1.0, 0.05, 14);
  const InvariantProfile a = analyze(*bent, 300), b = analyze(*bent, 300);
  EXPECT_EQ(a.s, b.s);
  EXPECT_EQ(a.kappa, b.kappa);
}

TEST(Fornberg, ExactOnPolynomials) {
  const std::vector<double> x = {-0.3, -0.1, 0.0, 0.2, 0.25, 0.5};
  const auto w = fornberg_weights(0.0, x, 4);
  for (int k = 0; k <= 5; ++k) {
    for (int d = 0; d <= 4; ++d) {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += w[d][i] * std::pow(x[i], k);
      const double want = d == k ? std::tgamma(k + 1.0) : 0.0;
      EXPECT_NEAR(sum, want, 1e-8) << "d=" << d << " k=" << k;
    }
  }
}

TEST(Jets, CurveJetsMatchProvider) {
  const CriticalOrbit orb = critical_orbit(CriticalParams{1.0, 0.5}, GroupElement::identity(), 1.0, 2);
  const auto grid = uniform_grid(0.0, 1.0, 100);
  const auto exact = curve_jets(*orb.curve, grid, {});
  AnalyzeOptions stencil;
  stencil.source = DerivativeSource::Stencil;
  const auto approx = curve_jets(*orb.curve, grid, stencil);
  ASSERT_EQ(exact.size(), grid.size());
  for (int d = 0; d <= 3; ++d) EXPECT_LE((exact[50].v.c[d] - approx[50].v.c[d]).norm(), 1e-6) << d;
}
