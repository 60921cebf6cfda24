#include "liesphere/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace liesphere {

namespace {

constexpr int kMinSupportSteps = 1000;

struct NonOwning : ParametrizedCurve {
  explicit NonOwning(const ParametrizedCurve& c) : c_(c) {}
  double t_min() const override { return c_.t_min(); }
  double t_max() const override { return c_.t_max(); }
  CurveSample sample(double t) const override { return c_.sample(t); }
  bool has_jets() const override { return c_.has_jets(); }
  CurveJet jet(double t, int order) const override { return c_.jet(t, order); }
  const ParametrizedCurve& c_;
};

double s_at(const InvariantProfile& p, double t) {
  const auto& g = p.t;
  if (t <= g.front()) return p.s.front();
  if (t >= g.back()) return p.s.back();
  const std::size_t k = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), t) - g.begin()) - 1;
  const double h = g[k + 1] - g[k];
  const double x = (t - g[k]) / h;
  const double h00 = 2 * x * x * x - 3 * x * x + 1, h10 = x * x * x - 2 * x * x + x;
  const double h01 = -2 * x * x * x + 3 * x * x, h11 = x * x * x - x * x;
  return h00 * p.s[k] + h10 * h * p.sigma[k] + h01 * p.s[k + 1] + h11 * h * p.sigma[k + 1];
}

}  // namespace

double functional_length(const InvariantProfile& profile, double a, double b) {
  if (profile.size() == 0) throw Error(ErrorKind::OutOfDomain, "empty profile");
  const double lo = profile.t.front(), hi = profile.t.back();
  const double slack = 1e-12 * std::max(1.0, hi - lo);
  if (a < lo - slack || b > hi + slack || a > b + slack)
    throw Error(ErrorKind::OutOfDomain, "[a, b] must lie within the profile grid");
  return s_at(profile, b) - s_at(profile, a);
}

CriticalityReport is_critical(const InvariantProfile& profile, double tol) {
  CriticalityReport r;
  const std::size_t n = profile.size();
  if (n == 0) {
    r.witnesses.push_back("empty profile");
    return r;
  }
  r.min_abs_kappa1 = std::abs(profile.kappa[0][0]);
  for (int i = 0; i < 4; ++i) {
    double lo = profile.kappa[0][i], hi = lo;
    for (const auto& k : profile.kappa) {
      lo = std::min(lo, k[i]);
      hi = std::max(hi, k[i]);
    }
    r.variation[i] = hi - lo;
  }
  for (const auto& k : profile.kappa) {
    r.max_abs_kappa3 = std::max(r.max_abs_kappa3, std::abs(k[2]));
    r.max_kappa4_defect = std::max(r.max_kappa4_defect, std::abs(k[3] - k[0] * k[0] + k[1] * k[1]));
    r.min_abs_kappa1 = std::min(r.min_abs_kappa1, std::abs(k[0]));
  }
  for (int i = 0; i < 4; ++i)
    if (r.variation[i] > tol) r.witnesses.push_back("kappa" + std::to_string(i + 1) + " non-constant");
  if (r.max_abs_kappa3 > tol) r.witnesses.push_back("kappa3 nonzero");
  if (r.max_kappa4_defect > tol) r.witnesses.push_back("kappa4 mismatch");
  if (!(r.min_abs_kappa1 > tol)) r.witnesses.push_back("kappa1 vanishes");
  r.critical = r.witnesses.empty();
  return r;
}

MomentumPoint momentum_profile(const std::array<double, 4>& kappa) {
  if (std::abs(kappa[0]) < 1e-8) throw Error(ErrorKind::DegenerateKappa1, "kappa1 must be nonzero");
  MomentumPoint m;
  m.kappa = kappa;
  m.p.fill(0.0);
  m.p[0] = m.p[3] = -kappa[0] / 3.0;
  m.p[1] = m.p[2] = -(kappa[1] + kappa[2]) / 3.0;
  m.p[4] = m.p[5] = 1.0 / 3.0;
  return m;
}

PfaffianResidual pfaffian_residuals(const FramePath& F, const InvariantProfile& profile) {
  const std::size_t n = profile.size();
  if (F.size() != n) throw Error(ErrorKind::InvalidParams, "frame path and profile sizes differ");
  std::vector<Mat6> theta = profile.theta;
  bool matches = theta.size() == n;
  for (std::size_t k = 0; matches && k < n; ++k) matches = (F.A[k] - profile.frames.A[k]).cwiseAbs().maxCoeff() == 0.0;
  if (!matches) theta = mc_pullback(F).theta;
  PfaffianResidual r;
  r.mu.resize(n);
  r.eta.resize(n);
  r.min_eta = n ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Mat6 w = theta[k] / profile.sigma[k];
    const auto& K = profile.kappa[k];
    const double eta = w(4, 0);
    r.eta[k] = eta;
    r.mu[k] = {w(2, 0),           w(2, 1),           w(3, 0),           w(3, 1),           w(2, 4) - eta,
               w(3, 5) - eta,     w(2, 5),           w(3, 4),           w(0, 0) - K[0] * eta, w(1, 1) + K[0] * eta,
               w(1, 0) - K[1] * eta, w(0, 1) + K[1] * eta, w(3, 2) - K[2] * eta, w(0, 4) - K[3] * eta};
    for (double m : r.mu[k]) r.max_mu = std::max(r.max_mu, std::abs(m));
    r.min_eta = std::min(r.min_eta, eta);
  }
  return r;
}

std::vector<double> derivative_in_s(const std::vector<double>& s, const std::vector<double>& f) {
  const std::size_t n = s.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (s[1] - s[0]);
    return d;
  }
  // Derivative at x of the quadratic through (x0, f0), (x1, f1), (x2, f2).
  auto quad = [&](std::size_t i0, double x) {
    const double x0 = s[i0], x1 = s[i0 + 1], x2 = s[i0 + 2];
    return f[i0] * (2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
           f[i0 + 1] * (2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
           f[i0 + 2] * (2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
  };
  d[0] = quad(0, s[0]);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = quad(k - 1, s[k]);
  d[n - 1] = quad(n - 3, s[n - 1]);
  return d;
}

CartanResidual cartan_residuals(const FramePath& F, const InvariantProfile& profile,
                                const std::vector<MomentumPoint>& fiber) {
  const std::size_t n = profile.size();
  if (fiber.size() != n) throw Error(ErrorKind::InvalidParams, "fiber must be sampled on the profile grid");
  const PfaffianResidual pf = pfaffian_residuals(F, profile);
  std::array<std::vector<double>, 14> dp;
  for (int a = 0; a < 14; ++a) {
    std::vector<double> pa(n);
    for (std::size_t k = 0; k < n; ++k) pa[k] = fiber[k].p[a];
    dp[a] = derivative_in_s(profile.s, pa);
  }
  std::array<std::vector<double>, 4> dk;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> ki(n);
    for (std::size_t k = 0; k < n; ++k) ki[k] = profile.kappa[k][i];
    dk[i] = derivative_in_s(profile.s, ki);
  }
  CartanResidual r;
  r.values.resize(n);
  r.pfaffian_max = pf.max_mu;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = fiber[k].p;
    const double k1 = profile.kappa[k][0], k2 = profile.kappa[k][1], k3 = profile.kappa[k][2], k4 = profile.kappa[k][3];
    const double eta = pf.eta[k];
    auto P = [&](int a) { return p[a - 1]; };
    const std::array<double, 14> c = {
        P(1) * k1 - P(2) * k2 - P(3) * k3 + P(5) * k4 - P(11) - P(13),
        P(1) * k2 - P(2) * k1 - P(4) * k3 - P(7) * k4 - P(10),
        P(1) * k3 + P(3) * k1 - P(4) * k2 + P(8) * k4 - P(9),
        P(2) * k3 + P(3) * k2 - P(4) * k1 - P(6) * k4 - P(12) + P(13),
        P(1) + P(5) * k1 + P(7) * k2 - P(8) * k3,
        -P(4) - P(6) * k1 + P(7) * k3 - P(8) * k2,
        -P(2) - P(5) * k2 - P(6) * k3 - P(7) * k1 + P(14),
        P(3) + P(5) * k3 + P(6) * k2 + P(8) * k1 - P(14),
        -1 + P(5) + 2 * P(6) + P(9) * k1 - P(10) * k1 - 2 * P(12) * k2 + P(13) * k3 + 2 * P(14) * k4,
        -1 + 2 * P(5) + P(6) + P(9) * k1 - P(10) * k1 + 2 * P(11) * k2 + P(13) * k3 + 2 * P(14) * k4,
        P(8) + P(9) * k2 - P(10) * k2 + 2 * P(11) * k1,
        P(7) + P(9) * k2 - P(10) * k2 - 2 * P(12) * k1,
        -P(7) + P(8),
        P(9) + P(10)};
    auto& v = r.values[k];
    for (int a = 0; a < 14; ++a) v[a] = dp[a][k] + c[a] * eta;
    v[14] = (P(9) - P(10)) * eta;
    v[15] = (P(11) - P(12)) * eta;
    v[16] = P(13) * eta;
    v[17] = P(14) * eta;
    v[18] = (P(9) - P(10)) * dk[0][k] + (P(11) - P(12)) * dk[1][k] + P(13) * dk[2][k] + P(14) * dk[3][k];
    for (int e = 0; e < 19; ++e) {
      r.max_abs[e] = std::max(r.max_abs[e], std::abs(v[e]));
      r.max = std::max(r.max, std::abs(v[e]));
    }
  }
  return r;
}

ELResiduals el_residuals(const InvariantProfile& profile) {
  const std::size_t n = profile.size();
  ELResiduals r;
  r.s = profile.s;
  std::vector<double> k1(n), k23(n);
  for (std::size_t k = 0; k < n; ++k) {
    k1[k] = profile.kappa[k][0];
    k23[k] = profile.kappa[k][1] + profile.kappa[k][2];
  }
  const std::vector<double> dk1 = derivative_in_s(profile.s, k1);
  const std::vector<double> dk23 = derivative_in_s(profile.s, k23);
  for (auto& v : r.r) v.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& K = profile.kappa[k];
    const double q = K[3] - K[0] * K[0] + k23[k] * k23[k];
    r.r[0][k] = dk1[k] - q;
    r.r[1][k] = dk23[k];
    r.r[2][k] = dk23[k] + 2.0 * K[0] * K[2];
    r.r[3][k] = dk1[k] + q;
    for (int i = 0; i < 4; ++i) {
      r.max_abs[i] = std::max(r.max_abs[i], std::abs(r.r[i][k]));
      r.max = std::max(r.max, r.max_abs[i]);
    }
  }
  return r;
}

double first_variation(const ParametrizedCurve& c, const VariationSpec& var, const std::vector<double>& grid,
                       const AnalyzeOptions& opts) {
  if (var.u == 0.0) throw Error(ErrorKind::InvalidParams, "variation step must be nonzero");
  if (!(var.a < var.b) || var.a < c.t_min() || var.b > c.t_max())
    throw Error(ErrorKind::InvalidParams, "variation support must lie inside the curve domain");
  if (var.Y.matrix().cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const CurvePtr base = std::make_shared<NonOwning>(c);
  const ScalarFunction phi = bump_function(var.a, var.b);
  // The length changes only on the support; narrow bumps need the support
  // itself resolved, whatever the density of the caller's grid.
  const auto inside = std::count_if(grid.begin(), grid.end(), [&](double t) { return t >= var.a && t <= var.b; });
  const std::vector<double> support =
      uniform_grid(var.a, var.b, std::max(static_cast<int>(inside) - 1, kMinSupportSteps));
  auto length = [&](double u) {
    const VariedCurve varied(base, var.Y, phi, u);
    return functional_length(analyze(varied, support, opts), var.a, var.b);
  };
  double u = var.u;
  for (int attempt = 0; attempt <= 3; ++attempt, u *= 0.5) {
    try {
      const double d1 = (length(u) - length(-u)) / (2.0 * u);
      const double d2 = (length(0.5 * u) - length(-0.5 * u)) / u;
      return (4.0 * d2 - d1) / 3.0;
    } catch (const Error& e) {
      if (!is_ladder_error(e.kind())) throw;
    }
  }
  throw Error(ErrorKind::VariationLeavesGenericClass, "varied curves leave the generic class");
}

}  // namespace liesphere
