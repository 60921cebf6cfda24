#include "liesphere/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace liesphere {

namespace {

Vec4Jet vec_from(const std::array<Jet, 4>& a, int order) {
  Vec4Jet r(order);
  for (int i = 0; i < 4; ++i) r.set_entry(i, 0, a[i]);
  return r;
}

// sum_k c_k delta^k for a jet delta with zero constant term.
template <int R>
MatJet<R, 1> compose_series(const MatJet<R, 1>& c, const Jet& delta) {
  const int n = std::min(c.order, delta.order());
  MatJet<R, 1> r(n);
  r.c[0] = c.c[0];
  Jet power(1.0, n);
  for (int k = 1; k <= n; ++k) {
    power = power * delta;
    for (int j = 0; j <= n; ++j) r.c[j] += power[j] * c.c[k];
  }
  return r;
}

CurveJet plane_jet(const Vec6Jet& x, const Vec6Jet& y) {
  CurveJet out;
  plane_jet_to_t1s3(x, y, out.v, out.xi);
  return out;
}

}  // namespace

CurveJet ParametrizedCurve::jet(double, int) const {
  throw Error(ErrorKind::InvalidCurve, "curve provides first derivatives only");
}

void validate_sample(const CurveSample& s, double tol) {
  const bool finite = s.v.allFinite() && s.xi.allFinite() && s.dv.allFinite() && s.dxi.allFinite();
  if (!finite) throw Error(ErrorKind::InvalidCurve, "non-finite sample");
  if (std::abs(s.v.norm() - 1.0) > tol || std::abs(s.xi.norm() - 1.0) > tol)
    throw Error(ErrorKind::InvalidCurve, "v and xi must be unit vectors");
  if (std::abs(s.v.dot(s.xi)) > tol) throw Error(ErrorKind::InvalidCurve, "v and xi must be orthogonal");
  const double scale = 1.0 + s.dv.norm() + s.dxi.norm();
  if (std::abs(s.v.dot(s.dv)) > tol * scale || std::abs(s.xi.dot(s.dxi)) > tol * scale ||
      std::abs(s.dv.dot(s.xi) + s.v.dot(s.dxi)) > tol * scale)
    throw Error(ErrorKind::InvalidCurve, "derivatives violate the differentiated constraints");
}

CurveJet jet_from_sample(const CurveSample& s) {
  CurveJet j;
  j.v = Vec4Jet(1);
  j.xi = Vec4Jet(1);
  j.v.c[0] = s.v;
  j.v.c[1] = s.dv;
  j.xi.c[0] = s.xi;
  j.xi.c[1] = s.dxi;
  return j;
}

CurveSample sample_from_jet(const CurveJet& j) {
  CurveSample s;
  s.v = j.v.c[0];
  s.xi = j.xi.c[0];
  s.dv = j.v.order >= 1 ? Vec4(j.v.c[1]) : Vec4::Zero();
  s.dxi = j.xi.order >= 1 ? Vec4(j.xi.c[1]) : Vec4::Zero();
  return s;
}

CurveJet curve_jet(const ParametrizedCurve& c, double t, int order) {
  if (order <= 1 && !c.has_jets()) return jet_from_sample(c.sample(t));
  return c.jet(t, order);
}

CurveJet AnalyticCurve::jet(double t, int order) const {
  std::array<Jet, 4> v, xi;
  f_(Jet::variable(t, order), v, xi);
  return CurveJet{vec_from(v, order), vec_from(xi, order)};
}

Mat6 OrbitCurve::frame(double t) const { return A_.matrix() * mat_exp(X_, t).matrix(); }

CurveJet OrbitCurve::jet(double t, int order) const {
  // x(t + tau) = F exp(tau X) e0 with F = A exp(tX).
  const Mat6 F = frame(t);
  Vec6Jet x(order), y(order);
  Mat6 term = F;
  double fact = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      term = term * X_.matrix();
      fact *= k;
    }
    x.c[k] = term.col(0) / fact;
    y.c[k] = term.col(1) / fact;
  }
  return plane_jet(x, y);
}

CurveJet TransformedCurve::jet_impl(double t, int order) const {
  const CurveJet b = curve_jet(*base_, t, order);
  return plane_jet(g_.matrix() * a0_of(b.v), g_.matrix() * a1_of(b.xi));
}

CurveJet VariedCurve::jet_impl(double t, int order) const {
  const CurveJet b = curve_jet(*base_, t, order);
  const int n = std::min(b.v.order, order);
  const Jet psi = phi_(Jet::variable(t, n));
  // exp(u psi Y) = exp(u psi0 Y) exp(u (psi - psi0) Y), expanded as a series
  // in the nilpotent jet u (psi - psi0) Y.
  const Mat6 E0 = mat_exp(Y_, u_ * psi.value()).matrix();
  Mat6Jet P(n);
  for (int j = 1; j <= n; ++j) P.c[j] = (u_ * psi[j]) * Y_.matrix();
  Mat6Jet series = Mat6Jet::constant(Mat6::Identity(), n);
  Mat6Jet term = series;
  for (int k = 1; k <= n; ++k) {
    term = (1.0 / k) * (term * P);
    series += term;
  }
  const Mat6Jet E = E0 * series;
  return plane_jet(E * a0_of(b.v), E * a1_of(b.xi));
}

CurveJet ReparametrizedCurve::jet_impl(double t, int order) const {
  const Jet phi = phi_(Jet::variable(t, order));
  const CurveJet b = curve_jet(*base_, phi.value(), order);
  Jet delta = phi;
  delta[0] = 0.0;
  return CurveJet{compose_series(b.v, delta), compose_series(b.xi, delta)};
}

SampledCurve::SampledCurve(std::vector<double> t, std::vector<CurveSample> samples)
    : t_(std::move(t)), s_(std::move(samples)) {
  if (t_.empty() || t_.size() != s_.size())
    throw Error(ErrorKind::InvalidCurve, "sample count does not match node count");
  for (std::size_t i = 1; i < t_.size(); ++i)
    if (!(t_[i] > t_[i - 1])) throw Error(ErrorKind::InvalidCurve, "sample nodes must strictly increase");
  for (const auto& s : s_) validate_sample(s);
}

CurveSample SampledCurve::sample(double t) const {
  if (t < t_.front() || t > t_.back()) throw Error(ErrorKind::OutOfDomain, "t outside the sampled range");
  auto it = std::lower_bound(t_.begin(), t_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - t_.begin());
  if (i < t_.size() && t_[i] == t) return s_[i];
  const std::size_t k = i - 1;
  const double h = t_[k + 1] - t_[k];
  const double x = (t - t_[k]) / h;
  const double h00 = 2 * x * x * x - 3 * x * x + 1, h10 = x * x * x - 2 * x * x + x;
  const double h01 = -2 * x * x * x + 3 * x * x, h11 = x * x * x - x * x;
  const double d00 = (6 * x * x - 6 * x) / h, d10 = 3 * x * x - 4 * x + 1;
  const double d01 = (-6 * x * x + 6 * x) / h, d11 = 3 * x * x - 2 * x;
  const CurveSample& a = s_[k];
  const CurveSample& b = s_[k + 1];
  CurveJet j;
  j.v = Vec4Jet(1);
  j.xi = Vec4Jet(1);
  j.v.c[0] = h00 * a.v + h10 * h * a.dv + h01 * b.v + h11 * h * b.dv;
  j.v.c[1] = d00 * a.v + d10 * a.dv + d01 * b.v + d11 * b.dv;
  j.xi.c[0] = h00 * a.xi + h10 * h * a.dxi + h01 * b.xi + h11 * h * b.dxi;
  j.xi.c[1] = d00 * a.xi + d10 * a.dxi + d01 * b.xi + d11 * b.dxi;
  project_to_t1s3(j);
  return sample_from_jet(j);
}

void project_to_t1s3(CurveJet& j) {
  Vec4Jet v = inv(sqrt(dot(j.v, j.v))) * j.v;
  Vec4Jet xi = j.xi - dot(j.xi, v) * v;
  xi = inv(sqrt(dot(xi, xi))) * xi;
  j.v = v;
  j.xi = xi;
}

ScalarFunction bump_function(double a, double b) {
  return [a, b](const Jet& t) {
    if (t.value() <= a || t.value() >= b) return Jet(0.0, t.order());
    const Jet tau = (2.0 * t - (a + b)) / (b - a);
    return exp(1.0 - inv(1.0 - tau * tau));
  };
}

CurvePtr great_circle_curve() {
  return std::make_shared<AnalyticCurve>(
      [](const Jet& t, std::array<Jet, 4>& v, std::array<Jet, 4>& xi) {
        const Jet c = cos(t), s = sin(t), z(0.0, t.order());
        v = {c, s, z, z};
        xi = {-s, c, z, z};
      },
      0.0, 2.0 * std::numbers::pi);
}

Vec4Jet cross4(const Vec4Jet& a, const Vec4Jet& b, const Vec4Jet& c) {
  const int n = std::min({a.order, b.order, c.order});
  Vec4Jet d(n);
  for (int i = 0; i < 4; ++i) {
    int r[3], m = 0;
    for (int k = 0; k < 4; ++k)
      if (k != i) r[m++] = k;
    auto e = [&](const Vec4Jet& v, int k) { return v.entry(r[k], 0); };
    const Jet minor = e(a, 0) * (e(b, 1) * e(c, 2) - e(b, 2) * e(c, 1)) -
                      e(b, 0) * (e(a, 1) * e(c, 2) - e(a, 2) * e(c, 1)) +
                      e(c, 0) * (e(a, 1) * e(b, 2) - e(a, 2) * e(b, 1));
    d.set_entry(i, 0, ((i + 3) % 2 == 0 ? 1.0 : -1.0) * minor);
  }
  return d;
}

}  // namespace liesphere
