#pragma once

// Curve providers: t -> (v, xi, v', xi') in the unit tangent bundle of S^3.
// Providers that can also produce Taylor jets of (v, xi) report has_jets().

#include <functional>
#include <memory>
#include <vector>

#include "liesphere/core_algebra.hpp"
#include "liesphere/jet.hpp"
#include "liesphere/lambda_space.hpp"

namespace liesphere {

struct CurveSample {
  Vec4 v = Vec4::Zero();
  Vec4 xi = Vec4::Zero();
  Vec4 dv = Vec4::Zero();
  Vec4 dxi = Vec4::Zero();
};

// Taylor coefficients of v and xi in tau = t - t0.
struct CurveJet {
  Vec4Jet v;
  Vec4Jet xi;
};

// Scalar function evaluated on a jet variable, so that the same code gives
// values and Taylor coefficients.
using ScalarFunction = std::function<Jet(const Jet&)>;

class ParametrizedCurve {
 public:
  virtual ~ParametrizedCurve() = default;

  virtual double t_min() const = 0;
  virtual double t_max() const = 0;
  virtual CurveSample sample(double t) const = 0;

  virtual bool has_jets() const { return false; }
  // Throws InvalidCurve when has_jets() is false.
  virtual CurveJet jet(double t, int order) const;
};

using CurvePtr = std::shared_ptr<const ParametrizedCurve>;

// Throws InvalidCurve unless the sample satisfies the unit/orthogonality
// constraints and their derivatives within tol.
void validate_sample(const CurveSample& s, double tol = 1e-8);

CurveJet jet_from_sample(const CurveSample& s);
CurveSample sample_from_jet(const CurveJet& j);
// Jet of the requested order; order <= 1 only needs sample().
CurveJet curve_jet(const ParametrizedCurve& c, double t, int order);
// Normalizes v, then orthonormalizes xi against it, order by order.
void project_to_t1s3(CurveJet& j);

// d with d_i = det(a, b, c, e_i); unit and positively oriented for
// orthonormal a, b, c.
Vec4Jet cross4(const Vec4Jet& a, const Vec4Jet& b, const Vec4Jet& c);

// (v, xi) given in closed form on a jet variable.
class AnalyticCurve : public ParametrizedCurve {
 public:
  using Formula = std::function<void(const Jet& t, std::array<Jet, 4>& v, std::array<Jet, 4>& xi)>;

  AnalyticCurve(Formula f, double t0, double t1) : f_(std::move(f)), t0_(t0), t1_(t1) {}

  double t_min() const override { return t0_; }
  double t_max() const override { return t1_; }
  CurveSample sample(double t) const override { return sample_from_jet(jet(t, 1)); }
  bool has_jets() const override { return true; }
  CurveJet jet(double t, int order) const override;

 private:
  Formula f_;
  double t0_, t1_;
};

// t -> A exp(tX) . lambda0.
class OrbitCurve : public ParametrizedCurve {
 public:
  OrbitCurve(const GroupElement& A, const AlgebraElement& X, double t0, double t1)
      : A_(A), X_(X), t0_(t0), t1_(t1) {}

  double t_min() const override { return t0_; }
  double t_max() const override { return t1_; }
  CurveSample sample(double t) const override { return sample_from_jet(jet(t, 1)); }
  bool has_jets() const override { return true; }
  CurveJet jet(double t, int order) const override;

  Mat6 frame(double t) const;
  const AlgebraElement& generator() const { return X_; }

 private:
  GroupElement A_;
  AlgebraElement X_;
  double t0_, t1_;
};

// t -> g . gamma(t).
class TransformedCurve : public ParametrizedCurve {
 public:
  TransformedCurve(const GroupElement& g, CurvePtr base) : g_(g), base_(std::move(base)) {}

  double t_min() const override { return base_->t_min(); }
  double t_max() const override { return base_->t_max(); }
  CurveSample sample(double t) const override { return sample_from_jet(jet_impl(t, 1)); }
  bool has_jets() const override { return base_->has_jets(); }
  CurveJet jet(double t, int order) const override { return jet_impl(t, order); }

 private:
  CurveJet jet_impl(double t, int order) const;
  GroupElement g_;
  CurvePtr base_;
};

// t -> exp(u phi(t) Y) . gamma(t).
class VariedCurve : public ParametrizedCurve {
 public:
  VariedCurve(CurvePtr base, const AlgebraElement& Y, ScalarFunction phi, double u)
      : base_(std::move(base)), Y_(Y), phi_(std::move(phi)), u_(u) {}

  double t_min() const override { return base_->t_min(); }
  double t_max() const override { return base_->t_max(); }
  CurveSample sample(double t) const override { return sample_from_jet(jet_impl(t, 1)); }
  bool has_jets() const override { return base_->has_jets(); }
  CurveJet jet(double t, int order) const override { return jet_impl(t, order); }

 private:
  CurveJet jet_impl(double t, int order) const;
  CurvePtr base_;
  AlgebraElement Y_;
  ScalarFunction phi_;
  double u_;
};

// tau -> gamma(phi(tau)) for an increasing phi mapping [tau0, tau1] into the
// domain of gamma.
class ReparametrizedCurve : public ParametrizedCurve {
 public:
  ReparametrizedCurve(CurvePtr base, ScalarFunction phi, double tau0, double tau1)
      : base_(std::move(base)), phi_(std::move(phi)), tau0_(tau0), tau1_(tau1) {}

  double t_min() const override { return tau0_; }
  double t_max() const override { return tau1_; }
  CurveSample sample(double t) const override { return sample_from_jet(jet_impl(t, 1)); }
  bool has_jets() const override { return base_->has_jets(); }
  CurveJet jet(double t, int order) const override { return jet_impl(t, order); }

 private:
  CurveJet jet_impl(double t, int order) const;
  CurvePtr base_;
  ScalarFunction phi_;
  double tau0_, tau1_;
};

// Tabulated samples with first derivatives; cubic Hermite interpolation
// between nodes, projected back onto the constraints.
class SampledCurve : public ParametrizedCurve {
 public:
  SampledCurve(std::vector<double> t, std::vector<CurveSample> samples);

  double t_min() const override { return t_.front(); }
  double t_max() const override { return t_.back(); }
  CurveSample sample(double t) const override;

  const std::vector<double>& nodes() const { return t_; }

 private:
  std::vector<double> t_;
  std::vector<CurveSample> s_;
};

// Smooth bump exp(1 - 1/(1 - tau^2)) on [a, b], tau = (2t - a - b)/(b - a);
// zero with all derivatives outside (a, b).
ScalarFunction bump_function(double a, double b);

// v = (cos t, sin t, 0, 0), xi = v' on [0, 2 pi].
CurvePtr great_circle_curve();
}  // namespace liesphere
