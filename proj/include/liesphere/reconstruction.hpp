#pragma once

// Canonical-frame ODE A' = A K(kappa(s)): curvature specs, a fourth-order
// Lie-group integrator, curves built from frame paths and the congruence
// element between frames with equal invariants.

#include <array>
#include <functional>
#include <vector>

#include "liesphere/curve.hpp"
#include "liesphere/moving_frame.hpp"

namespace liesphere {

// a0 + sum_k a_k cos(2 pi k s / P) + b_k sin(2 pi k s / P).
struct FourierSeries {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;
};

struct CurvatureSpec {
  double length = 1.0;  // arclength interval [0, length]
  std::array<ScalarFunction, 4> kappa;

  static CurvatureSpec constants(const std::array<double, 4>& k, double length);
  static CurvatureSpec fourier(const std::array<FourierSeries, 4>& k, double period, double length);

  std::array<double, 4> at(double s) const;
  std::array<Jet, 4> at(const Jet& s) const;
};

// Throws InvalidSpec if the interval is negative or |kappa1| < 1e-8 at any of
// `samples` uniform points.
void validate_spec(const CurvatureSpec& spec, int samples = 2001);

Mat6 curvature_block_matrix(const std::array<double, 4>& k);
AlgebraElement curvature_matrix(const CurvatureSpec& spec, double s);
Mat6Jet curvature_jet(const CurvatureSpec& spec, double s, int order);

// Taylor jet at t of an algebra-valued field K(t).
using GeneratorField = std::function<Mat6Jet(double t, int order)>;
GeneratorField curvature_field(const CurvatureSpec& spec);

// A' = A K(t) by the two-exponential fourth-order commutator-free scheme at
// the Gauss nodes, with a retraction every 100 steps.
FramePath integrate_field(const GeneratorField& K, const GroupElement& A_init, double t0, double t1, int steps);
FramePath integrate_frame(const CurvatureSpec& spec, const GroupElement& A_init, int steps);

// Frame path wrapped as a curve s -> [A0(s), A1(s)]. sample() interpolates the
// frame columns (cubic Hermite with the ODE derivatives at the knots); jets
// are the Taylor series of the ODE solution started from the nearest knot.
class FramePathCurve : public ParametrizedCurve {
 public:
  FramePathCurve(GeneratorField K, FramePath frames);

  double t_min() const override { return frames_.t.front(); }
  double t_max() const override { return frames_.t.back(); }
  CurveSample sample(double t) const override;
  bool has_jets() const override { return true; }
  CurveJet jet(double t, int order) const override;

  const FramePath& frames() const { return frames_; }

 private:
  Mat6 frame_at(double t) const;

  GeneratorField K_;
  FramePath frames_;
};

struct ReconstructedCurve {
  FramePath frames;
  std::vector<IsotropicPlane> planes;
  CurvePtr curve;
};

ReconstructedCurve reconstruct_curve(const CurvatureSpec& spec, const GroupElement& A_init, int steps);

// g = G(t0) F(t0)^{-1}, certified up to sign at every node.
GroupElement congruence_transform(const FramePath& F, const FramePath& G, double tol = 1e-7);

}  // namespace liesphere
