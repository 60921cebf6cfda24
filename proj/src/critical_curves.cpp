#include "liesphere/critical_curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "liesphere/reconstruction.hpp"

namespace liesphere {

namespace {

// Generator with rho = 1, Omega4 = 0 and the given X1 and P = X2 L.
CurvePtr orbit_with_blocks(const Mat2& X1, const Mat2& P, double t, double s_max) {
  AlgebraBlocks b;
  b.X1 = X1;
  b.X2 = P * mat_L();
  b.X5 = Mat2::Zero();
  b.s = 1.0;
  b.t = t;
  return std::make_shared<OrbitCurve>(GroupElement::identity(), algebra_from_blocks(b), 0.0, s_max);
}

}  // namespace

void validate_params(const CriticalParams& p) {
  if (!std::isfinite(p.u) || !std::isfinite(p.v)) throw Error(ErrorKind::InvalidParams, "parameters must be finite");
  if (std::abs(p.u) < 1e-8) throw Error(ErrorKind::InvalidParams, "u must be nonzero");
}

AlgebraElement generator(const CriticalParams& p) {
  validate_params(p);
  return AlgebraElement(curvature_block_matrix({p.u, p.v, 0.0, p.u * p.u - p.v * p.v}));
}

CriticalOrbit critical_orbit(const CriticalParams& p, const GroupElement& A, double s_max, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParams, "critical_orbit needs n >= 2");
  const AlgebraElement X = generator(p);
  CriticalOrbit o;
  o.frames.t = uniform_grid(0.0, s_max, n);
  for (double s : o.frames.t) {
    const Mat6 F = A.matrix() * mat_exp(X, s).matrix();
    o.frames.A.push_back(F);
    o.planes.push_back(IsotropicPlane{F.col(0), F.col(1)});
  }
  o.curve = std::make_shared<OrbitCurve>(A, X, 0.0, s_max);
  return o;
}

Spectrum spectrum(const CriticalParams& p) {
  const Mat6 X = generator(p).matrix();
  Eigen::EigenSolver<Mat6> es(X, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "eigenvalue iteration failed");
  Spectrum out;
  for (int i = 0; i < 6; ++i) out.eigenvalues[i] = es.eigenvalues()[i];
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  out.purely_imaginary =
      std::all_of(out.eigenvalues.begin(), out.eigenvalues.end(), [](const auto& z) { return std::abs(z.real()) <= 1e-9; });
  return out;
}

CurvePtr perturbed_orbit(const CriticalParams& p, double s_max, double eps, int direction) {
  if (direction < 0 || direction >= 15) throw Error(ErrorKind::InvalidParams, "direction must be in [0, 15)");
  if (!(s_max > 0.0)) throw Error(ErrorKind::InvalidParams, "s_max must be positive");
  auto base = std::make_shared<OrbitCurve>(GroupElement::identity(), generator(p), 0.0, s_max);
  return std::make_shared<VariedCurve>(base, algebra_basis()[direction],
                                       bump_function(0.15 * s_max, 0.85 * s_max), eps);
}

CurvePtr legendre_segment_curve() {
  // Generator of the (1, 0) orbit with Omega4 = E01 / 2 and contact slot
  // cos t, so the velocity is nonzero where the pairing vanishes. det P >= 1
  // and p^2 + q^2 > 1 before t = pi/2.
  AlgebraBlocks b = generator({1.0, 0.0}).blocks();
  b.X4 = Mat2::Zero();
  b.X4(0, 1) = 0.5;
  b.s = 0.0;
  const Mat6 X = assemble_blocks(b);
  b = AlgebraBlocks{};
  b.s = 1.0;
  const Mat6 E = assemble_blocks(b);
  GeneratorField K = [X, E](double t, int order) {
    const Jet c = cos(Jet::variable(t, order));
    Mat6Jet k(order);
    for (int j = 0; j <= order; ++j) k.c[j] = c[j] * E;
    k.c[0] += X;
    return k;
  };
  FramePath F = integrate_field(K, GroupElement::identity(), 0.0, std::numbers::pi, 400);
  return std::make_shared<FramePathCurve>(K, std::move(F));
}

CurvePtr rank_deficient_orbit(double s_max) {
  Mat2 P = Mat2::Zero();
  P(0, 0) = 1.0;
  return orbit_with_blocks(mat_I11(), P, 0.0, s_max);
}

CurvePtr reversed_orbit(double s_max) { return orbit_with_blocks(mat_I11(), mat_I11(), 0.0, s_max); }

CurvePtr nongeneric_orbit(double s_max) { return orbit_with_blocks(Mat2::Zero(), Mat2::Identity(), 1.0, s_max); }

}  // namespace liesphere
