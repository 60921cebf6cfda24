#pragma once

// Critical curves of the Lie-invariant length: orbits A exp(s X(u, v)) . lambda0,
// their spectra, and the builtin test curves.

#include <array>
#include <complex>
#include <vector>

#include "liesphere/curve.hpp"
#include "liesphere/moving_frame.hpp"

namespace liesphere {

struct CriticalParams {
  double u = 1.0;  // kappa1
  double v = 0.0;  // kappa2
};

// Throws InvalidParams if |u| < 1e-8.
void validate_params(const CriticalParams& p);

AlgebraElement generator(const CriticalParams& p);

struct CriticalOrbit {
  FramePath frames;  // A exp(s_k X)
  std::vector<IsotropicPlane> planes;
  std::shared_ptr<const OrbitCurve> curve;
};

// n steps on [0, s_max], n + 1 nodes.
CriticalOrbit critical_orbit(const CriticalParams& p, const GroupElement& A, double s_max, int n);

struct Spectrum {
  std::array<std::complex<double>, 6> eigenvalues;  // sorted by (real, imag)
  bool purely_imaginary = false;                     // all |Re| <= 1e-9
};

Spectrum spectrum(const CriticalParams& p);

// Orbit of (u, v) bent by exp(eps phi(s) Y) with a bump phi over the middle
// of [0, s_max] and Y the basis element `direction`.
CurvePtr perturbed_orbit(const CriticalParams& p, double s_max, double eps, int direction);

// Curve on [0, pi] with frame equation A' = A K(t), K a fixed generator with
// contact slot cos t; transversality fails at t = pi/2.
CurvePtr legendre_segment_curve();

// Orbits through lambda0 whose generators have a singular P block, a P block
// with negative determinant, and vanishing (p, q) respectively.
CurvePtr rank_deficient_orbit(double s_max = 1.0);
CurvePtr reversed_orbit(double s_max = 1.0);
CurvePtr nongeneric_orbit(double s_max = 1.0);

}  // namespace liesphere
