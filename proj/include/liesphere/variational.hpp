#pragma once

// Length functional, criticality tests, momentum fiber with Cartan-system
// residuals, Euler-Lagrange residuals and a finite-difference first variation.

#include <array>
#include <string>
#include <vector>

#include "liesphere/curve.hpp"
#include "liesphere/moving_frame.hpp"

namespace liesphere {

// s(b) - s(a); a and b may lie between nodes (cubic Hermite in t using ds/dt).
double functional_length(const InvariantProfile& profile, double a, double b);

struct CriticalityReport {
  bool critical = false;
  std::array<double, 4> variation{};  // max - min of each kappa_i
  double max_abs_kappa3 = 0.0;
  double max_kappa4_defect = 0.0;  // |kappa4 - kappa1^2 + kappa2^2|
  double min_abs_kappa1 = 0.0;
  std::vector<std::string> witnesses;  // failed conditions
};

CriticalityReport is_critical(const InvariantProfile& profile, double tol);

struct MomentumPoint {
  std::array<double, 4> kappa{};
  std::array<double, 14> p{};  // p[a - 1] = p_a
};

// Throws DegenerateKappa1 if |kappa1| < 1e-8.
MomentumPoint momentum_profile(const std::array<double, 4>& kappa);

struct PfaffianResidual {
  std::vector<std::array<double, 14>> mu;  // per node, per unit s
  std::vector<double> eta;                 // per unit s
  double max_mu = 0.0;
  double min_eta = 0.0;
};

// Values of mu^1..mu^14 and eta on d/ds. Uses the profile's Maurer-Cartan
// form when it matches F, otherwise differences F.
PfaffianResidual pfaffian_residuals(const FramePath& F, const InvariantProfile& profile);

struct CartanResidual {
  std::vector<std::array<double, 19>> values;  // per node, equations cs1..cs19
  std::array<double, 19> max_abs{};
  double max = 0.0;
  double pfaffian_max = 0.0;  // the mu^a = 0 part
};

CartanResidual cartan_residuals(const FramePath& F, const InvariantProfile& profile,
                                const std::vector<MomentumPoint>& fiber);

struct ELResiduals {
  std::vector<double> s;
  std::array<std::vector<double>, 4> r;
  std::array<double, 4> max_abs{};
  double max = 0.0;
};

ELResiduals el_residuals(const InvariantProfile& profile);

// d/ds along a profile grid (three-point, second order, non-uniform).
std::vector<double> derivative_in_s(const std::vector<double>& s, const std::vector<double>& f);

struct VariationSpec {
  AlgebraElement Y;
  double a = 0.0;  // support of the bump
  double b = 1.0;
  double u = 1e-5;
};

// Richardson-refined central difference of the length over the support of
// t -> exp(u phi(t) Y) . gamma(t). Each varied curve is analyzed on a uniform
// grid of the support with the density of `grid`, at least 1000 steps. Retries with smaller u up to 3 times when a
// varied curve leaves the generic class.
double first_variation(const ParametrizedCurve& c, const VariationSpec& var, const std::vector<double>& grid,
                       const AnalyzeOptions& opts = {});

}  // namespace liesphere
