#pragma once

// Frame reduction of transversal curves: natural lift, Maurer-Cartan
// pullback, the four normalization stages and the canonical frame with its
// Lie arclength and curvatures.

#include <array>
#include <string>
#include <vector>

#include "liesphere/core_algebra.hpp"
#include "liesphere/curve.hpp"

namespace liesphere {

struct FramePath {
  std::vector<double> t;
  std::vector<Mat6> A;

  std::size_t size() const { return t.size(); }
};

// Per-node A^{-1} dA/dt.
struct ThetaSample {
  std::vector<double> t;
  std::vector<Mat6> theta;
};

// Scalar slots of a Maurer-Cartan matrix.
double theta_rho(const Mat6& theta);      // (4,0)
Mat2 theta_omega4(const Mat6& theta);     // rows 2-3, cols 0-1
Mat2 theta_p_block(const Mat6& theta);    // rows 2-3, cols 4-5
Mat2 theta_theta1(const Mat6& theta);     // rows 0-1, cols 0-1

struct InvariantProfile {
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> sigma;  // ds/dt
  std::vector<std::array<double, 4>> kappa;
  // Diagnostics: contact pairing of the oriented natural lift, det P after
  // the first gauge (parametrization dependent, only its sign and vanishing
  // carry meaning) and p^2 + q^2 in Lie arclength units.
  std::vector<double> rho;
  std::vector<double> det_p;
  std::vector<double> p2q2;
  FramePath frames;          // canonical frame
  std::vector<Mat6> theta;   // its Maurer-Cartan form, d/dt

  std::size_t size() const { return t.size(); }
};

std::vector<double> uniform_grid(double t0, double t1, int steps);

// Right factor that reverses the sign of the contact pairing without moving
// the plane: diag(1, -1, 1, 1, -1, 1).
const Mat6& orientation_flip();

// Lift through A0(v), A1(xi) completed by a fixed complement vector chosen at
// the first node. Throws LiftFailure when the completion degenerates.
FramePath natural_lift(const ParametrizedCurve& c, const std::vector<double>& grid);

// Central differences, one-sided second order at the ends; uniform grid.
ThetaSample mc_pullback(const FramePath& F);

enum class DerivativeSource { Auto, Exact, Stencil };
enum class Execution { Serial, Parallel };

struct AnalyzeOptions {
  DerivativeSource source = DerivativeSource::Auto;
  Execution execution = Execution::Parallel;
  // Stencil fallback: 2 * half_width + 1 lattice nodes spaced close to
  // spacing * (domain length).
  int stencil_half_width = 6;
  double stencil_spacing = 0.05;
};

struct Reduction {
  FramePath frames;
  InvariantProfile profile;
  // Maurer-Cartan forms of the oriented natural lift (index 0) and after each
  // normalization stage.
  std::array<ThetaSample, 5> stages;
};

// Canonical frame of the curve traced by the first two columns of F on a
// uniform grid of at least 13 nodes. Jets come from fitting log(F_k^-1 F) on
// the stencil lattice and run through the ladder; theta only has to match F
// in size. Without options the lattice has 9 nodes at spacing 0.05.
Reduction reduce_to_canonical(const FramePath& F, const ThetaSample& theta);
Reduction reduce_to_canonical(const FramePath& F, const ThetaSample& theta, const AnalyzeOptions& opts);

// Canonical frame and invariants on the given increasing grid. The ladder runs
// in truncated Taylor arithmetic at every node; jets of the curve come from
// the provider when available, otherwise from lattice stencils on v', xi'.
InvariantProfile analyze(const ParametrizedCurve& c, const std::vector<double>& grid,
                         const AnalyzeOptions& opts = {});
InvariantProfile analyze(const ParametrizedCurve& c, int steps, const AnalyzeOptions& opts = {});

// natural_lift -> mc_pullback -> reduce_to_canonical. The natural lift is
// less regular than an orbit frame; without options the lattice has 13
// nodes at spacing 0.02.
InvariantProfile analyze_sampled(const ParametrizedCurve& c, const std::vector<double>& grid);
InvariantProfile analyze_sampled(const ParametrizedCurve& c, const std::vector<double>& grid,
                                 const AnalyzeOptions& opts);

// Per-node result of the jet ladder, exposed for the serial/parallel kernels.
struct NodeResult {
  bool ok = false;
  ErrorKind error = ErrorKind::InvalidCurve;
  std::string message;
  // Contact pairing of the natural lift had negative sign.
  bool flipped = false;
  double rho = 0.0;
  double det_p = 0.0;
  double p2q2 = 0.0;
  double sigma = 0.0;
  double dsigma = 0.0;
  std::array<double, 4> kappa{};
  Mat6 frame = Mat6::Identity();
  Mat6 theta = Mat6::Zero();
};

// Maurer-Cartan jets at every ladder stage of one node, for inspection.
struct NodeStages {
  std::array<Mat6Jet, 5> theta;
  std::array<Mat6Jet, 4> gauge;
  Mat6Jet lift;
};

std::vector<NodeResult> canonical_nodes(const ParametrizedCurve& c, const std::vector<double>& grid,
                                        const AnalyzeOptions& opts);
// Ladder on the jet of a single node; throws the ladder errors.
NodeResult canonical_node(const CurveJet& jet, NodeStages* stages = nullptr);
// Curve jets of order 5 at every grid node.
std::vector<CurveJet> curve_jets(const ParametrizedCurve& c, const std::vector<double>& grid,
                                 const AnalyzeOptions& opts);

// Fornberg weights: w[d][i] approximates the d-th derivative at z from
// samples at x[i], d = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int max_order);

}  // namespace liesphere
