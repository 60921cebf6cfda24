#pragma once

// Ladder pieces shared by the jet kernel and the sampled route.

#include "liesphere/moving_frame.hpp"

namespace liesphere::detail {

double complement_pivot(const Vec4& v, const Vec4& xi, int index);
int choose_complement(const Vec4& v, const Vec4& xi);
// Lift A0(v), A1(xi), J w2, J w3, A4, A5 with (v, xi, w2, w3) positively
// oriented and w2 built from the standard basis vector `complement`.
Mat6Jet lift_jet(const CurveJet& j, int complement);

Mat6Jet stage1_gauge(const Mat6Jet& theta);
Mat6Jet stage2_gauge(const Mat6Jet& theta, Jet* sigma);
Mat6Jet stage3_gauge(const Mat6Jet& theta);
Mat6Jet stage4_gauge(const Mat6Jet& theta);
void theta_pq(const Mat6Jet& theta, Jet& p, Jet& q);

struct StencilPlan {
  double dt = 0.0;
  int stride = 1;
  int half_width = 6;
};

StencilPlan plan_stencil(const std::vector<double>& grid, const AnalyzeOptions& opts);
CurveJet stencil_jet(const std::vector<CurveSample>& samples, const StencilPlan& plan, int k);
// Curve jet of order 5 at node k of a smooth frame path whose first two
// columns span the planes of the curve, fitted on the strided lattice.
CurveJet frame_stencil_jet(const std::vector<Mat6>& A, const StencilPlan& plan, int k);
bool use_exact_jets(const ParametrizedCurve& c, const AnalyzeOptions& opts);

// Ladder at every jet; failures are recorded per node.
std::vector<NodeResult> ladder_nodes(const std::vector<CurveJet>& jets, const std::vector<double>& grid,
                                     Execution execution, std::vector<NodeStages>* stages = nullptr);

}  // namespace liesphere::detail
