#include "liesphere/moving_frame.hpp"

#include <cmath>
#include <string>

#include "frame_internal.hpp"

namespace liesphere {

namespace {

std::string at_node(double t) { return " at t = " + std::to_string(t); }

void check_uniform(const std::vector<double>& t) {
  const double span = t.back() - t.front();
  const double dt = span / (static_cast<double>(t.size()) - 1);
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::abs(t[k] - (t.front() + k * dt)) > 1e-9 * span)
      throw Error(ErrorKind::InvalidParams, "sampled route needs a uniform grid");
}

// Second-order differences on a uniform path, one-sided at the ends.
std::vector<Mat6> difference(const std::vector<double>& t, const std::vector<Mat6>& a) {
  const std::size_t n = a.size();
  if (n < 3) throw Error(ErrorKind::GridTooCoarse, "differencing needs at least 3 nodes");
  check_uniform(t);
  const double dt = (t.back() - t.front()) / (static_cast<double>(n) - 1);
  std::vector<Mat6> d(n);
  d[0] = (-3.0 * a[0] + 4.0 * a[1] - a[2]) / (2.0 * dt);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (a[k + 1] - a[k - 1]) / (2.0 * dt);
  d[n - 1] = (3.0 * a[n - 1] - 4.0 * a[n - 2] + a[n - 3]) / (2.0 * dt);
  return d;
}

void check_grid(const ParametrizedCurve& c, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::GridTooCoarse, "empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorKind::InvalidParams, "grid must strictly increase");
  const double slack = 1e-12 * std::max(1.0, c.t_max() - c.t_min());
  if (grid.front() < c.t_min() - slack || grid.back() > c.t_max() + slack)
    throw Error(ErrorKind::OutOfDomain, "grid leaves the curve domain");
}

InvariantProfile assemble_profile(const std::vector<double>& grid, const std::vector<NodeResult>& nodes) {
  const std::size_t n = nodes.size();
  // The lowest node wins; a sign change of the pairing between nodes counts
  // as a transversality failure at the first node past it.
  for (std::size_t k = 0; k < n; ++k) {
    const NodeResult& r = nodes[k];
    const bool paired = r.ok || r.error != ErrorKind::Transversality;
    if (k > 0 && paired && r.flipped != nodes[0].flipped)
      throw Error(ErrorKind::Transversality, "contact pairing changes sign" + at_node(grid[k]));
    if (!r.ok) throw Error(r.error, r.message);
  }

  InvariantProfile prof;
  prof.t = grid;
  prof.s.assign(n, 0.0);
  prof.frames.t = grid;
  prof.frames.A.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const NodeResult& r = nodes[k];
    prof.sigma.push_back(r.sigma);
    prof.kappa.push_back(r.kappa);
    prof.rho.push_back(r.rho);
    prof.det_p.push_back(r.det_p);
    prof.p2q2.push_back(r.p2q2);
    prof.theta.push_back(r.theta);
    Mat6 A = r.frame;
    // The canonical frame is fixed up to sign; keep the path continuous.
    if (k > 0 && (A - prof.frames.A[k - 1]).norm() > (A + prof.frames.A[k - 1]).norm()) A = -A;
    prof.frames.A[k] = A;
    if (k > 0) {
      const double d = grid[k] - grid[k - 1];
      const NodeResult& a = nodes[k - 1];
      prof.s[k] = prof.s[k - 1] + 0.5 * d * (a.sigma + r.sigma) + d * d / 12.0 * (a.dsigma - r.dsigma);
    }
  }
  return prof;
}

}  // namespace

double theta_rho(const Mat6& theta) { return theta(4, 0); }
Mat2 theta_omega4(const Mat6& theta) { return theta.block<2, 2>(2, 0); }
Mat2 theta_p_block(const Mat6& theta) { return theta.block<2, 2>(2, 4); }
Mat2 theta_theta1(const Mat6& theta) { return theta.block<2, 2>(0, 0); }

std::vector<double> uniform_grid(double t0, double t1, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidParams, "steps must be positive");
  if (!(t1 > t0)) throw Error(ErrorKind::InvalidParams, "empty parameter interval");
  std::vector<double> g(steps + 1);
  for (int k = 0; k <= steps; ++k) g[k] = t0 + (t1 - t0) * k / steps;
  g.back() = t1;
  return g;
}

const Mat6& orientation_flip() {
  static const Mat6 f = [] {
    Vec6 d;
    d << 1, -1, 1, 1, -1, 1;
    return Mat6(d.asDiagonal());
  }();
  return f;
}

FramePath natural_lift(const ParametrizedCurve& c, const std::vector<double>& grid) {
  check_grid(c, grid);
  FramePath F;
  F.t = grid;
  F.A.resize(grid.size());
  int complement = -1;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CurveJet j = jet_from_sample(c.sample(grid[k]));
    project_to_t1s3(j);
    const Vec4 v = j.v.value(), xi = j.xi.value();
    if (complement < 0) complement = detail::choose_complement(v, xi);
    if (detail::complement_pivot(v, xi, complement) < 1e-10)
      throw Error(ErrorKind::LiftFailure, "complement vector lies in span(v, xi)" + at_node(grid[k]));
    CurveJet j0{Vec4Jet::constant(v, 0), Vec4Jet::constant(xi, 0)};
    F.A[k] = detail::lift_jet(j0, complement).value();
  }
  return F;
}

ThetaSample mc_pullback(const FramePath& F) {
  ThetaSample out;
  out.t = F.t;
  const std::vector<Mat6> dA = difference(F.t, F.A);
  out.theta.resize(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) out.theta[k] = group_inverse(F.A[k]) * dA[k];
  return out;
}

Reduction reduce_to_canonical(const FramePath& F, const ThetaSample& theta, const AnalyzeOptions& opts) {
  const std::size_t n = F.size();
  if (n == 0) throw Error(ErrorKind::GridTooCoarse, "empty frame path");
  if (theta.theta.size() != n) throw Error(ErrorKind::InvalidParams, "frame and form sizes differ");
  for (std::size_t k = 1; k < n; ++k)
    if (!(F.t[k] > F.t[k - 1])) throw Error(ErrorKind::InvalidParams, "grid must strictly increase");
  const detail::StencilPlan plan = detail::plan_stencil(F.t, opts);
  std::vector<CurveJet> jets(n);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      jets[k] = detail::frame_stencil_jet(F.A, plan, static_cast<int>(k));
    } catch (const Error& e) {
      throw Error(e.kind(), e.detail() + at_node(F.t[k]));
    }
  }
  std::vector<NodeStages> stages;
  const std::vector<NodeResult> nodes = detail::ladder_nodes(jets, F.t, opts.execution, &stages);

  Reduction red;
  red.profile = assemble_profile(F.t, nodes);
  red.frames = red.profile.frames;
  for (int i = 0; i < 5; ++i) {
    red.stages[i].t = F.t;
    red.stages[i].theta.resize(n);
    for (std::size_t k = 0; k < n; ++k) red.stages[i].theta[k] = stages[k].theta[i].value();
  }
  return red;
}

InvariantProfile analyze(const ParametrizedCurve& c, const std::vector<double>& grid, const AnalyzeOptions& opts) {
  check_grid(c, grid);
  return assemble_profile(grid, canonical_nodes(c, grid, opts));
}

InvariantProfile analyze(const ParametrizedCurve& c, int steps, const AnalyzeOptions& opts) {
  return analyze(c, uniform_grid(c.t_min(), c.t_max(), steps), opts);
}

Reduction reduce_to_canonical(const FramePath& F, const ThetaSample& theta) {
  AnalyzeOptions opts;
  opts.stencil_half_width = 4;
  opts.stencil_spacing = 0.05;
  return reduce_to_canonical(F, theta, opts);
}

InvariantProfile analyze_sampled(const ParametrizedCurve& c, const std::vector<double>& grid) {
  AnalyzeOptions opts;
  opts.stencil_half_width = 6;
  opts.stencil_spacing = 0.02;
  return analyze_sampled(c, grid, opts);
}

InvariantProfile analyze_sampled(const ParametrizedCurve& c, const std::vector<double>& grid,
                                 const AnalyzeOptions& opts) {
  const FramePath F = natural_lift(c, grid);
  return reduce_to_canonical(F, mc_pullback(F), opts).profile;
}

}  // namespace liesphere
