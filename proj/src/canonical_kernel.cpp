// Jet ladder at a single node and the serial/OpenMP loops over grid nodes.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "frame_internal.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include "liesphere/moving_frame.hpp"

namespace liesphere {

namespace {

constexpr int kCurveJetOrder = 5;

std::string at_node(double t) { return "at t = " + std::to_string(t); }

Mat6Jet group_inverse(const Mat6Jet& a) { return mat_h() * a.transpose() * mat_h(); }

// a^{-1} theta a + a^{-1} a'.
Mat6Jet gauge_transform(const Mat6Jet& theta, const Mat6Jet& a) {
  const Mat6Jet ainv = group_inverse(a);
  return ainv * theta * a + ainv * a.derivative();
}

Mat6Jet identity_jet(int order) { return Mat6Jet::constant(Mat6::Identity(), order); }

}  // namespace

namespace detail {

double complement_pivot(const Vec4& v, const Vec4& xi, int index) {
  const Vec4 c = Vec4::Unit(index);
  return (c - c.dot(v) * v - c.dot(xi) * xi).norm();
}

int choose_complement(const Vec4& v, const Vec4& xi) {
  int best = 0;
  double pivot = -1.0;
  for (int i = 0; i < 4; ++i) {
    const double p = complement_pivot(v, xi, i);
    if (p > pivot + 1e-12) {
      pivot = p;
      best = i;
    }
  }
  return best;
}

Mat6Jet lift_jet(const CurveJet& j, int complement) {
  const int n = std::min(j.v.order, j.xi.order);
  const double r2 = std::sqrt(2.0);
  const Vec4Jet c = Vec4Jet::constant(Vec4::Unit(complement), n);
  Vec4Jet w2 = c - dot(c, j.v) * j.v - dot(c, j.xi) * j.xi;
  w2 = inv(sqrt(dot(w2, w2))) * w2;
  const Vec4Jet w3 = cross4(j.v, j.xi, w2);
  const Vec6Jet Jv = embed_vector(j.v);
  const Vec6Jet Jxi = embed_vector(j.xi);
  Mat6Jet A(n);
  A.set_block<6, 1>(0, 0, (1.0 / r2) * (Vec6Jet::constant(vec_n0(), n) + Jv));
  A.set_block<6, 1>(0, 1, (1.0 / r2) * (Vec6Jet::constant(vec_n1(), n) + Jxi));
  A.set_block<6, 1>(0, 2, embed_vector(w2));
  A.set_block<6, 1>(0, 3, embed_vector(w3));
  A.set_block<6, 1>(0, 4, (1.0 / r2) * (Vec6Jet::constant(vec_n1(), n) - Jxi));
  A.set_block<6, 1>(0, 5, (1.0 / r2) * (Vec6Jet::constant(vec_n0(), n) - Jv));
  return A;
}

Mat6Jet stage1_gauge(const Mat6Jet& theta) {
  const int n = theta.order;
  const Jet rho = theta.entry(4, 0);
  const Mat2 I11L = mat_I11() * mat_L();
  const Mat2Jet Z = inv(rho) * (theta.block<2, 2>(2, 0) * I11L);
  const Mat2Jet b = 0.5 * (Z.transpose() * Z * mat_L());
  Mat6Jet a = identity_jet(n);
  a.set_block<2, 2>(0, 2, Z.transpose());
  a.set_block<2, 2>(0, 4, b);
  a.set_block<2, 2>(2, 4, Z * mat_L());
  return a;
}

Mat6Jet stage2_gauge(const Mat6Jet& theta, Jet* sigma) {
  const int n = theta.order;
  const Jet rho = theta.entry(4, 0);
  const Mat2Jet P = inv(rho) * theta.block<2, 2>(2, 4);
  const Jet cdet = cbrt(det2(P));
  const Mat2Jet C = cdet * inverse2(P);
  Mat6Jet a = identity_jet(n);
  a.set_block<2, 2>(0, 0, mat_L() * inverse2(C).transpose() * mat_L());
  a.set_block<2, 2>(4, 4, C);
  if (sigma) *sigma = rho * cdet;
  return a;
}

Mat6Jet stage3_gauge(const Mat6Jet& theta) {
  const int n = theta.order;
  const Jet sigma = theta.entry(4, 0);
  const Jet h = (theta.entry(0, 0) + theta.entry(1, 1)) / (2.0 * sigma);
  Mat6Jet a = identity_jet(n);
  a.set_entry(0, 4, h);
  a.set_entry(1, 5, -h);
  return a;
}

void theta_pq(const Mat6Jet& theta, Jet& p, Jet& q) {
  const Jet sigma = theta.entry(4, 0);
  p = 0.5 * (theta.entry(0, 1) + theta.entry(1, 0)) / sigma;
  q = theta.entry(1, 1) / sigma;
}

Mat6Jet stage4_gauge(const Mat6Jet& theta) {
  const int n = theta.order;
  Jet p, q;
  theta_pq(theta, p, q);
  // Conjugation by diag(B^T, B, B) rotates (q, p) by -2 phi; this phi sends
  // (q, p) to (-r, 0), so kappa1 = -q = r > 0.
  const Jet phi = 0.5 * (atan2(p, q) - std::numbers::pi);
  const Jet c = cos(phi), s = sin(phi);
  Mat2Jet B(n);
  B.set_entry(0, 0, c);
  B.set_entry(0, 1, -s);
  B.set_entry(1, 0, s);
  B.set_entry(1, 1, c);
  Mat6Jet a(n);
  a.set_block<2, 2>(0, 0, B.transpose());
  a.set_block<2, 2>(2, 2, B);
  a.set_block<2, 2>(4, 4, B);
  return a;
}

}  // namespace detail

namespace {

void run_ladder(const CurveJet& input, NodeResult& out, NodeStages* stages) {
  using namespace detail;
  CurveJet j = input;
  project_to_t1s3(j);
  const int complement = choose_complement(j.v.value(), j.xi.value());
  Mat6Jet A = lift_jet(j, complement);
  Mat6Jet theta = group_inverse(A).truncated(A.order - 1) * A.derivative();

  const double rho = theta.value()(4, 0);
  out.rho = rho;
  if (!(std::abs(rho) >= 1e-8 * theta.value().cwiseAbs().maxCoeff() + 1e-14))
    throw Error(ErrorKind::Transversality, "contact pairing vanishes");
  out.flipped = rho < 0.0;
  if (out.flipped) {
    A = A * orientation_flip();
    theta = orientation_flip() * theta * orientation_flip();
  }
  out.rho = std::abs(rho);
  if (stages) {
    stages->lift = A;
    stages->theta[0] = theta;
  }

  const Mat6Jet a1 = stage1_gauge(theta);
  const Mat6Jet theta1 = gauge_transform(theta, a1);

  const Mat2 P = theta_p_block(theta1.value()) / theta1.value()(4, 0);
  out.det_p = P.determinant();
  if (std::abs(out.det_p) < 1e-8) throw Error(ErrorKind::Nondegeneracy, "det P vanishes");
  if (out.det_p < 0.0) throw Error(ErrorKind::Orientation, "det P is negative");
  Jet sigma;
  const Mat6Jet a2 = stage2_gauge(theta1, &sigma);
  const Mat6Jet theta2 = gauge_transform(theta1, a2);

  const Mat6Jet a3 = stage3_gauge(theta2);
  const Mat6Jet theta3 = gauge_transform(theta2, a3);

  Jet p, q;
  theta_pq(theta3, p, q);
  out.p2q2 = p.value() * p.value() + q.value() * q.value();
  if (out.p2q2 < 1e-12) throw Error(ErrorKind::Genericity, "p^2 + q^2 vanishes");
  const Mat6Jet a4 = stage4_gauge(theta3);
  const Mat6Jet theta4 = gauge_transform(theta3, a4);

  if (stages) {
    stages->theta[1] = theta1;
    stages->theta[2] = theta2;
    stages->theta[3] = theta3;
    stages->theta[4] = theta4;
    stages->gauge = {a1, a2, a3, a4};
  }

  const Mat6& th = theta4.value();
  out.sigma = sigma.value();
  out.dsigma = sigma.order() >= 1 ? sigma[1] : 0.0;
  out.kappa = {th(0, 0) / out.sigma, th(1, 0) / out.sigma, th(3, 2) / out.sigma, th(0, 4) / out.sigma};
  out.frame = A.value() * a1.value() * a2.value() * a3.value() * a4.value();
  out.theta = th;
  out.ok = true;
}

}  // namespace

NodeResult canonical_node(const CurveJet& input, NodeStages* stages) {
  NodeResult out;
  run_ladder(input, out, stages);
  return out;
}

std::vector<std::vector<double>> fornberg_weights(double z, const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<std::vector<double>> w(m + 1, std::vector<double>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int d = 0; d <= m; ++d) w[d][i] = c[i][d];
  return w;
}

namespace detail {

StencilPlan plan_stencil(const std::vector<double>& grid, const AnalyzeOptions& opts) {
  StencilPlan plan;
  const int nodes = static_cast<int>(grid.size());
  const int M = opts.stencil_half_width;
  if (M < 3) throw Error(ErrorKind::InvalidParams, "stencil half width must be at least 3");
  if (nodes < 2 * M + 1)
    throw Error(ErrorKind::GridTooCoarse, "stencil needs at least " + std::to_string(2 * M + 1) + " nodes");
  const double span = grid.back() - grid.front();
  plan.dt = span / (nodes - 1);
  for (int k = 0; k < nodes; ++k)
    if (std::abs(grid[k] - (grid.front() + k * plan.dt)) > 1e-9 * span)
      throw Error(ErrorKind::InvalidParams, "stencil derivatives need a uniform grid");
  int stride = static_cast<int>(std::lround(opts.stencil_spacing * span / plan.dt));
  stride = std::clamp(stride, 1, (nodes - 1) / (2 * M));
  plan.stride = stride;
  plan.half_width = M;
  return plan;
}

CurveJet stencil_jet(const std::vector<CurveSample>& samples, const StencilPlan& plan, int k) {
  const int nodes = static_cast<int>(samples.size());
  const int M = plan.half_width, m = plan.stride;
  const int start = std::clamp(k - M * m, 0, nodes - 1 - 2 * M * m);
  std::vector<double> x(2 * M + 1);
  for (int i = 0; i <= 2 * M; ++i) x[i] = (start + i * m - k) * plan.dt;
  const auto w = fornberg_weights(0.0, x, kCurveJetOrder - 1);
  CurveJet j;
  j.v = Vec4Jet(kCurveJetOrder);
  j.xi = Vec4Jet(kCurveJetOrder);
  j.v.c[0] = samples[k].v;
  j.xi.c[0] = samples[k].xi;
  j.v.c[1] = samples[k].dv;
  j.xi.c[1] = samples[k].dxi;
  double fact = 1.0;
  for (int d = 1; d < kCurveJetOrder; ++d) {
    fact *= d + 1;
    Vec4 dv = Vec4::Zero(), dxi = Vec4::Zero();
    for (int i = 0; i <= 2 * M; ++i) {
      dv += w[d][i] * samples[start + i * m].dv;
      dxi += w[d][i] * samples[start + i * m].dxi;
    }
    j.v.c[d + 1] = dv / fact;
    j.xi.c[d + 1] = dxi / fact;
  }
  return j;
}

CurveJet frame_stencil_jet(const std::vector<Mat6>& A, const StencilPlan& plan, int k) {
  const int nodes = static_cast<int>(A.size());
  const int M = plan.half_width, m = plan.stride;
  const int start = std::clamp(k - M * m, 0, nodes - 1 - 2 * M * m);
  std::vector<double> x(2 * M + 1);
  for (int i = 0; i <= 2 * M; ++i) x[i] = (start + i * m - k) * plan.dt;
  const auto w = fornberg_weights(0.0, x, kCurveJetOrder);
  // Y(tau) = log(A_k^-1 A(t_k + tau)) is smooth with Y(0) = 0 and linear
  // along orbits, so it is fitted instead of the frame itself.
  const Mat6 Ainv = group_inverse(A[k]);
  std::vector<Mat6> Y(2 * M + 1);
  for (int i = 0; i <= 2 * M; ++i) {
    const int idx = start + i * m;
    Y[i] = idx == k ? Mat6::Zero() : Mat6((Ainv * A[idx]).log());
    if (!Y[i].allFinite()) throw Error(ErrorKind::GridTooCoarse, "stencil frames too far apart for a logarithm");
  }
  Mat6Jet Yj(kCurveJetOrder);
  double fact = 1.0;
  for (int d = 1; d <= kCurveJetOrder; ++d) {
    fact *= d;
    Mat6 c = Mat6::Zero();
    for (int i = 0; i <= 2 * M; ++i) c += w[d][i] * Y[i];
    Yj.c[d] = c / fact;
  }
  Mat6Jet E = Mat6Jet::constant(Mat6::Identity(), kCurveJetOrder);
  Mat6Jet term = E;
  for (int n = 1; n <= kCurveJetOrder; ++n) {
    term = (1.0 / n) * (term * Yj);
    E += term;
  }
  const Mat6Jet F = A[k] * E;
  Vec6Jet x0(kCurveJetOrder), x1(kCurveJetOrder);
  for (int d = 0; d <= kCurveJetOrder; ++d) {
    x0.c[d] = F.c[d].col(0);
    x1.c[d] = F.c[d].col(1);
  }
  CurveJet j;
  plane_jet_to_t1s3(x0, x1, j.v, j.xi);
  return j;
}

bool use_exact_jets(const ParametrizedCurve& c, const AnalyzeOptions& opts) {
  switch (opts.source) {
    case DerivativeSource::Exact:
      if (!c.has_jets()) throw Error(ErrorKind::InvalidCurve, "curve does not provide jets");
      return true;
    case DerivativeSource::Stencil: return false;
    case DerivativeSource::Auto: break;
  }
  return c.has_jets();
}

}  // namespace detail

namespace {

NodeResult run_node(const ParametrizedCurve& c, const std::vector<double>& grid, int k, bool exact,
                    const std::vector<CurveSample>& samples, const detail::StencilPlan& plan) {
  NodeResult r;
  try {
    CurveJet j;
    if (exact) {
      j = c.jet(grid[k], kCurveJetOrder);
      validate_sample(sample_from_jet(j));
    } else {
      j = detail::stencil_jet(samples, plan, k);
    }
    run_ladder(j, r, nullptr);
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.kind();
    r.message = e.detail() + " " + at_node(grid[k]);
  }
  return r;
}

}  // namespace

std::vector<NodeResult> canonical_nodes(const ParametrizedCurve& c, const std::vector<double>& grid,
                                        const AnalyzeOptions& opts) {
  const int n = static_cast<int>(grid.size());
  const bool exact = detail::use_exact_jets(c, opts);
  std::vector<CurveSample> samples;
  detail::StencilPlan plan;
  if (!exact) {
    plan = detail::plan_stencil(grid, opts);
    samples.resize(n);
    for (int k = 0; k < n; ++k) {
      samples[k] = c.sample(grid[k]);
      try {
        validate_sample(samples[k]);
      } catch (const Error& e) {
        throw Error(e.kind(), e.detail() + " " + at_node(grid[k]));
      }
    }
  }
  std::vector<NodeResult> out(n);
  if (opts.execution == Execution::Parallel) {
#ifdef LIESPHERE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (int k = 0; k < n; ++k) out[k] = run_node(c, grid, k, exact, samples, plan);
  } else {
    for (int k = 0; k < n; ++k) out[k] = run_node(c, grid, k, exact, samples, plan);
  }
  return out;
}

std::vector<NodeResult> detail::ladder_nodes(const std::vector<CurveJet>& jets, const std::vector<double>& grid,
                                            Execution execution, std::vector<NodeStages>* stages) {
  const int n = static_cast<int>(jets.size());
  std::vector<NodeResult> out(n);
  if (stages) stages->assign(n, NodeStages{});
  auto one = [&](int k) {
    try {
      run_ladder(jets[k], out[k], stages ? &(*stages)[k] : nullptr);
    } catch (const Error& e) {
      out[k].ok = false;
      out[k].error = e.kind();
      out[k].message = e.detail() + " " + at_node(grid[k]);
    }
  };
  if (execution == Execution::Parallel) {
#ifdef LIESPHERE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (int k = 0; k < n; ++k) one(k);
  } else {
    for (int k = 0; k < n; ++k) one(k);
  }
  return out;
}

std::vector<CurveJet> curve_jets(const ParametrizedCurve& c, const std::vector<double>& grid,
                                 const AnalyzeOptions& opts) {
  const int n = static_cast<int>(grid.size());
  std::vector<CurveJet> out(n);
  if (detail::use_exact_jets(c, opts)) {
    for (int k = 0; k < n; ++k) out[k] = c.jet(grid[k], kCurveJetOrder);
    return out;
  }
  const detail::StencilPlan plan = detail::plan_stencil(grid, opts);
  std::vector<CurveSample> samples(n);
  for (int k = 0; k < n; ++k) samples[k] = c.sample(grid[k]);
  for (int k = 0; k < n; ++k) out[k] = detail::stencil_jet(samples, plan, k);
  return out;
}

}  // namespace liesphere
