#include "liesphere/reconstruction.hpp"

#include <cmath>
#include <numbers>

namespace liesphere {

namespace {

constexpr int kRetractEvery = 100;
constexpr double kDriftTol = 1e-13;

const double kA1 = 0.25 + std::sqrt(3.0) / 6.0;
const double kA2 = 0.25 - std::sqrt(3.0) / 6.0;
const double kC1 = 0.5 - std::sqrt(3.0) / 6.0;
const double kC2 = 0.5 + std::sqrt(3.0) / 6.0;

Mat6 cf4_step(const GeneratorField& K, double s, double h) {
  const Mat6 K1 = K(s + kC1 * h, 0).value();
  const Mat6 K2 = K(s + kC2 * h, 0).value();
  return expm(h * (kA1 * K1 + kA2 * K2)) * expm(h * (kA2 * K1 + kA1 * K2));
}

double max_abs(const Mat6& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

CurvatureSpec CurvatureSpec::constants(const std::array<double, 4>& k, double length) {
  CurvatureSpec spec;
  spec.length = length;
  for (int i = 0; i < 4; ++i) {
    const double c = k[i];
    spec.kappa[i] = [c](const Jet& s) { return Jet(c, s.order()); };
  }
  return spec;
}

CurvatureSpec CurvatureSpec::fourier(const std::array<FourierSeries, 4>& k, double period, double length) {
  if (!(period > 0.0)) throw Error(ErrorKind::InvalidSpec, "fourier period must be positive");
  CurvatureSpec spec;
  spec.length = length;
  for (int i = 0; i < 4; ++i) {
    const FourierSeries f = k[i];
    if (f.a.size() != f.b.size()) throw Error(ErrorKind::InvalidSpec, "cosine and sine tables differ in length");
    const double w = 2.0 * std::numbers::pi / period;
    spec.kappa[i] = [f, w](const Jet& s) {
      Jet r(f.a0, s.order());
      for (std::size_t j = 0; j < f.a.size(); ++j) {
        const Jet x = (w * static_cast<double>(j + 1)) * s;
        r += f.a[j] * cos(x) + f.b[j] * sin(x);
      }
      return r;
    };
  }
  return spec;
}

std::array<double, 4> CurvatureSpec::at(double s) const {
  const Jet x(s, 0);
  return {kappa[0](x).value(), kappa[1](x).value(), kappa[2](x).value(), kappa[3](x).value()};
}

std::array<Jet, 4> CurvatureSpec::at(const Jet& s) const { return {kappa[0](s), kappa[1](s), kappa[2](s), kappa[3](s)}; }

void validate_spec(const CurvatureSpec& spec, int samples) {
  if (!(spec.length >= 0.0) || !std::isfinite(spec.length))
    throw Error(ErrorKind::InvalidSpec, "interval length must be finite and non-negative");
  for (int i = 0; i < 4; ++i)
    if (!spec.kappa[i]) throw Error(ErrorKind::InvalidSpec, "missing curvature function");
  for (int k = 0; k < samples; ++k) {
    const double s = samples > 1 ? spec.length * k / (samples - 1) : 0.0;
    const auto v = spec.at(s);
    for (double x : v)
      if (!std::isfinite(x)) throw Error(ErrorKind::InvalidSpec, "non-finite curvature");
    if (std::abs(v[0]) < 1e-8) throw Error(ErrorKind::InvalidSpec, "kappa1 must stay away from zero");
  }
}

Mat6 curvature_block_matrix(const std::array<double, 4>& k) {
  const Mat2& L = mat_L();
  const Mat2& I11 = mat_I11();
  AlgebraBlocks b;
  b.X1 = k[0] * I11 + k[1] * L * I11;
  b.X2 = L;
  b.X5 = k[2] * L * I11;
  b.s = 1.0;
  b.t = k[3];
  return assemble_blocks(b);
}

AlgebraElement curvature_matrix(const CurvatureSpec& spec, double s) {
  return AlgebraElement(curvature_block_matrix(spec.at(s)));
}

Mat6Jet curvature_jet(const CurvatureSpec& spec, double s, int order) {
  const std::array<Jet, 4> k = spec.at(Jet::variable(s, order));
  Mat6Jet K(order);
  for (int j = 0; j <= order; ++j) {
    K.c[j] = curvature_block_matrix({k[0][j], k[1][j], k[2][j], k[3][j]});
    if (j > 0) {
      // Constant structure entries belong to the value only.
      K.c[j] -= curvature_block_matrix({0.0, 0.0, 0.0, 0.0});
    }
  }
  return K;
}

GeneratorField curvature_field(const CurvatureSpec& spec) {
  return [spec](double s, int order) { return curvature_jet(spec, s, order); };
}

FramePath integrate_field(const GeneratorField& K, const GroupElement& A_init, double t0, double t1, int steps) {
  FramePath F;
  if (t1 == t0) {
    F.t = {t0};
    F.A = {A_init.matrix()};
    return F;
  }
  if (steps < 2) throw Error(ErrorKind::InvalidParams, "frame integration needs at least 2 steps");
  F.t = uniform_grid(t0, t1, steps);
  F.A.resize(steps + 1);
  F.A[0] = A_init.matrix();
  const double h = (t1 - t0) / steps;
  for (int k = 0; k < steps; ++k) {
    Mat6 A = F.A[k] * cf4_step(K, F.t[k], h);
    if ((k + 1) % kRetractEvery == 0 && relative_group_residual(A) > kDriftTol) A = retract_to_group(A).matrix();
    if (!A.allFinite()) throw Error(ErrorKind::ExpDivergence, "frame integration diverged");
    F.A[k + 1] = A;
  }
  return F;
}

FramePath integrate_frame(const CurvatureSpec& spec, const GroupElement& A_init, int steps) {
  if (!(spec.length >= 0.0)) throw Error(ErrorKind::InvalidSpec, "interval length must be non-negative");
  return integrate_field(curvature_field(spec), A_init, 0.0, spec.length, steps);
}

FramePathCurve::FramePathCurve(GeneratorField K, FramePath frames) : K_(std::move(K)), frames_(std::move(frames)) {
  if (frames_.size() < 2) throw Error(ErrorKind::InvalidCurve, "frame path needs at least 2 nodes");
}

CurveSample FramePathCurve::sample(double t) const {
  const auto& s = frames_.t;
  if (t < s.front() || t > s.back()) throw Error(ErrorKind::OutOfDomain, "t outside the frame path");
  std::size_t k = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), t) - s.begin());
  k = std::clamp<std::size_t>(k, 1, s.size() - 1) - 1;
  const double h = s[k + 1] - s[k];
  const double x = (t - s[k]) / h;
  const double h00 = 2 * x * x * x - 3 * x * x + 1, h10 = x * x * x - 2 * x * x + x;
  const double h01 = -2 * x * x * x + 3 * x * x, h11 = x * x * x - x * x;
  const double d00 = (6 * x * x - 6 * x) / h, d10 = 3 * x * x - 4 * x + 1;
  const double d01 = (-6 * x * x + 6 * x) / h, d11 = 3 * x * x - 2 * x;
  const Mat6& A = frames_.A[k];
  const Mat6& B = frames_.A[k + 1];
  const Mat6 dA = A * K_(s[k], 0).value();
  const Mat6 dB = B * K_(s[k + 1], 0).value();
  const Mat6 M = h00 * A + h10 * h * dA + h01 * B + h11 * h * dB;
  const Mat6 dM = d00 * A + d10 * dA + d01 * B + d11 * dB;
  const TangentPointVelocity p = plane_velocity_to_t1s3(M.col(0), M.col(1), dM.col(0), dM.col(1));
  CurveJet j;
  j.v = Vec4Jet(1);
  j.xi = Vec4Jet(1);
  j.v.c[0] = p.point.v;
  j.v.c[1] = p.dv;
  j.xi.c[0] = p.point.xi;
  j.xi.c[1] = p.dxi;
  project_to_t1s3(j);
  return sample_from_jet(j);
}

Mat6 FramePathCurve::frame_at(double t) const {
  const auto& s = frames_.t;
  if (t < s.front() || t > s.back()) throw Error(ErrorKind::OutOfDomain, "t outside the frame path");
  const double dt = (s.back() - s.front()) / (static_cast<double>(s.size()) - 1);
  const std::size_t k = static_cast<std::size_t>(
      std::clamp(std::lround((t - s.front()) / dt), 0L, static_cast<long>(s.size()) - 1));
  Mat6 A = frames_.A[k];
  const double gap = t - s[k];
  if (gap == 0.0) return A;
  const int sub = 4;
  for (int i = 0; i < sub; ++i) A = A * cf4_step(K_, s[k] + gap * i / sub, gap / sub);
  return A;
}

CurveJet FramePathCurve::jet(double t, int order) const {
  // A(t + tau) = sum a_j tau^j with (j + 1) a_{j+1} = sum_i a_i K_{j-i}.
  const Mat6Jet K = K_(t, order);
  Mat6Jet A(order);
  A.c[0] = frame_at(t);
  for (int j = 0; j < order; ++j) {
    Mat6 acc = Mat6::Zero();
    for (int i = 0; i <= j; ++i) acc += A.c[i] * K.c[j - i];
    A.c[j + 1] = acc / (j + 1);
  }
  CurveJet out;
  plane_jet_to_t1s3(A.block<6, 1>(0, 0), A.block<6, 1>(0, 1), out.v, out.xi);
  return out;
}

ReconstructedCurve reconstruct_curve(const CurvatureSpec& spec, const GroupElement& A_init, int steps) {
  validate_spec(spec);
  ReconstructedCurve r;
  r.frames = integrate_frame(spec, A_init, steps);
  r.planes.reserve(r.frames.size());
  for (const Mat6& A : r.frames.A) r.planes.push_back(IsotropicPlane{A.col(0), A.col(1)});
  if (r.frames.size() >= 2) r.curve = std::make_shared<FramePathCurve>(curvature_field(spec), r.frames);
  return r;
}

GroupElement congruence_transform(const FramePath& F, const FramePath& G, double tol) {
  if (F.size() != G.size() || F.size() == 0)
    throw Error(ErrorKind::InvalidParams, "frame paths must share a non-empty grid");
  const Mat6 g = G.A[0] * group_inverse(F.A[0]);
  for (std::size_t k = 0; k < F.size(); ++k) {
    const Mat6 gF = g * F.A[k];
    const double d = std::min(max_abs(G.A[k] - gF), max_abs(G.A[k] + gF));
    if (d > tol)
      throw Error(ErrorKind::NotCongruent, "frames differ by " + std::to_string(d) + " at node " + std::to_string(k));
  }
  return GroupElement::unchecked(g);
}

}  // namespace liesphere
