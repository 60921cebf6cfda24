#include "liesphere/core_algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace liesphere {

namespace {

Tolerances g_tolerances;

double max_abs(const Mat6& M) { return M.cwiseAbs().maxCoeff(); }

}  // namespace

const Tolerances& default_tolerances() { return g_tolerances; }
void set_default_tolerances(const Tolerances& tol) { g_tolerances = tol; }

const Mat2& mat_L() {
  static const Mat2 L = (Mat2() << 0, 1, 1, 0).finished();
  return L;
}

const Mat2& mat_I11() {
  static const Mat2 I = (Mat2() << 1, 0, 0, -1).finished();
  return I;
}

const Mat6& mat_h() {
  static const Mat6 h = [] {
    Mat6 m = Mat6::Zero();
    m.block<2, 2>(0, 4) = -mat_L();
    m.block<2, 2>(2, 2) = Mat2::Identity();
    m.block<2, 2>(4, 0) = -mat_L();
    return m;
  }();
  return h;
}

Vec6 basis_vector(int i) { return Vec6::Unit(i); }

double inner(const Vec6& x, const Vec6& y) {
  return -(x[0] * y[5] + x[5] * y[0]) - (x[1] * y[4] + x[4] * y[1]) + x[2] * y[2] + x[3] * y[3];
}

double group_residual(const Mat6& A) { return max_abs(A.transpose() * mat_h() * A - mat_h()); }

double relative_group_residual(const Mat6& A) {
  const double m = max_abs(A);
  return group_residual(A) / std::max(1.0, m * m);
}

double algebra_residual(const Mat6& X) { return max_abs(X.transpose() * mat_h() + mat_h() * X); }

AlgebraElement::AlgebraElement(const Mat6& X) : X_(X) {
  const double r = algebra_residual(X);
  if (!(r <= default_tolerances().algebra))
    throw Error(ErrorKind::NotInAlgebra, "algebra residual " + std::to_string(r));
}

AlgebraBlocks AlgebraElement::blocks() const {
  AlgebraBlocks b;
  b.X1 = X_.block<2, 2>(0, 0);
  b.X2 = X_.block<2, 2>(0, 2).transpose();
  b.X4 = X_.block<2, 2>(2, 0);
  b.X5 = X_.block<2, 2>(2, 2);
  b.t = X_(0, 4);
  b.s = X_(4, 0);
  return b;
}

Mat6 assemble_blocks(const AlgebraBlocks& b) {
  const Mat2& L = mat_L();
  const Mat2& I11 = mat_I11();
  Mat6 X;
  X.block<2, 2>(0, 0) = b.X1;
  X.block<2, 2>(0, 2) = b.X2.transpose();
  X.block<2, 2>(0, 4) = b.t * I11;
  X.block<2, 2>(2, 0) = b.X4;
  X.block<2, 2>(2, 2) = b.X5;
  X.block<2, 2>(2, 4) = b.X2 * L;
  X.block<2, 2>(4, 0) = b.s * I11;
  X.block<2, 2>(4, 2) = L * b.X4.transpose();
  X.block<2, 2>(4, 4) = -L * b.X1.transpose() * L;
  return X;
}

AlgebraElement algebra_from_blocks(const AlgebraBlocks& b) {
  const double asym = (b.X5 + b.X5.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= default_tolerances().algebra))
    throw Error(ErrorKind::NonAntisymmetricBlock, "X5 is not antisymmetric");
  AlgebraBlocks c = b;
  c.X5 = 0.5 * (b.X5 - b.X5.transpose());
  return AlgebraElement(assemble_blocks(c));
}

AlgebraElement algebra_from_blocks(const Mat2& X1, const Mat2& X2, const Mat2& X4, const Mat2& X5,
                                   double s, double t) {
  return algebra_from_blocks(AlgebraBlocks{X1, X2, X4, X5, s, t});
}

GroupElement::GroupElement(const Mat6& A) : A_(A) {
  const double r = group_residual(A);
  if (!(r <= default_tolerances().group))
    throw Error(ErrorKind::NotInGroup, "group residual " + std::to_string(r));
  if (!(A.determinant() > 0.0)) throw Error(ErrorKind::NotInGroup, "determinant is not positive");
}

GroupElement GroupElement::unchecked(const Mat6& A) {
  GroupElement g;
  g.A_ = A;
  return g;
}

Mat6 group_inverse(const Mat6& A) { return mat_h() * A.transpose() * mat_h(); }

GroupElement GroupElement::inverse() const { return unchecked(group_inverse(A_)); }

void validate_gauge(const GaugeElement& g, double tol) {
  if (!(g.C.determinant() > 0.0)) throw Error(ErrorKind::GaugeConstraintViolation, "det C must be positive");
  if ((g.B.transpose() * g.B - Mat2::Identity()).cwiseAbs().maxCoeff() > tol || g.B.determinant() < 0.0)
    throw Error(ErrorKind::GaugeConstraintViolation, "B must be a rotation");
  const Mat2& L = mat_L();
  const Mat2 Cinv = g.C.inverse();
  const Mat2 lhs = g.b * Cinv * L + L * Cinv.transpose() * g.b.transpose();
  const Mat2 rhs = g.Z.transpose() * g.Z;
  if ((lhs - rhs).cwiseAbs().maxCoeff() > tol * (1.0 + rhs.cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::GaugeConstraintViolation, "b C^-1 L + L C^-T b^T differs from Z^T Z");
}

GroupElement gauge_assemble(const GaugeElement& g) {
  validate_gauge(g);
  const Mat2& L = mat_L();
  Mat6 a = Mat6::Zero();
  a.block<2, 2>(0, 0) = L * g.C.inverse().transpose() * L;
  a.block<2, 2>(0, 2) = g.Z.transpose();
  a.block<2, 2>(0, 4) = g.b;
  a.block<2, 2>(2, 2) = g.B;
  a.block<2, 2>(2, 4) = g.B * g.Z * L * g.C;
  a.block<2, 2>(4, 4) = g.C;
  return GroupElement::unchecked(a);
}

GroupElement gauge_inverse(const GaugeElement& g) {
  validate_gauge(g);
  const Mat2& L = mat_L();
  const Mat2 LCtL = L * g.C.transpose() * L;
  Mat6 a = Mat6::Zero();
  a.block<2, 2>(0, 0) = LCtL;
  a.block<2, 2>(0, 2) = -LCtL * g.Z.transpose() * g.B.transpose();
  a.block<2, 2>(0, 4) = L * g.b.transpose() * L;
  a.block<2, 2>(2, 2) = g.B.transpose();
  a.block<2, 2>(2, 4) = -g.Z * L;
  a.block<2, 2>(4, 4) = g.C.inverse();
  return GroupElement::unchecked(a);
}

Mat6 expm(const Mat6& X) {
  // Diagonal Pade [6/6] after scaling to 1-norm <= 1/2, then squaring.
  static constexpr std::array<double, 7> c = {1.0,
                                              1.0 / 2.0,
                                              5.0 / 44.0,
                                              1.0 / 66.0,
                                              1.0 / 792.0,
                                              1.0 / 15840.0,
                                              1.0 / 665280.0};
  if (!X.allFinite()) throw Error(ErrorKind::ExpDivergence, "non-finite argument");
  const double norm = X.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  if (squarings > 64) throw Error(ErrorKind::ExpDivergence, "scaling exceeds the squaring budget");
  const Mat6 A = X / std::ldexp(1.0, squarings);
  const Mat6 A2 = A * A;
  const Mat6 A4 = A2 * A2;
  const Mat6 A6 = A4 * A2;
  const Mat6 I = Mat6::Identity();
  const Mat6 U = A * (c[1] * I + c[3] * A2 + c[5] * A4);
  const Mat6 V = c[0] * I + c[2] * A2 + c[4] * A4 + c[6] * A6;
  Mat6 E = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) E = E * E;
  if (!E.allFinite()) throw Error(ErrorKind::ExpDivergence, "exponential overflowed");
  return E;
}

GroupElement mat_exp(const AlgebraElement& X, double s) {
  if (s == 0.0) return GroupElement::identity();
  return retract_to_group(expm(s * X.matrix()));
}

GroupElement retract_to_group(const Mat6& M) {
  const Mat6& h = mat_h();
  const double initial = group_residual(M);
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff() * M.cwiseAbs().maxCoeff());
  if (!(initial <= 0.1 * scale))
    throw Error(ErrorKind::RetractionFailure, "input too far from the group (residual " +
                                                  std::to_string(initial) + ")");
  Mat6 A = M;
  double res = initial;
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  for (int it = 0; it < 50 && res > floor; ++it) {
    const Mat6 E = A.transpose() * h * A - h;
    Mat6 next = A * (Mat6::Identity() - 0.5 * h * E);
    const double r = group_residual(next);
    if (!(r < res)) break;
    A = next;
    res = r;
  }
  // Entries of size m carry a residual of order eps m^2 after rounding.
  if (!(res <= std::max(default_tolerances().group, 4.0 * floor)))
    throw Error(ErrorKind::RetractionFailure, "iteration did not converge");
  // The sign of det is unreliable once cond(A) ~ scale exceeds 1/eps.
  // The sign of det is unreliable once cond(A) ~ scale exceeds 1/eps.
  if (scale < 1e12 && !(A.determinant() > 0.0)) throw Error(ErrorKind::RetractionFailure, "determinant is negative");
  return GroupElement::unchecked(A);
}

Mat2 rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return (Mat2() << c, -s, s, c).finished();
}

const std::array<AlgebraElement, 15>& algebra_basis() {
  static const std::array<AlgebraElement, 15> basis = [] {
    std::array<AlgebraElement, 15> out;
    int n = 0;
    for (int which = 0; which < 3; ++which) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          AlgebraBlocks b;
          Mat2& m = which == 0 ? b.X1 : which == 1 ? b.X2 : b.X4;
          m(i, j) = 1.0;
          out[n++] = algebra_from_blocks(b);
        }
      }
    }
    AlgebraBlocks b5;
    b5.X5 << 0, -1, 1, 0;
    out[n++] = algebra_from_blocks(b5);
    AlgebraBlocks bs;
    bs.s = 1.0;
    out[n++] = algebra_from_blocks(bs);
    AlgebraBlocks bt;
    bt.t = 1.0;
    out[n++] = algebra_from_blocks(bt);
    return out;
  }();
  return basis;
}

namespace {

Mat2 random_mat2(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  Mat2 m;
  m << n(rng), n(rng), n(rng), n(rng);
  return m;
}

}  // namespace

AlgebraElement random_algebra_element(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  AlgebraBlocks b;
  b.X1 = random_mat2(rng, scale);
  b.X2 = random_mat2(rng, scale);
  b.X4 = random_mat2(rng, scale);
  const double w = n(rng);
  b.X5 << 0, -w, w, 0;
  b.s = n(rng);
  b.t = n(rng);
  return algebra_from_blocks(b);
}

GroupElement random_group_element(std::mt19937_64& rng, double scale) {
  return mat_exp(random_algebra_element(rng, scale), 1.0);
}

GaugeElement random_gauge_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GaugeElement g;
  // C near the identity keeps det C > 0 and the matrix well conditioned.
  g.C = Mat2::Identity() + 0.4 * random_mat2(rng, 1.0);
  if (g.C.determinant() < 0.0) g.C.col(0) *= -1.0;
  g.B = rotation(3.14159 * u(rng));
  g.Z = random_mat2(rng, 1.0);
  const double w = u(rng);
  Mat2 W;
  W << 0, -w, w, 0;
  g.b = (0.5 * g.Z.transpose() * g.Z + W) * mat_L() * g.C;
  return g;
}

}  // namespace liesphere
