#include "liesphere/lambda_space.hpp"

#include <cmath>

namespace liesphere {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Vec6 make_vec(double a0, double a1, double a2, double a3, double a4, double a5) {
  Vec6 v;
  v << a0, a1, a2, a3, a4, a5;
  return v;
}

const Vec6& vec_f0() {
  static const Vec6 f = make_vec(1, 0, 0, 0, 0, -1) / kSqrt2;
  return f;
}

const Vec6& vec_f1() {
  static const Vec6 f = make_vec(0, 1, 0, 0, -1, 0) / kSqrt2;
  return f;
}

// Matrix of J: R^4 -> R^6.
const Eigen::Matrix<double, 6, 4>& mat_J() {
  static const Eigen::Matrix<double, 6, 4> J = [] {
    Eigen::Matrix<double, 6, 4> m;
    m.col(0) = -vec_f0();
    m.col(1) = -vec_f1();
    m.col(2) = Vec6::Unit(2);
    m.col(3) = Vec6::Unit(3);
    return m;
  }();
  return J;
}

// Left inverse of J on the complement of span(n0, n1).
const Eigen::Matrix<double, 4, 6>& mat_Jinv() {
  static const Eigen::Matrix<double, 4, 6> P = [] {
    Eigen::Matrix<double, 4, 6> m;
    m.row(0) = -(vec_f0().transpose() * mat_h());
    m.row(1) = -(vec_f1().transpose() * mat_h());
    m.row(2) = Vec6::Unit(2).transpose();
    m.row(3) = Vec6::Unit(3).transpose();
    return m;
  }();
  return P;
}

// Rows give z -> -<z, n0> and z -> -<z, n1>.
const Eigen::Matrix<double, 2, 6>& mat_alpha() {
  static const Eigen::Matrix<double, 2, 6> a = [] {
    Eigen::Matrix<double, 2, 6> m;
    m.row(0) = -(vec_n0().transpose() * mat_h());
    m.row(1) = -(vec_n1().transpose() * mat_h());
    return m;
  }();
  return a;
}

}  // namespace

void validate_unit_tangent(const UnitTangentPoint& p, double tol) {
  if (!p.v.allFinite() || !p.xi.allFinite())
    throw Error(ErrorKind::InvalidUnitTangent, "non-finite components");
  if (std::abs(p.v.norm() - 1.0) > tol) throw Error(ErrorKind::InvalidUnitTangent, "v is not a unit vector");
  if (std::abs(p.xi.norm() - 1.0) > tol) throw Error(ErrorKind::InvalidUnitTangent, "xi is not a unit vector");
  if (std::abs(p.v.dot(p.xi)) > tol) throw Error(ErrorKind::InvalidUnitTangent, "v and xi are not orthogonal");
}

IsotropicPlane IsotropicPlane::make(const Vec6& x, const Vec6& y, double tol) {
  const double nx = x.norm(), ny = y.norm();
  if (!(nx > 0.0) || !(ny > 0.0) || !x.allFinite() || !y.allFinite())
    throw Error(ErrorKind::InvalidPlane, "basis vectors must be nonzero and finite");
  const Vec6 ux = x / nx, uy = y / ny;
  if (std::abs(inner(ux, ux)) > tol || std::abs(inner(uy, uy)) > tol || std::abs(inner(ux, uy)) > tol)
    throw Error(ErrorKind::InvalidPlane, "basis is not isotropic");
  const double c = ux.dot(uy);
  if (1.0 - c * c <= 1e-12) throw Error(ErrorKind::InvalidPlane, "basis vectors are dependent");
  return IsotropicPlane{x, y};
}

IsotropicPlane lambda0() { return IsotropicPlane{Vec6::Unit(0), Vec6::Unit(1)}; }

const Vec6& vec_n0() {
  static const Vec6 n = make_vec(1, 0, 0, 0, 0, 1) / kSqrt2;
  return n;
}

const Vec6& vec_n1() {
  static const Vec6 n = make_vec(0, 1, 0, 0, 1, 0) / kSqrt2;
  return n;
}

Vec6 embed_vector(const Vec4& w) { return mat_J() * w; }
Vec4 project_vector(const Vec6& z) { return mat_Jinv() * z; }

Vec6 a0_of(const Vec4& v) { return (vec_n0() + embed_vector(v)) / kSqrt2; }
Vec6 a1_of(const Vec4& xi) { return (vec_n1() + embed_vector(xi)) / kSqrt2; }

Vec6Jet embed_vector(const Vec4Jet& w) { return mat_J() * w; }

Vec6Jet a0_of(const Vec4Jet& v) {
  Vec6Jet r = mat_J() * v;
  r.c[0] += vec_n0();
  return (1.0 / kSqrt2) * r;
}

Vec6Jet a1_of(const Vec4Jet& xi) {
  Vec6Jet r = mat_J() * xi;
  r.c[0] += vec_n1();
  return (1.0 / kSqrt2) * r;
}

IsotropicPlane embed_t1s3(const UnitTangentPoint& p) {
  validate_unit_tangent(p);
  return IsotropicPlane{a0_of(p.v), a1_of(p.xi)};
}

void plane_jet_to_t1s3(const Vec6Jet& x, const Vec6Jet& y, Vec4Jet& v, Vec4Jet& xi) {
  const Eigen::Matrix<double, 2, 6>& alpha = mat_alpha();
  const MatJet<2, 1> ax = alpha * x;
  const MatJet<2, 1> ay = alpha * y;
  Mat2Jet M(std::min(x.order, y.order));
  M.set_entry(0, 0, ax.entry(0, 0));
  M.set_entry(1, 0, ax.entry(1, 0));
  M.set_entry(0, 1, ay.entry(0, 0));
  M.set_entry(1, 1, ay.entry(1, 0));
  const Mat2Jet Minv = inverse2(M);
  // z0 = A0(v), z1 = A1(xi) are the plane vectors with alpha-values e_i / sqrt2.
  Vec6Jet z0 = Minv.entry(0, 0) * x + Minv.entry(1, 0) * y;
  Vec6Jet z1 = Minv.entry(0, 1) * x + Minv.entry(1, 1) * y;
  z0.c[0] -= vec_n0();
  z1.c[0] -= vec_n1();
  v = mat_Jinv() * z0;
  xi = mat_Jinv() * z1;
}

TangentPointVelocity plane_velocity_to_t1s3(const Vec6& x, const Vec6& y, const Vec6& dx,
                                            const Vec6& dy) {
  Vec6Jet xj(1), yj(1);
  xj.c[0] = x;
  xj.c[1] = dx;
  yj.c[0] = y;
  yj.c[1] = dy;
  Vec4Jet v, xi;
  plane_jet_to_t1s3(xj, yj, v, xi);
  TangentPointVelocity out;
  out.point.v = v.c[0];
  out.point.xi = xi.c[0];
  out.dv = v.c[1];
  out.dxi = xi.c[1];
  return out;
}

UnitTangentPoint plane_to_t1s3(const IsotropicPlane& P) {
  return plane_velocity_to_t1s3(P.x, P.y, Vec6::Zero(), Vec6::Zero()).point;
}

bool planes_equal(const IsotropicPlane& P, const IsotropicPlane& Q, double tol) {
  auto orthonormal = [](const IsotropicPlane& R) {
    Eigen::Matrix<double, 6, 2> B;
    B.col(0) = R.x;
    B.col(1) = R.y;
    Eigen::HouseholderQR<Eigen::Matrix<double, 6, 2>> qr(B);
    return Eigen::Matrix<double, 6, 2>(qr.householderQ() * Eigen::Matrix<double, 6, 2>::Identity());
  };
  Eigen::Matrix<double, 6, 4> S;
  S.leftCols<2>() = orthonormal(P);
  S.rightCols<2>() = orthonormal(Q);
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 4>> svd(S);
  const auto& sv = svd.singularValues();
  return sv[2] < tol * sv[0];
}

IsotropicPlane act(const GroupElement& A, const IsotropicPlane& P) {
  return IsotropicPlane{A.matrix() * P.x, A.matrix() * P.y};
}

double contact_pairing(const Vec6& /*A0*/, const Vec6& dA0, const Vec6& A1) { return -inner(dA0, A1); }

}  // namespace liesphere
