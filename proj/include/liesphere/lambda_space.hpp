#pragma once

// Points of Lambda: null 2-planes of R^{4,2}, identified with the unit tangent
// bundle of S^3 through pairs (v, xi) of orthonormal vectors of R^4.

#include "liesphere/core_algebra.hpp"
#include "liesphere/jet.hpp"

namespace liesphere {

struct UnitTangentPoint {
  Vec4 v = Vec4::Zero();
  Vec4 xi = Vec4::Zero();
};

// Throws InvalidUnitTangent unless |v| = |xi| = 1 and v.xi = 0 within tol.
void validate_unit_tangent(const UnitTangentPoint& p, double tol = 1e-10);

// A spanning pair of a null 2-plane. The pair is a representative; use
// planes_equal to compare points of Lambda.
struct IsotropicPlane {
  Vec6 x = Vec6::Zero();
  Vec6 y = Vec6::Zero();

  // Throws InvalidPlane unless x, y are null, mutually orthogonal and independent.
  static IsotropicPlane make(const Vec6& x, const Vec6& y, double tol = 1e-10);
};

// The origin [e0, e1].
IsotropicPlane lambda0();

// Vectors used by the identification: n0 = (e0+e5)/sqrt2, n1 = (e1+e4)/sqrt2
// span a negative definite plane, and J maps R^4 isometrically onto its
// orthogonal complement.
const Vec6& vec_n0();
const Vec6& vec_n1();
Vec6 embed_vector(const Vec4& w);    // J w
Vec4 project_vector(const Vec6& z);  // inverse of J on the complement

Vec6 a0_of(const Vec4& v);
Vec6 a1_of(const Vec4& xi);

IsotropicPlane embed_t1s3(const UnitTangentPoint& p);
// Recovers (v, xi) from any basis of the plane.
UnitTangentPoint plane_to_t1s3(const IsotropicPlane& P);

// Plane given by a basis (x, y) with derivatives (dx, dy); returns the point
// together with (v', xi').
struct TangentPointVelocity {
  UnitTangentPoint point;
  Vec4 dv = Vec4::Zero();
  Vec4 dxi = Vec4::Zero();
};
TangentPointVelocity plane_velocity_to_t1s3(const Vec6& x, const Vec6& y, const Vec6& dx,
                                            const Vec6& dy);

// Taylor jets of a plane basis converted to jets of (v, xi).
void plane_jet_to_t1s3(const Vec6Jet& x, const Vec6Jet& y, Vec4Jet& v, Vec4Jet& xi);
// Jets of A0(v), A1(xi).
Vec6Jet embed_vector(const Vec4Jet& w);
Vec6Jet a0_of(const Vec4Jet& v);
Vec6Jet a1_of(const Vec4Jet& xi);

bool planes_equal(const IsotropicPlane& P, const IsotropicPlane& Q, double tol = 1e-8);

IsotropicPlane act(const GroupElement& A, const IsotropicPlane& P);

// -<dA0, A1>: the contact form evaluated on a velocity.
double contact_pairing(const Vec6& A0, const Vec6& dA0, const Vec6& A1);

}  // namespace liesphere
