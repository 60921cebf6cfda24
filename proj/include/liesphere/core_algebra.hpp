#pragma once

// The form <x,y> = -(x0 y5 + x5 y0) - (x1 y4 + x4 y1) + x2 y2 + x3 y3 = x^T h y
// of signature (4,2), its group G and Lie algebra g in 2x2 block form.
// Matrices act on column vectors; entry (i,j) is row i, column j, so the
// Maurer-Cartan component w^i_j sits at (i,j).

#include <Eigen/Dense>
#include <array>
#include <random>

#include "liesphere/error.hpp"

namespace liesphere {

using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct Tolerances {
  double group = 1e-9;
  double algebra = 1e-10;
  double matrix_equal = 1e-12;
};

// Process-wide defaults. Set once at startup (the CLI does so from its
// configuration) before any concurrent use.
const Tolerances& default_tolerances();
void set_default_tolerances(const Tolerances& tol);

const Mat2& mat_L();
const Mat2& mat_I11();
const Mat6& mat_h();
Vec6 basis_vector(int i);

double inner(const Vec6& x, const Vec6& y);

// Largest absolute entry of A^T h A - h.
double group_residual(const Mat6& A);
// group_residual / max(1, max|A_ij|^2): rounding alone leaves eps |A|^2.
double relative_group_residual(const Mat6& A);
// Largest absolute entry of X^T h + h X.
double algebra_residual(const Mat6& X);

struct AlgebraBlocks {
  Mat2 X1 = Mat2::Zero();
  Mat2 X2 = Mat2::Zero();
  Mat2 X4 = Mat2::Zero();
  Mat2 X5 = Mat2::Zero();
  double s = 0.0;
  double t = 0.0;
};

class AlgebraElement {
 public:
  AlgebraElement() : X_(Mat6::Zero()) {}
  // Throws NotInAlgebra when the residual exceeds the algebra tolerance.
  explicit AlgebraElement(const Mat6& X);

  const Mat6& matrix() const { return X_; }
  AlgebraBlocks blocks() const;

 private:
  Mat6 X_;
};

AlgebraElement algebra_from_blocks(const AlgebraBlocks& b);
AlgebraElement algebra_from_blocks(const Mat2& X1, const Mat2& X2, const Mat2& X4, const Mat2& X5,
                                   double s, double t);
Mat6 assemble_blocks(const AlgebraBlocks& b);

class GroupElement {
 public:
  GroupElement() : A_(Mat6::Identity()) {}
  // Throws NotInGroup unless A^T h A = h and det A > 0 within tolerance.
  explicit GroupElement(const Mat6& A);

  static GroupElement identity() { return GroupElement(); }
  static GroupElement unchecked(const Mat6& A);

  const Mat6& matrix() const { return A_; }
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const { return unchecked(A_ * o.A_); }

 private:
  Mat6 A_;
};

// Inverse of an h-orthogonal matrix: h A^T h.
Mat6 group_inverse(const Mat6& A);

struct GaugeElement {
  Mat2 C = Mat2::Identity();
  Mat2 B = Mat2::Identity();
  Mat2 Z = Mat2::Zero();
  Mat2 b = Mat2::Zero();
};

// Throws GaugeConstraintViolation if det C <= 0, B is not a rotation or
// b C^-1 L + L C^-T b^T != Z^T Z.
void validate_gauge(const GaugeElement& g, double tol = 1e-10);
GroupElement gauge_assemble(const GaugeElement& g);
GroupElement gauge_inverse(const GaugeElement& g);

Mat6 expm(const Mat6& X);
GroupElement mat_exp(const AlgebraElement& X, double s);
GroupElement retract_to_group(const Mat6& M);

Mat2 rotation(double angle);

// Fixed basis of g: unit entries of X1 (4), X2 (4), X4 (4), the generator
// of X5, then s and t.
const std::array<AlgebraElement, 15>& algebra_basis();

AlgebraElement random_algebra_element(std::mt19937_64& rng, double scale = 1.0);
GroupElement random_group_element(std::mt19937_64& rng, double scale = 0.5);
GaugeElement random_gauge_element(std::mt19937_64& rng);

}  // namespace liesphere
