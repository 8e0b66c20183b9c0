#pragma once

#include <Eigen/Dense>
#include <array>

#include "symproj/errors.hpp"

namespace symproj {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Symmetric second-order tensor on a 3-dimensional space, stored as the
// Mandel 6-vector (A11, sqrt(2) A12, A22, sqrt(2) A13, sqrt(2) A23, A33).
// With this scaling the Euclidean inner product of two Mandel vectors equals
// the tensor inner product A . B = tr(A^T B).
class SymTensor {
 public:
  SymTensor() : v_(Vec6::Zero()) {}

  static SymTensor from_mandel(const Vec6& v) { return SymTensor(v); }

  static SymTensor from_components(double a11, double a12, double a22,
                                   double a13, double a23, double a33);

  // Expects a symmetric matrix; off-diagonal entries are averaged.
  static SymTensor from_matrix(const Mat3& m);

  static SymTensor identity();

  const Vec6& mandel() const { return v_; }

  Mat3 matrix() const;

  // Component access by (i, j), 0-based.
  double operator()(int i, int j) const;

  double trace() const { return v_[0] + v_[2] + v_[5]; }
  double dot(const SymTensor& o) const { return v_.dot(o.v_); }
  double norm() const { return v_.norm(); }

  SymTensor operator+(const SymTensor& o) const { return SymTensor(v_ + o.v_); }
  SymTensor operator-(const SymTensor& o) const { return SymTensor(v_ - o.v_); }
  SymTensor operator-() const { return SymTensor(-v_); }
  SymTensor operator*(double s) const { return SymTensor(v_ * s); }
  SymTensor& operator+=(const SymTensor& o) {
    v_ += o.v_;
    return *this;
  }
  bool operator==(const SymTensor& o) const { return v_ == o.v_; }

  bool all_finite() const { return v_.allFinite(); }

 private:
  explicit SymTensor(const Vec6& v) : v_(v) {}
  Vec6 v_;
};

inline SymTensor operator*(double s, const SymTensor& a) { return a * s; }

// Eigendecomposition of a symmetric tensor: ascending eigenvalues and a
// right-handed orthonormal eigenvector triple (columns of q).
struct EigenSystem {
  Vec3 d;
  Mat3 q;

  SymTensor reconstruct() const;
};

// Fourth-order tensor from Sym to Sym, held as its 6x6 matrix of Mandel
// components. The symmetry flag records whether the matrix is symmetric
// (self-adjoint map), which is detected at construction.
class FourthOrder {
 public:
  FourthOrder() : m_(Mat6::Zero()), symmetric_(true) {}

  static FourthOrder from_matrix(const Mat6& m);
  static FourthOrder identity();

  const Mat6& matrix() const { return m_; }
  bool symmetric() const { return symmetric_; }

  SymTensor apply(const SymTensor& a) const {
    return SymTensor::from_mandel(m_ * a.mandel());
  }
  SymTensor operator()(const SymTensor& a) const { return apply(a); }

  // Component C_ijkl recovered from the Mandel entry (0-based indices).
  double component(int i, int j, int k, int l) const;

  FourthOrder compose(const FourthOrder& o) const {
    return from_matrix(m_ * o.m_);
  }
  FourthOrder transpose() const { return from_matrix(m_.transpose()); }
  FourthOrder operator+(const FourthOrder& o) const {
    return from_matrix(m_ + o.m_);
  }
  FourthOrder operator*(double s) const { return from_matrix(m_ * s); }

 private:
  FourthOrder(const Mat6& m, bool sym) : m_(m), symmetric_(sym) {}
  Mat6 m_;
  bool symmetric_;
};

// to_mandel / from_mandel with the paper's ordering and sqrt(2) scaling.
Vec6 to_mandel(const SymTensor& a);
SymTensor from_mandel(const Vec6& v);

// Ascending eigendecomposition with a deterministic sign convention: the
// largest-magnitude component of q1 and q2 is made positive and q3 = q1 x q2.
EigenSystem eig_sym3(const SymTensor& a);

// A (x) B, the rank-one fourth-order tensor H -> (B . H) A.
FourthOrder otimes_rep(const SymTensor& a, const SymTensor& b);

// A (.) B, H -> (B H A^T + A H^T B^T) / 2, restricted to Sym. The overload
// with full 3x3 arguments covers nonsymmetric factors such as P^{-T} S.
FourthOrder odot_rep(const SymTensor& a, const SymTensor& b);
FourthOrder odot_rep(const Mat3& a, const Mat3& b);

// Apply A (.) B to an arbitrary (possibly nonsymmetric) 3x3 argument.
SymTensor odot_apply(const Mat3& a, const Mat3& b, const Mat3& h);

// PSD square root; eigenvalues in [-tol_psd, 0) are clamped to zero with
// tol_psd = 1e-12 max(1, ||A||); below that throws NotPSD.
SymTensor sqrt_psd(const SymTensor& a);

// Nesterov-Todd scaling point W = X^{1/2} (X^{1/2} S X^{1/2})^{-1/2} X^{1/2},
// the geometric mean of X and S^{-1}; satisfies W S W = X.
SymTensor nt_scaling(const SymTensor& x, const SymTensor& s);

// 2-norm condition number of the 6x6 representation via singular values;
// returns +inf when the smallest singular value is zero.
double cond2(const FourthOrder& f);

namespace mandel {
// Index layout of the Mandel 6-vector: pairs (11, 12, 22, 13, 23, 33).
inline constexpr std::array<std::array<int, 2>, 6> kPairs = {
    {{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}}};
inline constexpr std::array<std::array<int, 3>, 3> kIndex = {
    {{0, 1, 3}, {1, 2, 4}, {3, 4, 5}}};
// Basis tensor for slot m as a 3x3 matrix (unit Frobenius norm).
Mat3 basis_matrix(int m);
}  // namespace mandel

}  // namespace symproj
