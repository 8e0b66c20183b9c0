#include "symproj/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace symproj {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

SymTensor SymTensor::from_components(double a11, double a12, double a22,
                                     double a13, double a23, double a33) {
  Vec6 v;
  v << a11, kSqrt2 * a12, a22, kSqrt2 * a13, kSqrt2 * a23, a33;
  return SymTensor(v);
}

SymTensor SymTensor::from_matrix(const Mat3& m) {
  return from_components(m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1),
                         0.5 * (m(0, 2) + m(2, 0)), 0.5 * (m(1, 2) + m(2, 1)),
                         m(2, 2));
}

SymTensor SymTensor::identity() {
  return from_components(1.0, 0.0, 1.0, 0.0, 0.0, 1.0);
}

Mat3 SymTensor::matrix() const {
  Mat3 m;
  const double a12 = v_[1] * kInvSqrt2;
  const double a13 = v_[3] * kInvSqrt2;
  const double a23 = v_[4] * kInvSqrt2;
  m << v_[0], a12, a13, a12, v_[2], a23, a13, a23, v_[5];
  return m;
}

double SymTensor::operator()(int i, int j) const {
  const int m = mandel::kIndex[i][j];
  return (i == j) ? v_[m] : v_[m] * kInvSqrt2;
}

Vec6 to_mandel(const SymTensor& a) { return a.mandel(); }

SymTensor from_mandel(const Vec6& v) { return SymTensor::from_mandel(v); }

SymTensor EigenSystem::reconstruct() const {
  return SymTensor::from_matrix(q * d.asDiagonal() * q.transpose());
}

FourthOrder FourthOrder::from_matrix(const Mat6& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * scale;
  const bool sym = (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
  return FourthOrder(m, sym);
}

FourthOrder FourthOrder::identity() {
  return FourthOrder(Mat6::Identity(), true);
}

double FourthOrder::component(int i, int j, int k, int l) const {
  const int p = mandel::kIndex[i][j];
  const int q = mandel::kIndex[k][l];
  const double si = (i == j) ? 1.0 : kSqrt2;
  const double sj = (k == l) ? 1.0 : kSqrt2;
  return m_(p, q) / (si * sj);
}

namespace mandel {
Mat3 basis_matrix(int m) {
  const int i = kPairs[m][0];
  const int j = kPairs[m][1];
  Mat3 b = Mat3::Zero();
  if (i == j) {
    b(i, i) = 1.0;
  } else {
    b(i, j) = kInvSqrt2;
    b(j, i) = kInvSqrt2;
  }
  return b;
}
}  // namespace mandel

EigenSystem eig_sym3(const SymTensor& a) {
  if (!a.all_finite()) throw InvalidInput("eig_sym3: non-finite input");
  Eigen::SelfAdjointEigenSolver<Mat3> es(a.matrix());
  EigenSystem out;
  out.d = es.eigenvalues();
  out.q = es.eigenvectors();
  for (int c = 0; c < 2; ++c) {
    int imax = 0;
    out.q.col(c).cwiseAbs().maxCoeff(&imax);
    if (out.q(imax, c) < 0.0) out.q.col(c) = -out.q.col(c);
  }
  out.q.col(2) = out.q.col(0).cross(out.q.col(1));
  return out;
}

FourthOrder otimes_rep(const SymTensor& a, const SymTensor& b) {
  return FourthOrder::from_matrix(a.mandel() * b.mandel().transpose());
}

SymTensor odot_apply(const Mat3& a, const Mat3& b, const Mat3& h) {
  const Mat3 r = 0.5 * (b * h * a.transpose() + a * h.transpose() * b.transpose());
  return SymTensor::from_matrix(r);
}

FourthOrder odot_rep(const Mat3& a, const Mat3& b) {
  Mat6 m;
  for (int c = 0; c < 6; ++c) {
    m.col(c) = odot_apply(a, b, mandel::basis_matrix(c)).mandel();
  }
  return FourthOrder::from_matrix(m);
}

FourthOrder odot_rep(const SymTensor& a, const SymTensor& b) {
  return odot_rep(a.matrix(), b.matrix());
}

SymTensor sqrt_psd(const SymTensor& a) {
  const double tol = 1e-12 * std::max(1.0, a.norm());
  EigenSystem es = eig_sym3(a);
  Vec3 r;
  for (int i = 0; i < 3; ++i) {
    if (es.d[i] < -tol) throw NotPSD("sqrt_psd: negative eigenvalue");
    r[i] = std::sqrt(std::max(es.d[i], 0.0));
  }
  return SymTensor::from_matrix(es.q * r.asDiagonal() * es.q.transpose());
}

namespace {
// m^p for symmetric positive definite input via eigendecomposition.
Mat3 sym_power(const Mat3& m, double p) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  Vec3 d = es.eigenvalues();
  for (int i = 0; i < 3; ++i) d[i] = std::pow(d[i], p);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

bool is_pd(const Mat3& m) {
  Eigen::LLT<Mat3> llt(m);
  return llt.info() == Eigen::Success;
}
}  // namespace

SymTensor nt_scaling(const SymTensor& x, const SymTensor& s) {
  const Mat3 xm = x.matrix();
  const Mat3 sm = s.matrix();
  if (!is_pd(xm)) throw NotPD("nt_scaling: X not positive definite");
  if (!is_pd(sm)) throw NotPD("nt_scaling: S not positive definite");
  const Mat3 xh = sym_power(xm, 0.5);
  const Mat3 mid = sym_power(xh * sm * xh, -0.5);
  Mat3 w = xh * mid * xh;
  return SymTensor::from_matrix(w);
}

double cond2(const FourthOrder& f) {
  Eigen::JacobiSVD<Mat6> svd(f.matrix());
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(5);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace symproj
