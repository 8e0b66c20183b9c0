#include "symproj/analytic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "symproj/errors.hpp"

namespace symproj {

std::string to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::Zero:
      return "zero";
    case CaseLabel::Rank1:
      return "rank1";
    case CaseLabel::Rank2:
      return "rank2";
    case CaseLabel::Full:
      return "full";
  }
  return "?";
}

Projection project_isotropic(const SymTensor& d, double E, double nu) {
  const auto violations = validate(IsotropicModel{E, nu});
  if (!violations.empty())
    throw InvalidParameters("project_isotropic: invalid (E, nu)");

  const EigenSystem es = eig_sym3(d);
  const double d1 = es.d[0], d2 = es.d[1], d3 = es.d[2];
  const Mat3 o11 = es.q.col(0) * es.q.col(0).transpose();
  const Mat3 o22 = es.q.col(1) * es.q.col(1).transpose();

  if (d1 + nu / (1.0 - 2.0 * nu) * (d1 + d2 + d3) >= 0.0)
    return {SymTensor(), CaseLabel::Zero};
  if ((1.0 - nu) * d1 + nu * (d2 + d3) <= 0.0 && d2 + nu * d3 >= 0.0) {
    const double y1 = d1 + nu / (1.0 - nu) * (d2 + d3);
    return {SymTensor::from_matrix(y1 * o11), CaseLabel::Rank1};
  }
  if (d2 + nu * d3 <= 0.0 && d3 >= 0.0) {
    return {SymTensor::from_matrix((d1 + nu * d3) * o11 + (d2 + nu * d3) * o22),
            CaseLabel::Rank2};
  }
  return {d, CaseLabel::Full};
}

SymTensor project_frobenius(const SymTensor& d) {
  const EigenSystem es = eig_sym3(d);
  Vec3 neg;
  for (int i = 0; i < 3; ++i) neg[i] = std::min(es.d[i], 0.0);
  return SymTensor::from_matrix(es.q * neg.asDiagonal() * es.q.transpose());
}

namespace {

// In-plane 2x2 eigendecomposition, ascending.
void eig_sym2(double a, double b, double c, double* d1, double* d2,
              Eigen::Vector2d* v1, Eigen::Vector2d* v2) {
  const double tr = a + c;
  const double diff = a - c;
  const double disc = std::sqrt(diff * diff + 4.0 * b * b);
  *d1 = 0.5 * (tr - disc);
  *d2 = 0.5 * (tr + disc);
  Eigen::Vector2d v;
  if (std::abs(b) > 0.0) {
    v << *d1 - c, b;
  } else if (a <= c) {
    v << 1.0, 0.0;
  } else {
    v << 0.0, 1.0;
  }
  v.normalize();
  *v1 = v;
  *v2 = Eigen::Vector2d(-v[1], v[0]);
}

}  // namespace

Projection project_ti_coaxial(const SymTensor& d,
                              const TransverselyIsotropicModel& model) {
  const auto violations = validate(ElasticityModel(model));
  if (!violations.empty())
    throw InvalidParameters("project_ti_coaxial: invalid alpha");

  const Mat3 frame = frame_from_axis(model.axis);
  const Vec3 f3 = frame.col(2);
  const Mat3 dm = d.matrix();

  const double dn = d.norm();
  const Vec3 df3 = dm * f3;
  const double axial = f3.dot(df3);
  if ((df3 - axial * f3).norm() > 1e-10 * dn)
    throw NotCoaxial("project_ti_coaxial: f3 is not an eigenvector of D");

  // In-plane eigenpair in the (f1, f2) plane.
  const Vec3 u = frame.col(0);
  const Vec3 v = frame.col(1);
  double p1, p2;
  Eigen::Vector2d e1, e2;
  eig_sym2(u.dot(dm * u), u.dot(dm * v), v.dot(dm * v), &p1, &p2, &e1, &e2);
  const Vec3 q1 = e1[0] * u + e1[1] * v;
  const Vec3 q2 = e2[0] * u + e2[1] * v;

  const Vec3 delta(p1, p2, axial);
  Mat3 basis[3] = {q1 * q1.transpose(), q2 * q2.transpose(),
                   f3 * f3.transpose()};

  // C restricted to the coaxial subspace in the orthonormal basis
  // (q1xq1, q2xq2, f3xf3).
  const double a1 = model.alpha[0], a2 = model.alpha[1], a3 = model.alpha[2],
               a5 = model.alpha[4];
  Mat3 B;
  B << a2 + a5, a2 - a5, a3, a2 - a5, a2 + a5, a3, a3, a3, a1;
  const Vec3 s0 = B * delta;

  const double tol =
      1e-10 * std::max(1.0, B.cwiseAbs().maxCoeff() * std::max(1.0, dn));

  // Active-set patterns ordered by rank; indices of the constrained slots.
  static const std::vector<std::vector<int>> patterns = {
      {}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};

  Vec3 best_y = Vec3::Zero();
  double best_viol = std::numeric_limits<double>::infinity();
  std::size_t best_size = 0;
  for (const auto& p : patterns) {
    const int np = static_cast<int>(p.size());
    Vec3 y = Vec3::Zero();
    if (np > 0) {
      Eigen::MatrixXd bpp(np, np);
      Eigen::VectorXd rhs(np);
      for (int i = 0; i < np; ++i) {
        rhs[i] = s0[p[i]];
        for (int j = 0; j < np; ++j) bpp(i, j) = B(p[i], p[j]);
      }
      const Eigen::VectorXd yp = bpp.ldlt().solve(rhs);
      for (int i = 0; i < np; ++i) y[p[i]] = yp[i];
    }
    const Vec3 s = s0 - B * y;
    double viol = 0.0;
    for (int i = 0; i < 3; ++i) {
      viol = std::max(viol, y[i]);
      viol = std::max(viol, -s[i]);
    }
    if (viol <= tol) {
      best_y = y;
      best_size = p.size();
      best_viol = viol;
      break;
    }
    if (viol < best_viol) {
      best_viol = viol;
      best_y = y;
      best_size = p.size();
    }
  }

  Mat3 ym = Mat3::Zero();
  for (int i = 0; i < 3; ++i) ym += best_y[i] * basis[i];
  static const CaseLabel labels[4] = {CaseLabel::Zero, CaseLabel::Rank1,
                                      CaseLabel::Rank2, CaseLabel::Full};
  return {SymTensor::from_matrix(ym), labels[best_size]};
}

KktResiduals kkt_residuals(const SymTensor& d, const FourthOrder& c,
                           const SymTensor& y) {
  const SymTensor s = c.apply(d - y);
  Eigen::SelfAdjointEigenSolver<Mat3> ey(y.matrix());
  Eigen::SelfAdjointEigenSolver<Mat3> es(s.matrix());
  KktResiduals r;
  r.lambda_max_y = ey.eigenvalues()(2);
  r.lambda_min_s = es.eigenvalues()(0);
  r.complementarity = std::abs(y.dot(s));
  r.commutation = (y.matrix() * s.matrix()).norm();
  return r;
}

}  // namespace symproj
