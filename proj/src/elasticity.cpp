#include "symproj/elasticity.hpp"

#include <cmath>

#include "symproj/errors.hpp"

namespace symproj {

std::vector<std::string> validate(const ElasticityModel& model) {
  std::vector<std::string> v;
  if (std::holds_alternative<IsotropicModel>(model)) {
    const auto& m = std::get<IsotropicModel>(model);
    if (!(m.E > 0.0)) v.push_back("E > 0");
    if (!(m.nu > -1.0)) v.push_back("nu > -1");
    if (!(m.nu < 0.5)) v.push_back("nu < 1/2");
  } else if (std::holds_alternative<TransverselyIsotropicModel>(model)) {
    const auto& m = std::get<TransverselyIsotropicModel>(model);
    const auto& a = m.alpha;
    if (!(a[3] > 0.0)) v.push_back("alpha4 > 0");
    if (!(a[4] > 0.0)) v.push_back("alpha5 > 0");
    if (!(a[0] + 2.0 * a[1] > 0.0)) v.push_back("alpha1 + 2 alpha2 > 0");
    if (!(a[0] * a[1] - a[2] * a[2] > 0.0))
      v.push_back("alpha1 alpha2 - alpha3^2 > 0");
    if (!(m.axis.norm() > 0.0)) v.push_back("axis != 0");
  }
  return v;
}

namespace {

// 3x3 coupling block on the normal components (Mandel slots 0, 2, 5) plus a
// common value on the shear diagonal.
Mat6 iso_matrix(double diag, double off, double shear) {
  Mat6 m = Mat6::Zero();
  const int n[3] = {0, 2, 5};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(n[i], n[j]) = (i == j) ? diag : off;
  m(1, 1) = shear;
  m(3, 3) = shear;
  m(4, 4) = shear;
  return m;
}

ModelTensors build_isotropic(double E, double nu) {
  const double den = (1.0 + nu) * (1.0 - 2.0 * nu);
  ModelTensors t;
  t.C = FourthOrder::from_matrix(
      iso_matrix(E * (1.0 - nu) / den, E * nu / den, E / (1.0 + nu)));
  t.Cinv = FourthOrder::from_matrix(
      iso_matrix(1.0 / E, -nu / E, (1.0 + nu) / E));
  return t;
}

// Transversely isotropic components in the frame with f3 = e3.
ModelTensors build_ti_frame(const std::array<double, 5>& a) {
  const double a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a5 = a[4];
  Mat6 c = Mat6::Zero();
  c(0, 0) = c(2, 2) = a2 + a5;
  c(5, 5) = a1;
  c(0, 2) = c(2, 0) = a2 - a5;
  c(0, 5) = c(5, 0) = a3;
  c(2, 5) = c(5, 2) = a3;
  c(1, 1) = 2.0 * a5;
  c(3, 3) = c(4, 4) = 2.0 * a4;

  const double det = 4.0 * a5 * (a1 * a2 - a3 * a3);
  Mat6 ci = Mat6::Zero();
  ci(0, 0) = ci(2, 2) = (a1 * (a2 + a5) - a3 * a3) / det;
  ci(5, 5) = 4.0 * a2 * a5 / det;
  ci(0, 2) = ci(2, 0) = (a3 * a3 - a1 * (a2 - a5)) / det;
  ci(0, 5) = ci(5, 0) = -2.0 * a3 * a5 / det;
  ci(2, 5) = ci(5, 2) = -2.0 * a3 * a5 / det;
  ci(1, 1) = 1.0 / (2.0 * a5);
  ci(3, 3) = ci(4, 4) = 1.0 / (2.0 * a4);

  return {FourthOrder::from_matrix(c), FourthOrder::from_matrix(ci)};
}

}  // namespace

Mat3 frame_from_axis(const Vec3& axis) {
  const Vec3 f3 = axis.normalized();
  // Seed with the Cartesian axis least aligned with f3.
  int imin = 0;
  f3.cwiseAbs().minCoeff(&imin);
  Vec3 seed = Vec3::Zero();
  seed[imin] = 1.0;
  const Vec3 f1 = (seed - seed.dot(f3) * f3).normalized();
  const Vec3 f2 = f3.cross(f1);
  Mat3 q;
  q.col(0) = f1;
  q.col(1) = f2;
  q.col(2) = f3;
  return q;
}

ModelTensors build(const ElasticityModel& model) {
  const auto violations = validate(model);
  if (!violations.empty()) {
    std::string msg = "invalid elasticity parameters:";
    for (const auto& v : violations) msg += " {" + v + "}";
    throw InvalidParameters(msg);
  }
  if (std::holds_alternative<IdentityModel>(model)) {
    return {FourthOrder::identity(), FourthOrder::identity()};
  }
  if (std::holds_alternative<IsotropicModel>(model)) {
    const auto& m = std::get<IsotropicModel>(model);
    return build_isotropic(m.E, m.nu);
  }
  const auto& m = std::get<TransverselyIsotropicModel>(model);
  ModelTensors t = build_ti_frame(m.alpha);
  const Mat3 q = frame_from_axis(m.axis);
  if ((q - Mat3::Identity()).cwiseAbs().maxCoeff() > 0.0) {
    // Congruence rotation of the Mandel representation; T is orthogonal.
    const Mat6 T = odot_rep(q, q).matrix();
    t.C = FourthOrder::from_matrix(T * t.C.matrix() * T.transpose());
    t.Cinv = FourthOrder::from_matrix(T * t.Cinv.matrix() * T.transpose());
  }
  return t;
}

LameModuli lame_from(double E, double nu) {
  return {E / (2.0 * (1.0 + nu)), nu * E / ((1.0 + nu) * (1.0 - 2.0 * nu))};
}

ElasticityModel ti_isotropic_reduction(double alpha1, double alpha2) {
  if (!(alpha1 > alpha2 && alpha2 > 0.0))
    throw InvalidParameters("ti_isotropic_reduction requires alpha1 > alpha2 > 0");
  TransverselyIsotropicModel m;
  m.alpha = {alpha1, alpha2, 2.0 * alpha2 - alpha1, alpha1 - alpha2,
             alpha1 - alpha2};
  const auto violations = validate(ElasticityModel(m));
  if (!violations.empty())
    throw InvalidParameters("ti_isotropic_reduction: reduced model invalid");
  return m;
}

}  // namespace symproj
