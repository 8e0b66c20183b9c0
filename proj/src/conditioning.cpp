#include "symproj/conditioning.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "symproj/errors.hpp"

namespace symproj {

namespace {
constexpr double kPi = 3.14159265358979323846;

SymTensor recompose(const Vec3& d, const Mat3& q) {
  return SymTensor::from_matrix(q * d.asDiagonal() * q.transpose());
}
}  // namespace

SymTensor CentralPathPoint::x() const { return recompose(lambda, q); }
SymTensor CentralPathPoint::s() const { return recompose(xi, q); }

namespace {

void check_point(const CentralPathPoint& p) {
  for (int i = 0; i < 3; ++i) {
    if (!(p.lambda[i] > 0.0) || !(p.xi[i] > 0.0))
      throw InvalidInput("central-path point must have positive eigenvalues");
    const double prod = p.lambda[i] * p.xi[i];
    if (std::abs(prod - p.sigma_mu) > 1e-12 * std::max(1.0, p.sigma_mu))
      throw InvalidInput("eigenvalue products do not equal sigma_mu");
  }
}

// In each case the limit-rank pattern dictates which factor of each pair
// (lambda_i, xi_i) is the O(1) datum; the other is sigma_mu over it.
void check_case(RankCase rc, const CentralPathPoint& p) {
  bool ok = true;
  switch (rc) {
    case RankCase::Case1:
      ok = p.xi[0] >= p.lambda[0] && p.xi[1] >= p.lambda[1] &&
           p.xi[2] >= p.lambda[2];
      break;
    case RankCase::Case2:
      ok = p.xi[0] >= p.lambda[0] && p.xi[1] >= p.lambda[1] &&
           p.lambda[2] >= p.xi[2];
      break;
    case RankCase::Case3:
      ok = p.xi[0] >= p.lambda[0] && p.lambda[1] >= p.xi[1] &&
           p.lambda[2] >= p.xi[2];
      break;
    case RankCase::Case4:
      ok = p.lambda[0] >= p.xi[0] && p.lambda[1] >= p.xi[1] &&
           p.lambda[2] >= p.xi[2];
      break;
  }
  if (!ok) throw InvalidInput("central-path point does not match rank case");
}

}  // namespace

std::array<double, 6> wodotw_eigs(RankCase rank_case,
                                  const CentralPathPoint& point) {
  check_point(point);
  check_case(rank_case, point);
  const double sm = point.sigma_mu;
  const Vec3& xi = point.xi;
  const Vec3& la = point.lambda;
  switch (rank_case) {
    case RankCase::Case1:
      return {sm / (xi[0] * xi[0]), sm / (xi[0] * xi[1]), sm / (xi[0] * xi[2]),
              sm / (xi[1] * xi[1]), sm / (xi[1] * xi[2]), sm / (xi[2] * xi[2])};
    case RankCase::Case2:
      return {sm / (xi[0] * xi[0]), sm / (xi[1] * xi[1]), sm / (xi[0] * xi[1]),
              la[2] * la[2] / sm,   la[2] / xi[0],        la[2] / xi[1]};
    case RankCase::Case3:
      return {sm / (xi[0] * xi[0]), la[1] * la[1] / sm, la[2] * la[2] / sm,
              la[1] / xi[0],        la[2] / xi[0],      la[1] * la[2] / sm};
    case RankCase::Case4:
      return {la[0] * la[0] / sm, la[0] * la[1] / sm, la[0] * la[2] / sm,
              la[1] * la[1] / sm, la[1] * la[2] / sm, la[2] * la[2] / sm};
  }
  throw InvalidInput("unknown rank case");
}

std::pair<double, double> kappa_bounds_snt(const CentralPathPoint& point,
                                           const FourthOrder& cinv) {
  check_point(point);
  // Eigenvalues of W (.) W are the products w_i w_j.
  Vec3 w;
  for (int i = 0; i < 3; ++i)
    w[i] = std::sqrt(point.lambda[i]) / std::sqrt(point.xi[i]);
  double wmax = 0.0, wmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      wmax = std::max(wmax, w[i] * w[j]);
      wmin = std::min(wmin, w[i] * w[j]);
    }
  Eigen::SelfAdjointEigenSolver<Mat6> es(cinv.matrix(),
                                         Eigen::EigenvaluesOnly);
  const double cmin = es.eigenvalues()(0);
  const double cmax = es.eigenvalues()(5);
  return {(wmax + cmin) / (wmin + cmax), (wmax + cmax) / (wmin + cmin)};
}

CubicCoeffs cubic_coeffs(const CentralPathPoint& point, double psi,
                         double omega) {
  const Vec3& la = point.lambda;
  const Vec3& xi = point.xi;
  CubicCoeffs cc;
  Mat3& g = cc.gamma;
  const double kd = 4.0 * psi * psi + 3.0 * omega * omega + 4.0 * omega * psi;
  for (int i = 0; i < 3; ++i)
    g(i, i) = xi[i] * xi[i] + kd * la[i] * la[i] +
              2.0 * (2.0 * psi + omega) * la[i] * xi[i];
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      g(i, j) = omega * ((la[i] * xi[j] + la[j] * xi[i]) +
                         (3.0 * omega + 4.0 * psi) * la[i] * la[j]);
      g(j, i) = g(i, j);
    }
  cc.a = -(g(0, 0) + g(1, 1) + g(2, 2));
  cc.b = g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1) + g(0, 0) * g(2, 2) -
         g(0, 2) * g(0, 2) + g(1, 1) * g(2, 2) - g(1, 2) * g(1, 2);
  cc.c = -g(0, 0) * g(1, 1) * g(2, 2) + g(0, 0) * g(1, 2) * g(1, 2) +
         g(1, 1) * g(0, 2) * g(0, 2) + g(2, 2) * g(0, 1) * g(0, 1) -
         2.0 * g(0, 1) * g(0, 2) * g(1, 2);
  return cc;
}

std::array<double, 3> solve_cubic_three_real(double a, double b, double c) {
  // Depressed form t^3 + p t + q with m = t - a/3.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = -4.0 * p * p * p - 27.0 * q * q;
  const double disc_scale = std::max(
      {4.0 * std::abs(p * p * p), 27.0 * q * q, 1e-300});
  if (p < 0.0 && disc > -1e-12 * disc_scale) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg);
    std::array<double, 3> roots;
    for (int k = 0; k < 3; ++k)
      roots[k] = r * std::cos((phi - 2.0 * kPi * k) / 3.0) + shift;
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  // Companion-matrix fallback for (near-)coincident roots.
  Mat3 comp = Mat3::Zero();
  comp(1, 0) = 1.0;
  comp(2, 1) = 1.0;
  comp(0, 2) = -c;
  comp(1, 2) = -b;
  comp(2, 2) = -a;
  Eigen::EigenSolver<Mat3> es(comp);
  std::array<double, 3> roots;
  for (int i = 0; i < 3; ++i) {
    const auto r = es.eigenvalues()(i);
    if (std::abs(r.imag()) > 1e-7 * std::max(1.0, std::abs(r.real())))
      throw InconsistentPoint("cubic has complex roots");
    roots[i] = r.real();
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::array<double, 6> l_eigs_isotropic(const CentralPathPoint& point,
                                       double psi, double omega) {
  check_point(point);
  const Vec3& la = point.lambda;
  const Vec3& xi = point.xi;
  std::array<double, 6> out;
  // Mixed eigentensors (q_a q_b^T + q_b q_a^T)/sqrt(2): the eigenvalue is
  // (xi_a + xi_b)/2 + psi (lambda_a + lambda_b), squared in L.
  int n = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const double m = 0.5 * (xi[a] + xi[b]) + psi * (la[a] + la[b]);
      out[n++] = m * m;
    }
  const CubicCoeffs cc = cubic_coeffs(point, psi, omega);
  const auto roots = solve_cubic_three_real(cc.a, cc.b, cc.c);
  const double tol = 1e-10 * std::max(1.0, std::abs(roots[2]));
  for (int i = 0; i < 3; ++i) {
    if (roots[i] < -tol)
      throw InconsistentPoint("cubic root not positive: point off the path");
    out[3 + i] = roots[i];
  }
  return out;
}

std::array<double, 6> m_aho_eigs_identity(const CentralPathPoint& point) {
  check_point(point);
  const Vec3& la = point.lambda;
  const Vec3& xi = point.xi;
  return {0.5 * (xi[0] + xi[1] + la[0] + la[1]),
          0.5 * (xi[0] + xi[2] + la[0] + la[2]),
          0.5 * (xi[1] + xi[2] + la[1] + la[2]),
          xi[0] + la[0],
          xi[1] + la[1],
          xi[2] + la[2]};
}

std::vector<std::tuple<int, double, double>> kappa_trace(
    const SolveReport& report) {
  std::vector<std::tuple<int, double, double>> out;
  out.reserve(report.trace.size());
  // Rows cut short by a factorization failure carry no kappa; skip them.
  for (const auto& row : report.trace) {
    if (!std::isnan(row.kappa)) out.emplace_back(row.k, row.mu, row.kappa);
  }
  if (out.empty()) throw MissingTrace("run without record_conditioning");
  return out;
}

RankCase classify_rank_case(const SymTensor& y_star) {
  const EigenSystem es = eig_sym3(y_star);
  const double thresh =
      1e-7 * std::max(1.0, es.d.cwiseAbs().maxCoeff());
  int rank_x = 0;
  for (int i = 0; i < 3; ++i)
    if (es.d[i] < -thresh) ++rank_x;  // X* = -Y*
  switch (rank_x) {
    case 0:
      return RankCase::Case1;
    case 1:
      return RankCase::Case2;
    case 2:
      return RankCase::Case3;
    default:
      return RankCase::Case4;
  }
}

double loglog_slope_tail(
    const std::vector<std::tuple<int, double, double>>& trace, int n) {
  const int total = static_cast<int>(trace.size());
  const int start = std::max(0, total - n);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int i = start; i < total; ++i) {
    const double x = std::log(1.0 / std::get<1>(trace[i]));
    const double y = std::log(std::get<2>(trace[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw InvalidInput("slope needs at least two trace rows");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace symproj
