#include "symproj/ipm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "symproj/errors.hpp"

namespace symproj {

Direction direction_from_string(const std::string& s) {
  if (s == "nt" || s == "NT") return Direction::NT;
  if (s == "aho" || s == "AHO") return Direction::AHO;
  throw InvalidInput("unknown direction: " + s);
}

std::string to_string(Direction d) {
  return d == Direction::NT ? "nt" : "aho";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIter:
      return "max_iter";
    case SolveStatus::FactorizationFailure:
      return "factorization_failure";
  }
  return "?";
}

namespace {

Mat3 sym_power3(const Mat3& m, double p) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  Vec3 d = es.eigenvalues();
  for (int i = 0; i < 3; ++i) d[i] = std::pow(d[i], p);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

// Per-iteration factorizations shared by the predictor and corrector.
struct NewtonFactors {
  Direction dir;
  Mat6 c;
  Mat6 cinv;
  Eigen::LLT<Mat6> snt_llt;        // NT
  Eigen::PartialPivLU<Mat6> m_lu;  // AHO
  Mat6 f;                          // AHO
  Mat6 system;                     // S_NT or M_AHO, kept for cond2

  std::pair<SymTensor, SymTensor> solve(const SymTensor& rd,
                                        const SymTensor& rc) const {
    if (dir == Direction::NT) {
      const Vec6 rhs = rc.mandel() + cinv * rd.mandel();
      const Vec6 ds = snt_llt.solve(rhs);
      const Vec6 dx = cinv * (ds - rd.mandel());
      return {SymTensor::from_mandel(dx), SymTensor::from_mandel(ds)};
    }
    const Vec6 rhs = rc.mandel() - f * rd.mandel();
    const Vec6 dx = m_lu.solve(rhs);
    const Vec6 ds = rd.mandel() + c * dx;
    return {SymTensor::from_mandel(dx), SymTensor::from_mandel(ds)};
  }
};

NewtonFactors factorize(const DirectionOps& ops, const FourthOrder& c,
                        const FourthOrder& cinv) {
  NewtonFactors nf;
  nf.dir = ops.dir;
  nf.c = c.matrix();
  nf.cinv = cinv.matrix();
  if (ops.dir == Direction::NT) {
    nf.system = ops.F.matrix() + nf.cinv;
    nf.snt_llt.compute(nf.system);
    if (nf.snt_llt.info() != Eigen::Success)
      throw NotPD("Cholesky factorization of S_NT failed");
  } else {
    nf.f = ops.F.matrix();
    nf.system = ops.E.matrix() + nf.f * nf.c;
    nf.m_lu.compute(nf.system);
    if (nf.m_lu.rcond() < std::numeric_limits<double>::epsilon())
      throw SingularSystem("M_AHO singular to working precision");
  }
  return nf;
}

}  // namespace

DirectionOps build_directions(const SymTensor& x, const SymTensor& s,
                              Direction dir) {
  DirectionOps ops;
  ops.dir = dir;
  const double mu = x.dot(s) / 3.0;
  if (dir == Direction::AHO) {
    ops.w = SymTensor::identity();
    ops.E = odot_rep(Mat3::Identity(), s.matrix());
    ops.F = odot_rep(x.matrix(), Mat3::Identity());
    ops.rc_base = mu * SymTensor::identity() -
                  odot_apply(Mat3::Identity(), Mat3::Identity(),
                             x.matrix() * s.matrix());
  } else {
    ops.w = nt_scaling(x, s);
    ops.p = sym_power3(ops.w.matrix(), -0.5);
    ops.pinv_t = sym_power3(ops.w.matrix(), 0.5);
    ops.E = FourthOrder::identity();
    ops.F = odot_rep(ops.w, ops.w);
    ops.rc_base =
        SymTensor::from_matrix(mu * s.matrix().inverse()) - x;
  }
  return ops;
}

namespace {

// Complementarity right-hand side of the corrector (predictor: sigma = 0 and
// no second-order term). For NT the Mehrotra term is formed in the W-scaled
// space where X and S map to the same tensor V.
SymTensor corrector_rc(const DirectionOps& ops, const SymTensor& x,
                       const SymTensor& s, double sigma_mu,
                       const SymTensor& dx, const SymTensor& ds) {
  if (ops.dir == Direction::AHO) {
    return sigma_mu * SymTensor::identity() -
           odot_apply(Mat3::Identity(), Mat3::Identity(),
                      x.matrix() * s.matrix()) -
           odot_apply(Mat3::Identity(), Mat3::Identity(),
                      dx.matrix() * ds.matrix());
  }
  const Mat3 dxh = ops.p * dx.matrix() * ops.p;          // W^-1/2 dX W^-1/2
  const Mat3 dsh = ops.pinv_t * ds.matrix() * ops.pinv_t;  // W^1/2 dS W^1/2
  const Mat3 cross = 0.5 * (dxh * dsh + dsh * dxh);
  const Mat3 corr = ops.pinv_t * cross * ops.pinv_t;
  return SymTensor::from_matrix(sigma_mu * s.matrix().inverse()) - x -
         SymTensor::from_matrix(corr);
}

SymTensor predictor_rc(const DirectionOps& ops, const SymTensor& x,
                       const SymTensor& s) {
  if (ops.dir == Direction::AHO)
    return -odot_apply(Mat3::Identity(), Mat3::Identity(),
                       x.matrix() * s.matrix());
  return -x;
}

}  // namespace

std::pair<SymTensor, SymTensor> newton_solve(const DirectionOps& ops,
                                             const FourthOrder& c,
                                             const FourthOrder& cinv,
                                             const SymTensor& rd,
                                             const SymTensor& rc) {
  return factorize(ops, c, cinv).solve(rd, rc);
}

double max_step(const SymTensor& m, const SymTensor& dm) {
  Eigen::LLT<Mat3> llt(m.matrix());
  if (llt.info() != Eigen::Success)
    throw NotPD("max_step: Cholesky factorization failed");
  const auto L = llt.matrixL();
  const Mat3 a = L.solve(dm.matrix());
  Mat3 t = L.solve(a.transpose()).transpose();
  t = 0.5 * (t + t.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat3> es(t, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

SolveResult solve(const SymTensor& d, const FourthOrder& c,
                  const FourthOrder& cinv, Direction dir,
                  const IpmOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult out;
  SolveReport& rep = out.report;

  IpmState it;
  it.x = 2.0 * SymTensor::identity();
  it.s = 2.0 * SymTensor::identity();
  double tau = opts.tau0;

  const SymTensor cd = c.apply(d);
  const double cd_norm = cd.norm();

  for (it.k = 0; it.k <= opts.max_iter; ++it.k) {
    const double gap = it.x.dot(it.s);
    it.mu = gap / 3.0;
    const double xcx = it.x.dot(c.apply(it.x));
    const double p_obj = 0.5 * xcx + it.x.dot(cd);
    const double d_obj = -0.5 * xcx;
    const SymTensor rd = c.apply(it.x + d) - it.s;
    const double eta = std::max(gap / (1.0 + std::abs(p_obj) + std::abs(d_obj)),
                                rd.norm() / (1.0 + cd_norm));
    rep.eta = eta;
    rep.gap = gap;
    if (eta <= opts.epsilon) {
      rep.status = SolveStatus::Converged;
      break;
    }
    if (it.k == opts.max_iter) {
      rep.status = SolveStatus::MaxIter;
      break;
    }

    TraceRow row;
    row.k = it.k;
    row.mu = it.mu;
    row.eta = eta;
    row.gap = gap;
    try {
      const DirectionOps ops = build_directions(it.x, it.s, dir);
      const NewtonFactors nf = factorize(ops, c, cinv);
      if (opts.record_conditioning)
        row.kappa = cond2(FourthOrder::from_matrix(nf.system));

      // Predictor: sigma = 0 in R_c.
      const auto [px, ps] = nf.solve(rd, predictor_rc(ops, it.x, it.s));
      double alpha = std::min(max_step(it.x, px), max_step(it.s, ps));
      const double alpha_p = std::min(1.0, tau * alpha);
      row.alpha_p = alpha_p;

      // Centering rule, clamped to [0, 1].
      const double num = (it.x + alpha_p * px).dot(it.s + alpha_p * ps);
      const double sigma = std::clamp(num / gap, 0.0, 1.0);
      row.sigma = sigma;

      // Corrector with the Mehrotra second-order term.
      const SymTensor rc = corrector_rc(ops, it.x, it.s, sigma * it.mu, px, ps);
      const auto [cx, cs] = nf.solve(rd, rc);
      alpha = std::min(max_step(it.x, cx), max_step(it.s, cs));
      const double alpha_c = std::min(1.0, tau * alpha);
      row.alpha_c = alpha_c;

      it.x += alpha_c * cx;
      it.s += alpha_c * cs;
      tau = 0.9 + 0.08 * alpha_c;
      rep.trace.push_back(row);
      rep.iterations = it.k + 1;
    } catch (const Error& e) {
      rep.trace.push_back(row);
      rep.status = SolveStatus::FactorizationFailure;
      rep.detail = e.what();
      break;
    }
  }

  out.y_star = -it.x;
  out.s_star = it.s;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace symproj
