#pragma once

#include <array>
#include <tuple>
#include <utility>
#include <vector>

#include "symproj/ipm.hpp"
#include "symproj/tensor.hpp"

namespace symproj {

// Point on the central path: X and S commute with shared eigenbasis q and
// eigenvalue products lambda_i xi_i = sigma_mu.
struct CentralPathPoint {
  Vec3 lambda;  // eigenvalues of X
  Vec3 xi;      // eigenvalues of S
  Mat3 q;       // shared orthonormal eigenbasis (columns)
  double sigma_mu = 0.0;

  SymTensor x() const;
  SymTensor s() const;
};

// Limit rank patterns of (X*, S*); ranks sum to 3.
enum class RankCase { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };

// Coefficients of the cubic m^3 + a m^2 + b m + c whose roots are the
// eigenvalues of L = M_AHO M_AHO^T on the span of the q_i x q_i, plus the
// gamma matrix they come from.
struct CubicCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  Mat3 gamma = Mat3::Zero();
};

// Closed-form eigenvalues of W (.) W for a central-path point in the given
// rank case (the products w_i w_j expressed through sigma_mu and the O(1)
// data of the case). Throws InvalidInput when the point does not match the
// declared case.
std::array<double, 6> wodotw_eigs(RankCase rank_case,
                                  const CentralPathPoint& point);

// Courant-Fischer-Weyl sandwich bounds on kappa(S_NT) from the spectra of
// W (.) W and C^{-1}.
std::pair<double, double> kappa_bounds_snt(const CentralPathPoint& point,
                                           const FourthOrder& cinv);

CubicCoeffs cubic_coeffs(const CentralPathPoint& point, double psi,
                         double omega);

// Three real roots of m^3 + a m^2 + b m + c by the trigonometric method,
// with a companion-matrix fallback near coincident roots.
std::array<double, 3> solve_cubic_three_real(double a, double b, double c);

// Eigenvalues of L = M_AHO M_AHO^T for isotropic C with Lame moduli
// (psi, omega): three closed forms on the mixed eigentensors and the three
// roots of the cubic. Throws InconsistentPoint when roots go complex or
// nonpositive beyond tolerance.
std::array<double, 6> l_eigs_isotropic(const CentralPathPoint& point,
                                       double psi, double omega);

// Eigenvalues of the (symmetric) M_AHO when C is the identity tensor.
std::array<double, 6> m_aho_eigs_identity(const CentralPathPoint& point);

// Per-iteration (k, mu, kappa) series from a solve run with conditioning
// recording; throws MissingTrace otherwise.
std::vector<std::tuple<int, double, double>> kappa_trace(
    const SolveReport& report);

// Rank case of a numerical solution (relative eigenvalue threshold 1e-7).
RankCase classify_rank_case(const SymTensor& y_star);

// Least-squares slope of log(kappa) against log(1/mu) over the last n rows
// of a kappa trace.
double loglog_slope_tail(
    const std::vector<std::tuple<int, double, double>>& trace, int n);

}  // namespace symproj
