#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "symproj/tensor.hpp"

namespace symproj {

// Symmetrization scheme of the Newton system: NT uses P = W^{-1/2} with W
// the geometric mean of X and S^{-1}; AHO uses P = I.
enum class Direction { NT, AHO };

Direction direction_from_string(const std::string& s);
std::string to_string(Direction d);

struct IpmOptions {
  double epsilon = 1e-15;
  int max_iter = 200;
  double tau0 = 0.9;
  bool record_conditioning = false;
};

enum class SolveStatus { Converged, MaxIter, FactorizationFailure };

std::string to_string(SolveStatus s);

// One predictor-corrector cycle; kappa is NaN unless conditioning was
// recorded.
struct TraceRow {
  int k = 0;
  double mu = 0.0;
  double eta = 0.0;
  double gap = 0.0;
  double kappa = std::numeric_limits<double>::quiet_NaN();
  double alpha_p = std::numeric_limits<double>::quiet_NaN();
  double alpha_c = std::numeric_limits<double>::quiet_NaN();
  double sigma = std::numeric_limits<double>::quiet_NaN();
};

// Interior point iterate.
struct IpmState {
  SymTensor x;
  SymTensor s;
  double mu = 0.0;
  int k = 0;
};

struct SolveReport {
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double eta = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  std::vector<TraceRow> trace;
  double wall_seconds = 0.0;
  std::string detail;
};

struct SolveResult {
  SymTensor y_star;  // -X
  SymTensor s_star;
  SolveReport report;
};

// Operator pair of the symmetrized Newton system at (X, S) plus the
// complementarity residual base. AHO: E = I (.) S, F = X (.) I and
// rc_base = mu I - (X S + S X)/2. NT: the W-scaled system E = I,
// F = W (.) W and rc_base = mu S^{-1} - X, whose Schur complement is
// (W (.) W) + C^{-1}.
struct DirectionOps {
  Direction dir = Direction::AHO;
  FourthOrder E;
  FourthOrder F;
  SymTensor rc_base;
  Mat3 p = Mat3::Identity();       // P
  Mat3 pinv_t = Mat3::Identity();  // P^{-T}
  SymTensor w;                     // NT scaling point (identity for AHO)
};

DirectionOps build_directions(const SymTensor& x, const SymTensor& s,
                              Direction dir);

// Solves the Newton system -C(dX) + dS = Rd, E(dX) + F(dS) = Rc.
// NT route: Cholesky on S_NT = (W (.) W) + C^{-1} for dS, then
// dX = C^{-1}(dS - Rd). AHO route: LU with partial pivoting on
// M_AHO = E + F C for dX, then dS = Rd + C(dX).
std::pair<SymTensor, SymTensor> newton_solve(const DirectionOps& ops,
                                             const FourthOrder& c,
                                             const FourthOrder& cinv,
                                             const SymTensor& rd,
                                             const SymTensor& rc);

// Largest alpha with M + beta dM PSD for all beta in [0, alpha], computed
// as -1/lambda_min(L^{-1} dM L^{-T}) from the Cholesky factor of M; +inf
// when the direction never leaves the cone.
double max_step(const SymTensor& m, const SymTensor& dm);

// Mehrotra predictor-corrector path-following solve of the projection
// complementarity problem with X = -Y; starts from (X, S) = 2(I, I).
SolveResult solve(const SymTensor& d, const FourthOrder& c,
                  const FourthOrder& cinv, Direction dir,
                  const IpmOptions& opts = {});

}  // namespace symproj
