#pragma once

#include <string>

#include "symproj/elasticity.hpp"
#include "symproj/tensor.hpp"

namespace symproj {

// Which projection branch fired, by the rank of Y*.
enum class CaseLabel { Zero, Rank1, Rank2, Full };

std::string to_string(CaseLabel label);

struct Projection {
  SymTensor y;
  CaseLabel label;
};

// Closed-form projection onto Sym- under an isotropic C; only nu enters.
Projection project_isotropic(const SymTensor& d, double E, double nu);

// Frobenius-metric projection: the negative part of D.
SymTensor project_frobenius(const SymTensor& d);

// Closed-form projection for a transversely isotropic C when the isotropy
// axis f3 is an eigenvector of D (relative coaxiality tolerance 1e-10).
// Solved as the complementarity problem in the shared eigenframe over the
// active-set patterns; throws NotCoaxial otherwise.
Projection project_ti_coaxial(const SymTensor& d,
                              const TransverselyIsotropicModel& model);

// Complementarity residuals of a candidate projection Y for datum D:
// the three conditions of the optimality characterization plus the
// commutation defect of Y with C(D - Y).
struct KktResiduals {
  double lambda_max_y;    // should be <= 0
  double lambda_min_s;    // lambda_min(C(D-Y)), should be >= 0
  double complementarity; // |Y . C(D-Y)|
  double commutation;     // ||Y C(D-Y)||_F
};

KktResiduals kkt_residuals(const SymTensor& d, const FourthOrder& c,
                           const SymTensor& y);

}  // namespace symproj
