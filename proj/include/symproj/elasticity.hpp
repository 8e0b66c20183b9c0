#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "symproj/tensor.hpp"

namespace symproj {

struct IdentityModel {};

struct IsotropicModel {
  double E = 1.0;
  double nu = 0.0;
};

struct TransverselyIsotropicModel {
  std::array<double, 5> alpha{};  // alpha1..alpha5
  Vec3 axis = Vec3(0, 0, 1);      // f3, the direction of transverse isotropy
};

using ElasticityModel =
    std::variant<IdentityModel, IsotropicModel, TransverselyIsotropicModel>;

// Lame moduli derived from (E, nu).
struct LameModuli {
  double psi;    // E / (2 (1 + nu))
  double omega;  // nu E / ((1 + nu) (1 - 2 nu))
};

// The elasticity tensor and its closed-form inverse.
struct ModelTensors {
  FourthOrder C;
  FourthOrder Cinv;
};

// Lists every violated parameter inequality; empty means valid.
std::vector<std::string> validate(const ElasticityModel& model);

// Assembles C and C^{-1} from the closed-form components. For a transversely
// isotropic model with a non-canonical axis, components are built in the
// f-frame and rotated into the working frame. Throws InvalidParameters when
// validate() reports violations.
ModelTensors build(const ElasticityModel& model);

LameModuli lame_from(double E, double nu);

// Transversely isotropic model that degenerates to an isotropic tensor:
// alpha3 = 2 alpha2 - alpha1, alpha4 = alpha5 = alpha1 - alpha2.
ElasticityModel ti_isotropic_reduction(double alpha1, double alpha2);

// Orthonormal frame whose third column is the given unit axis.
Mat3 frame_from_axis(const Vec3& axis);

}  // namespace symproj
