#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symproj/analytic.hpp"
#include "symproj/elasticity.hpp"
#include "symproj/ipm.hpp"

namespace symproj {

enum class Provenance { Random, Parametric, File };

struct ProblemInstance {
  long id = 0;
  SymTensor d;
  // Raw components (D11, D12, D22, D13, D23, D33); the strain-file
  // interchange values, kept verbatim so export round-trips bit-exactly.
  std::array<double, 6> components{};
  Provenance provenance = Provenance::Random;
  // Parametric construction data, when applicable.
  double theta1 = 0.0;
  double theta2 = 0.0;
  Vec3 diag = Vec3::Zero();
  std::string source;  // file path for ingested records
};

struct Dataset {
  std::vector<ProblemInstance> instances;
  long generated = 0;        // draws before filtering
  long filtered_trivial = 0; // removed because D in Sym- or C(D) in Sym+
};

// Whether the projection of D is trivial for the given model: D in Sym-
// (Y* = D) or C(D) in Sym+ (Y* = 0), within 1e-12 max(1, ||D||).
bool is_trivial_instance(const SymTensor& d, const ModelTensors& tensors,
                         bool* d_negative = nullptr,
                         bool* cd_positive = nullptr);

// n draws of D = Q diag(u) Q^T with u uniform on [-l, l] and Q Haar;
// trivial instances are filtered out and counted. Deterministic per seed.
Dataset gen_random(long n, double l, std::uint64_t seed,
                   const ModelTensors& tensors);

// Parametric tensor D(theta1, theta2) = d1 Q11 + d2 Q22 + d3 Q33 built from
// the trigonometric orthonormal triple in the given isotropy frame
// (columns f1, f2, f3).
ProblemInstance gen_parametric(double theta1, double theta2, const Vec3& d,
                               const Mat3& frame = Mat3::Identity());

// Scales for solving D with the model's tensors near unit magnitude:
// D_hat = D / s_d with s_d = ||D||, and the 6x6 of C (and the inverse of
// C^{-1}) scaled by 1 / s_c with s_c the max-abs entry of C. The solution
// de-normalizes as Y* = s_d Y_hat. Throws DegenerateInput when D = 0.
struct NormalizedProblem {
  SymTensor d_hat;
  double s_d = 1.0;
  double s_c = 1.0;
  ModelTensors tensors;
};

NormalizedProblem normalize_problem(const SymTensor& d,
                                    const ModelTensors& tensors);

// Projection of one instance: solves the (optionally normalized) problem and
// de-normalizes the result. D = 0 short-circuits to Y = 0.
SolveResult project(const SymTensor& d, const ModelTensors& tensors,
                    Direction dir, const IpmOptions& opts, bool normalize);

struct InstanceRecord {
  long id = 0;
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double gap = 0.0;
  double error = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;
  SymTensor y;
};

struct AggregateStats {
  long count = 0;
  double iter_av = 0.0;
  double gap_av = 0.0;
  double error_av = std::numeric_limits<double>::quiet_NaN();
  long error_count = 0;
  double cpu_tot = 0.0;
  long n_converged = 0;
  long n_maxiter = 0;
  long n_facfail = 0;
};

struct BatchResult {
  AggregateStats stats;
  std::vector<InstanceRecord> records;
};

// Solves every instance, computing the gap and, when the model admits an
// analytic oracle, the absolute error ||X - X*||. Instances are distributed
// over `threads` workers; aggregation is an ordered reduction by id.
BatchResult run_batch(const Dataset& dataset, const ElasticityModel& model,
                      Direction dir, const IpmOptions& opts, int threads = 1,
                      bool normalize = true);

// Strain-record file: one `id, D11, D12, D22, D13, D23, D33` per line,
// `#` comments allowed.
Dataset ingest_strains(const std::string& path);
void export_strains(const std::string& path, const Dataset& dataset);

struct SweepRow {
  double theta2 = 0.0;
  double gap_aho = 0.0;
  double gap_nt = 0.0;
  // Oracle errors at the coaxial angles (theta2 = 0, pi, 2 pi), else NaN.
  double err_aho = std::numeric_limits<double>::quiet_NaN();
  double err_nt = std::numeric_limits<double>::quiet_NaN();
};

// Gap of both directions over a theta2 grid at fixed theta1 and d, with the
// coaxial TI oracle evaluated where it applies.
std::vector<SweepRow> sweep_theta(double theta1,
                                  const std::vector<double>& theta2_grid,
                                  const Vec3& d,
                                  const TransverselyIsotropicModel& model,
                                  const IpmOptions& opts, bool normalize = true);

// Run configuration file: `key = value` lines, # comments, lists separated
// by commas or spaces.
struct RunConfig {
  std::string model = "identity";
  double E = 1.0;
  double nu = 0.0;
  std::array<double, 5> alpha = {8.0, 2.0, 0.8, 6.0, 9.0};
  Vec3 axis = Vec3(0, 0, 1);
  std::string direction = "aho";
  double epsilon = 1e-15;
  int max_iter = 200;
  std::uint64_t seed = 1;
  long n = 10000;
  double l = 1.0;
  int threads = 1;
  bool normalize = true;

  ElasticityModel make_model() const;
  IpmOptions make_options() const;
};

RunConfig parse_config(const std::string& path);

}  // namespace symproj
