#include "symproj/batch.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "symproj/errors.hpp"
#include "symproj/rng.hpp"

namespace symproj {

bool is_trivial_instance(const SymTensor& d, const ModelTensors& tensors,
                         bool* d_negative, bool* cd_positive) {
  const double tol = 1e-12 * std::max(1.0, d.norm());
  const EigenSystem ed = eig_sym3(d);
  const bool neg = ed.d[2] <= tol;
  const EigenSystem ecd = eig_sym3(tensors.C.apply(d));
  const bool pos = ecd.d[0] >= -tol;
  if (d_negative) *d_negative = neg;
  if (cd_positive) *cd_positive = pos;
  return neg || pos;
}

namespace {

std::array<double, 6> matrix_components(const Mat3& m) {
  return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1),
          0.5 * (m(0, 2) + m(2, 0)), 0.5 * (m(1, 2) + m(2, 1)), m(2, 2)};
}

ProblemInstance instance_from_components(long id,
                                         const std::array<double, 6>& c) {
  ProblemInstance inst;
  inst.id = id;
  inst.components = c;
  inst.d = SymTensor::from_components(c[0], c[1], c[2], c[3], c[4], c[5]);
  return inst;
}

}  // namespace

Dataset gen_random(long n, double l, std::uint64_t seed,
                   const ModelTensors& tensors) {
  Rng rng(seed);
  Dataset ds;
  ds.generated = n;
  ds.instances.reserve(static_cast<std::size_t>(n));
  long id = 1;
  for (long i = 0; i < n; ++i) {
    Vec3 u;
    for (int j = 0; j < 3; ++j) u[j] = rng.uniform(-l, l);
    const Mat3 q = rng.rotation();
    const Mat3 m = q * u.asDiagonal() * q.transpose();
    ProblemInstance inst = instance_from_components(id, matrix_components(m));
    if (is_trivial_instance(inst.d, tensors)) {
      ++ds.filtered_trivial;
      continue;
    }
    inst.provenance = Provenance::Random;
    ds.instances.push_back(inst);
    ++id;
  }
  return ds;
}

ProblemInstance gen_parametric(double theta1, double theta2, const Vec3& d,
                               const Mat3& frame) {
  const Vec3 f1 = frame.col(0), f2 = frame.col(1), f3 = frame.col(2);
  const double c1 = std::cos(theta1), s1 = std::sin(theta1);
  const double c2 = std::cos(theta2), s2 = std::sin(theta2);
  const Vec3 q1 = -c1 * c2 * f1 - s1 * c2 * f2 + s2 * f3;
  const Vec3 q2 = s1 * f1 - c1 * f2;
  const Vec3 q3 = c1 * s2 * f1 + s1 * s2 * f2 + c2 * f3;
  const Mat3 m = d[0] * q1 * q1.transpose() + d[1] * q2 * q2.transpose() +
                 d[2] * q3 * q3.transpose();
  ProblemInstance inst = instance_from_components(0, matrix_components(m));
  inst.provenance = Provenance::Parametric;
  inst.theta1 = theta1;
  inst.theta2 = theta2;
  inst.diag = d;
  return inst;
}

NormalizedProblem normalize_problem(const SymTensor& d,
                                    const ModelTensors& tensors) {
  const double s_d = d.norm();
  if (s_d == 0.0) throw DegenerateInput("normalize_problem: D = 0");
  NormalizedProblem np;
  np.s_d = s_d;
  np.s_c = tensors.C.matrix().cwiseAbs().maxCoeff();
  np.d_hat = d * (1.0 / s_d);
  np.tensors.C = FourthOrder::from_matrix(tensors.C.matrix() / np.s_c);
  np.tensors.Cinv = FourthOrder::from_matrix(tensors.Cinv.matrix() * np.s_c);
  return np;
}

SolveResult project(const SymTensor& d, const ModelTensors& tensors,
                    Direction dir, const IpmOptions& opts, bool normalize) {
  if (d.norm() == 0.0) {
    SolveResult res;
    res.report.status = SolveStatus::Converged;
    res.report.iterations = 0;
    res.report.gap = 0.0;
    res.report.eta = 0.0;
    return res;
  }
  if (!normalize) return solve(d, tensors.C, tensors.Cinv, dir, opts);
  const NormalizedProblem np = normalize_problem(d, tensors);
  SolveResult res = solve(np.d_hat, np.tensors.C, np.tensors.Cinv, dir, opts);
  res.y_star = res.y_star * np.s_d;
  res.s_star = res.s_star * (np.s_c * np.s_d);
  return res;
}

namespace {

std::optional<SymTensor> oracle_projection(const SymTensor& d,
                                           const ElasticityModel& model) {
  if (std::holds_alternative<IdentityModel>(model))
    return project_frobenius(d);
  if (std::holds_alternative<IsotropicModel>(model)) {
    const auto& m = std::get<IsotropicModel>(model);
    return project_isotropic(d, m.E, m.nu).y;
  }
  const auto& m = std::get<TransverselyIsotropicModel>(model);
  try {
    return project_ti_coaxial(d, m).y;
  } catch (const NotCoaxial&) {
    return std::nullopt;
  }
}

}  // namespace

BatchResult run_batch(const Dataset& dataset, const ElasticityModel& model,
                      Direction dir, const IpmOptions& opts, int threads,
                      bool normalize) {
  const ModelTensors tensors = build(model);
  const std::size_t n = dataset.instances.size();
  BatchResult out;
  out.records.resize(n);

  const int nw = std::max(1, threads);
  auto worker = [&](int w) {
    for (std::size_t i = w; i < n; i += nw) {
      const ProblemInstance& inst = dataset.instances[i];
      const SolveResult res = project(inst.d, tensors, dir, opts, normalize);
      InstanceRecord rec;
      rec.id = inst.id;
      rec.status = res.report.status;
      rec.iterations = res.report.iterations;
      rec.gap = res.report.gap;
      rec.wall_seconds = res.report.wall_seconds;
      rec.y = res.y_star;
      if (const auto y_exact = oracle_projection(inst.d, model))
        rec.error = (res.y_star - *y_exact).norm();
      out.records[i] = rec;
    }
  };
  if (nw == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  AggregateStats& st = out.stats;
  st.count = static_cast<long>(n);
  double err_sum = 0.0;
  for (const auto& rec : out.records) {
    st.iter_av += rec.iterations;
    st.gap_av += rec.gap;
    st.cpu_tot += rec.wall_seconds;
    if (std::isfinite(rec.error)) {
      err_sum += rec.error;
      ++st.error_count;
    }
    switch (rec.status) {
      case SolveStatus::Converged:
        ++st.n_converged;
        break;
      case SolveStatus::MaxIter:
        ++st.n_maxiter;
        break;
      case SolveStatus::FactorizationFailure:
        ++st.n_facfail;
        break;
    }
  }
  if (n > 0) {
    st.iter_av /= static_cast<double>(n);
    st.gap_av /= static_cast<double>(n);
  }
  if (st.error_count > 0) st.error_av = err_sum / st.error_count;
  return out;
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double_field(const std::string& field, long line) {
  const std::string f = strip(field);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(f, &pos);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + f + "'", line);
  }
  if (pos != f.size()) throw ParseError("trailing junk in field: '" + f + "'", line);
  return v;
}

std::vector<std::string> split_fields(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

Dataset ingest_strains(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  Dataset ds;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const auto fields = split_fields(line, ',');
    if (fields.size() != 7)
      throw ParseError("expected 7 fields, got " + std::to_string(fields.size()),
                       lineno);
    long id = 0;
    {
      const std::string f = strip(fields[0]);
      std::size_t pos = 0;
      try {
        id = std::stol(f, &pos);
      } catch (const std::exception&) {
        throw ParseError("bad id field '" + f + "'", lineno);
      }
      if (pos != f.size()) throw ParseError("bad id field '" + f + "'", lineno);
    }
    std::array<double, 6> c{};
    for (int i = 0; i < 6; ++i) {
      c[i] = parse_double_field(fields[i + 1], lineno);
      if (!std::isfinite(c[i]))
        throw InvalidInput("non-finite strain component at line " +
                           std::to_string(lineno));
    }
    ProblemInstance inst = instance_from_components(id, c);
    inst.provenance = Provenance::File;
    inst.source = path;
    ++ds.generated;
    ds.instances.push_back(inst);
  }
  return ds;
}

void export_strains(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  char buf[512];
  for (const auto& inst : dataset.instances) {
    const auto& c = inst.components;
    std::snprintf(buf, sizeof buf,
                  "%ld, %.17g, %.17g, %.17g, %.17g, %.17g, %.17g\n", inst.id,
                  c[0], c[1], c[2], c[3], c[4], c[5]);
    out << buf;
  }
}

std::vector<SweepRow> sweep_theta(double theta1,
                                  const std::vector<double>& theta2_grid,
                                  const Vec3& d,
                                  const TransverselyIsotropicModel& model,
                                  const IpmOptions& opts, bool normalize) {
  const ModelTensors tensors = build(ElasticityModel(model));
  const Mat3 frame = frame_from_axis(model.axis);
  std::vector<SweepRow> rows;
  rows.reserve(theta2_grid.size());
  for (const double theta2 : theta2_grid) {
    const ProblemInstance inst = gen_parametric(theta1, theta2, d, frame);
    SweepRow row;
    row.theta2 = theta2;
    const SolveResult aho =
        project(inst.d, tensors, Direction::AHO, opts, normalize);
    const SolveResult nt =
        project(inst.d, tensors, Direction::NT, opts, normalize);
    row.gap_aho = aho.report.gap;
    row.gap_nt = nt.report.gap;
    if (std::abs(std::sin(theta2)) < 1e-12) {
      const Projection exact = project_ti_coaxial(inst.d, model);
      row.err_aho = (aho.y_star - exact.y).norm();
      row.err_nt = (nt.y_star - exact.y).norm();
    }
    rows.push_back(row);
  }
  return rows;
}

ElasticityModel RunConfig::make_model() const {
  if (model == "identity") return IdentityModel{};
  if (model == "isotropic") return IsotropicModel{E, nu};
  if (model == "transversely_isotropic") {
    TransverselyIsotropicModel m;
    m.alpha = alpha;
    m.axis = axis;
    return m;
  }
  throw InvalidParameters(
      "model must be identity|isotropic|transversely_isotropic, got '" +
      model + "'");
}

IpmOptions RunConfig::make_options() const {
  IpmOptions o;
  o.epsilon = epsilon;
  o.max_iter = max_iter;
  return o;
}

namespace {

std::vector<double> parse_list(const std::string& value, long line) {
  std::string v = value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::stringstream ss(v);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) out.push_back(parse_double_field(tok, line));
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path, 0);
  RunConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno);
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key == "model") {
      cfg.model = value;
    } else if (key == "E") {
      cfg.E = parse_double_field(value, lineno);
    } else if (key == "nu") {
      cfg.nu = parse_double_field(value, lineno);
    } else if (key == "alpha") {
      const auto vals = parse_list(value, lineno);
      if (vals.size() != 5)
        throw ParseError("alpha needs 5 values", lineno);
      std::copy(vals.begin(), vals.end(), cfg.alpha.begin());
    } else if (key == "axis") {
      const auto vals = parse_list(value, lineno);
      if (vals.size() != 3) throw ParseError("axis needs 3 values", lineno);
      cfg.axis = Vec3(vals[0], vals[1], vals[2]);
    } else if (key == "direction") {
      if (value != "nt" && value != "aho")
        throw ParseError("direction must be nt|aho", lineno);
      cfg.direction = value;
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double_field(value, lineno);
      if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw ParseError("epsilon must lie in (0, 1)", lineno);
    } else if (key == "max_iter") {
      cfg.max_iter = static_cast<int>(parse_double_field(value, lineno));
      if (cfg.max_iter <= 0) throw ParseError("max_iter must be positive", lineno);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_double_field(value, lineno));
    } else if (key == "n") {
      cfg.n = static_cast<long>(parse_double_field(value, lineno));
    } else if (key == "l") {
      cfg.l = parse_double_field(value, lineno);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_double_field(value, lineno));
    } else if (key == "normalize") {
      if (value == "on")
        cfg.normalize = true;
      else if (value == "off")
        cfg.normalize = false;
      else
        throw ParseError("normalize must be on|off", lineno);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  return cfg;
}

}  // namespace symproj
