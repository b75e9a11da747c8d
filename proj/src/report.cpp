#include "symdec/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "symdec/dirac.hpp"
#include "symdec/emeq.hpp"
#include "symdec/jacobi.hpp"
#include "symdec/optics.hpp"
#include "symdec/transform.hpp"

namespace symdec {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Io:
      return 4;
    case ErrorCode::ComplexEigenvalues:
    case ErrorCode::PivotComplex:
    case ErrorCode::BoostDomain:
    case ErrorCode::DegenerateB:
    case ErrorCode::UnstableSystem:
    case ErrorCode::BranchAmbiguity:
    case ErrorCode::MaxStepsExceeded:
      return 3;
    default:
      return 2;
  }
}

Input load_input(const std::string& path) {
  const std::string bytes = read_file(path);
  return {parse_matrix_file(bytes), fnv1a64_hex(bytes), path};
}

namespace {

Json json_matrix(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_vec(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Json json_input(const Input& in) {
  Json j;
  j["path"] = in.path;
  j["digest"] = in.digest;
  j["kind"] = in.file.kind == MatrixKind::Force ? "force" : "transfer";
  j["n"] = in.file.n_pairs;
  if (!in.file.label.empty()) j["label"] = in.file.label;
  if (in.file.tau) j["tau"] = *in.file.tau;
  return j;
}

Json json_frequency(const Frequency& f) {
  Json j;
  j["value"] = f.value;
  j["nature"] = std::string(to_string(f.nature));
  return j;
}

Json json_emeq(const EmeqState& s) {
  Json j;
  j["energy"] = s.energy;
  j["P"] = json_vec(s.p);
  j["E"] = json_vec(s.e);
  j["B"] = json_vec(s.b);
  const MassComponents m = mass_components(s);
  j["masses"] = {{"M_r", m.mr}, {"M_g", m.mg}, {"M_b", m.mb}};
  const AuxVectors a = aux_vectors(s);
  j["aux"] = {{"r", json_vec(a.r)}, {"g", json_vec(a.g)}, {"b", json_vec(a.b)}};
  return j;
}

Json json_spectral(const SpectralInvariants& s) {
  Json j;
  j["K1"] = s.k1;
  j["K2"] = s.k2;
  j["det"] = s.det;
  j["classification"] = std::string(to_string(s.classification));
  j["degenerate"] = s.degenerate;
  j["stable"] = s.stable;
  j["omega1"] = json_frequency(s.w1);
  j["omega2"] = json_frequency(s.w2);
  return j;
}

Json json_lax(const Matrix& m) {
  const auto l = lax_invariants(m);
  return Json::array({l[0], l[1], l[2], l[3]});
}

Json json_steps(const SymplecticTransform& t, std::size_t& skipped) {
  Json steps = Json::array();
  skipped = 0;
  for (const TransformStep& s : t.log) {
    if (s.skipped) {
      ++skipped;
      continue;
    }
    Json j;
    j["generator"] = s.generator;
    j["angle"] = s.angle;
    j["pairs"] = Json::array({s.block_i, s.block_j});
    steps.push_back(std::move(j));
  }
  return steps;
}

Json json_issues(const std::vector<Issue>& issues) {
  Json a = Json::array();
  for (const Issue& i : issues) a.push_back({{"code", std::string(to_string(i.code))}, {"detail", i.detail}});
  return a;
}

Json header(const char* command, const Input& in) {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  doc["input"] = json_input(in);
  return doc;
}

}  // namespace

CheckOutcome check_report(const Input& in, double tol) {
  CheckOutcome out;
  out.doc = header("check", in);
  out.doc["tolerance"] = tol;
  const Matrix& m = in.file.matrix;
  const double norm = m.frobenius_norm();
  if (in.file.kind == MatrixKind::Force) {
    const double res = symplex_residual(m) / std::max(1.0, norm);
    out.valid = res <= tol;
    out.doc["symplex_residual"] = res;
    if (m.rows() == 4) {
      const RdmCoefficients c = rdm_coefficients(m);
      double cos_max = 0.0;
      for (std::size_t k = 10; k < 16; ++k) cos_max = std::max(cos_max, std::abs(c[k]));
      out.doc["cosymplex_coefficient_max"] = cos_max;
      const EmeqState s = emeq_from_coefficients(c);
      out.doc["emeq"] = json_emeq(s);
      out.doc["spectral"] = json_spectral(spectral_invariants(s));
    }
    out.doc["lax_invariants"] = json_lax(m);
  } else {
    const double res = symplectic_residual(m) / std::max(1.0, norm * norm);
    out.valid = res <= tol;
    out.doc["symplectic_residual"] = res;
    const auto [ms, mc] = symplex_cosymplex_split(m);
    if (m.rows() == 4)
      out.doc["symplex_part_spectral"] = json_spectral(spectral_invariants(emeq_from_coefficients(rdm_coefficients(ms))));
  }
  out.doc["valid"] = out.valid;
  return out;
}

Json decouple_report(const Input& in, const DecoupleRequest& req) {
  const Matrix& f = in.file.matrix;
  if (in.file.kind != MatrixKind::Force)
    throw Error(ErrorCode::NotASymplex, "decouple expects a force matrix (kind \"force\")");
  if (!is_symplex(f)) throw Error(ErrorCode::NotASymplex, "input fails the symplex predicate");

  Json doc = header("decouple", in);
  doc["tolerances"] = {{"jacobi", req.tol},
                       {"step", req.options.step_tol},
                       {"post", req.options.post_tol},
                       {"cross", req.options.cross_tol}};
  const char* requested = req.form == TargetForm::Block ? "block"
                          : req.form == TargetForm::Hamiltonian ? "hamiltonian"
                                                                : "normal";
  doc["requested_form"] = requested;
  doc["lax_before"] = json_lax(f);

  SymplecticTransform transform;
  Matrix final;
  std::vector<Issue> issues;
  std::string branch, form;
  double residual = 0.0;

  if (f.rows() == 4) {
    const EmeqState s = emeq_from_symplex(f);
    const SpectralInvariants inv = spectral_invariants(s);
    doc["spectral"] = json_spectral(inv);
    DecoupleResult r;
    if (inv.classification == Classification::ComplexQuadruple) {
      const double e2 = s.energy * s.energy;
      const bool low = e2 < std::max(norm2(s.p), norm2(s.e));
      branch = low ? "complex-low-energy" : "complex-intermediate";
      r = low ? complex_low_energy(f, req.options) : complex_intermediate(f, req.options);
    } else {
      branch = "real";
      r = decouple_block_diagonal(f, req.options);
      if (r.closed_form) {
        doc["closed_form_check"] = {{"max_deviation", r.closed_form->max_deviation},
                                    {"agrees", r.closed_form->agrees}};
      }
      if (req.form != TargetForm::Block) r = to_hamiltonian_form(r, req.options);
      if (req.form == TargetForm::Normal) r = to_normal_form(r, req.options);
    }
    if (r.rho) doc["rho"] = *r.rho;
    if (r.block_omega) doc["block_omega"] = Json::array({(*r.block_omega)[0], (*r.block_omega)[1]});
    transform = std::move(r.transform);
    final = std::move(r.final.matrix);
    issues = std::move(r.issues);
    form = std::string(to_string(r.form));
    residual = r.residual;
  } else {
    branch = "jacobi";
    JacobiOptions jo;
    jo.tol = req.tol;
    jo.pivot = req.options;
    jo.target = req.form == TargetForm::Block ? JacobiTarget::BlockDiagonal
                : req.form == TargetForm::Hamiltonian ? JacobiTarget::HamiltonianForm
                                                      : JacobiTarget::NormalForm;
    JacobiResult r = jacobi_decouple(f, jo);
    doc["jacobi"] = {{"pivot_steps", r.stats.pivot_steps},
                     {"hamiltonian_steps", r.stats.hamiltonian_steps},
                     {"scaling_steps", r.stats.scaling_steps},
                     {"initial_residual", r.stats.initial_residual},
                     {"final_residual", r.stats.final_residual},
                     {"reference_steps", reference_step_count(f.rows() / 2)}};
    if (!r.pair_omega.empty()) doc["pair_omega"] = r.pair_omega;
    transform = std::move(r.transform);
    final = std::move(r.final);
    issues = std::move(r.issues);
    form = jo.target == JacobiTarget::BlockDiagonal ? "block"
           : jo.target == JacobiTarget::NormalForm && r.normal ? "normal"
           : f.rows() == 2 ? "block"
                           : "hamiltonian";
    residual = jo.target == JacobiTarget::BlockDiagonal ? off_block_max_abs(final)
                                                        : hamiltonian_residual(final);
  }

  doc["branch"] = branch;
  doc["form"] = form;
  std::size_t skipped = 0;
  Json steps = json_steps(transform, skipped);
  doc["transform"] = {{"steps", std::move(steps)},
                      {"skipped_steps", skipped},
                      {"symplectic_residual", symplectic_defect(transform)},
                      {"inverse_residual", inverse_defect(transform)}};
  doc["final"] = {{"matrix", json_matrix(final)}, {"residual", residual}};
  doc["lax_after"] = json_lax(final);
  doc["issues"] = json_issues(issues);
  doc["replay_residual"] = replay_report_residual(doc, f);
  return doc;
}

TunesOutcome tunes_report(const Input& in, const TunesRequest& req) {
  TunesOutcome out;
  Json& doc = out.doc;
  doc = header("tunes", in);
  const double tau = req.tau.value_or(in.file.tau.value_or(1.0));
  doc["tau"] = tau;

  TransferMatrix m;
  if (in.file.kind == MatrixKind::Force) {
    if (!is_symplex(in.file.matrix)) throw Error(ErrorCode::NotASymplex, "force matrix is not a symplex");
    m = matrix_exponential(in.file.matrix, tau);
    doc["source"] = "exp(F tau)";
  } else {
    m = {in.file.matrix, tau, symplectic_residual(in.file.matrix)};
    doc["source"] = "transfer matrix";
  }

  const OpticsReport rep = analyze_one_turn(m);
  Json tunes = Json::array();
  for (const Tune& t : rep.tunes) {
    tunes.push_back({{"cosine", t.cosine},
                     {"sine", t.sine},
                     {"phase", t.phase},
                     {"tune", t.tune},
                     {"stable", t.stable},
                     {"branch_ambiguous", t.branch_ambiguous}});
  }
  doc["tunes"] = std::move(tunes);
  if (rep.cosine_sum_difference) {
    doc["cosine_sum"] = (*rep.cosine_sum_difference)[0];
    doc["cosine_difference"] = (*rep.cosine_sum_difference)[1];
  }
  doc["normal_frame"] = rep.normal_frame;
  doc["residuals"] = {{"symplectic", rep.symplectic_residual},
                      {"off_block", rep.off_block_residual},
                      {"cosymplex_off_block", rep.cosymplex_off_block_residual}};
  if (rep.jacobi_stats) doc["jacobi"] = {{"pivot_steps", rep.jacobi_stats->pivot_steps}};
  doc["issues"] = json_issues(rep.issues);

  try {
    const EffectiveForce ef = effective_force(m);
    doc["effective_force"] = {{"matrix", json_matrix(ef.force)},
                              {"branch_ambiguity", ef.branch_ambiguity},
                              {"reconstruction_residual", ef.reconstruction_residual}};
  } catch (const Error& e) {
    doc["effective_force"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  }

  if (req.emittances) {
    try {
      const Matrix sigma = matched_sigma(rep, *req.emittances);
      const Matrix s = sigma * symplectic_unit(rep.n_pairs);
      doc["matched_sigma"] = {
          {"emittances", *req.emittances},
          {"matrix", json_matrix(sigma)},
          {"fixed_point_residual", max_abs_diff(propagate_sigma(sigma, m), sigma)},
          {"commutator_residual", max_abs_diff(m.m * s, s * m.m)}};
    } catch (const Error& e) {
      out.rejected = e.code();
      doc["matched_sigma"] = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    }
  }
  return out;
}

Json error_report(const std::string& command, const Error& e) {
  Json doc;
  doc["schema"] = kReportSchema;
  doc["command"] = command;
  doc["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (e.step() != 0) doc["error"]["step"] = e.step();
  if (e.code() == ErrorCode::PivotComplex)
    doc["error"]["pivot"] = Json::array({e.pivot_i(), e.pivot_j()});
  return doc;
}

double replay_report_residual(const Json& report, const Matrix& input) {
  std::vector<TransformStep> log;
  for (const Json& s : report.at("transform").at("steps")) {
    log.push_back({s.at("generator").get<int>(), s.at("angle").get<double>(),
                   s.at("pairs").at(0).get<std::size_t>(), s.at("pairs").at(1).get<std::size_t>(),
                   false});
  }
  const SymplecticTransform t = replay(log, input.rows() / 2);
  const Matrix replayed = apply_similarity(t, input);
  const Json& rows = report.at("final").at("matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < input.rows(); ++i)
    for (std::size_t j = 0; j < input.cols(); ++j)
      worst = std::max(worst, std::abs(replayed(i, j) - rows.at(i).at(j).get<double>()));
  return worst;
}

std::string render_json(const Json& doc) { return doc.dump(2) + "\n"; }

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "null";
  return v.dump();
}

bool is_flat_array(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
}

void flatten(const Json& v, const std::string& key, std::ostringstream& out) {
  if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, key.empty() ? k : key + "." + k, out);
  } else if (is_flat_array(v)) {
    out << key << " = [";
    bool first = true;
    for (const Json& x : v) {
      out << (first ? "" : ", ") << scalar_text(x);
      first = false;
    }
    out << "]\n";
  } else if (v.is_array()) {
    std::size_t i = 0;
    for (const Json& x : v) flatten(x, key + "[" + std::to_string(i++) + "]", out);
    if (i == 0) out << key << " = []\n";
  } else {
    out << key << " = " << scalar_text(v) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  flatten(doc, "", out);
  return out.str();
}

std::vector<BenchRow> run_bench(const BenchRequest& req) {
  if (req.n_min < 2 || req.n_min > req.n_max || req.n_max > 16 || req.seeds == 0)
    throw Error(ErrorCode::DimensionMismatch, "bench needs 2 <= n-min <= n-max <= 16 and seeds >= 1");
  std::vector<BenchRow> rows;
  for (std::size_t n = req.n_min; n <= req.n_max; ++n) {
    BenchRow row;
    row.n = n;
    row.seeds = req.seeds;
    row.reference = reference_step_count(n);
    row.min_steps = static_cast<std::size_t>(-1);
    double total = 0.0, total_ms = 0.0;
    for (std::size_t s = 0; s < req.seeds; ++s) {
      const Matrix f = random_test_symplex(n, req.seed_base + s);
      const auto t0 = std::chrono::steady_clock::now();
      const JacobiResult r = jacobi_decouple(f);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      const std::size_t steps = r.stats.pivot_steps;
      total += static_cast<double>(steps);
      row.min_steps = std::min(row.min_steps, steps);
      row.max_steps = std::max(row.max_steps, steps);
      total_ms += ms;
      row.max_ms = std::max(row.max_ms, ms);
    }
    row.mean_steps = total / static_cast<double>(req.seeds);
    row.mean_ms = total_ms / static_cast<double>(req.seeds);
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, bool timing) {
  std::ostringstream out;
  out << "n,seeds,mean_steps,min,max,reference";
  if (timing) out << ",mean_ms,max_ms";
  out << "\n";
  for (const BenchRow& r : rows) {
    out << r.n << ',' << r.seeds << ',' << format_double(r.mean_steps) << ',' << r.min_steps << ','
        << r.max_steps << ',' << format_double(r.reference);
    if (timing) out << ',' << format_double(r.mean_ms) << ',' << format_double(r.max_ms);
    out << "\n";
  }
  return out.str();
}

}  // namespace symdec
