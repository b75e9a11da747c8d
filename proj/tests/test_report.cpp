#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "symdec/jacobi.hpp"
#include "symdec/report.hpp"

using namespace symdec;

namespace {

Input input_of(const Matrix& m, MatrixKind kind = MatrixKind::Force) {
  MatrixFile f;
  f.kind = kind;
  f.n_pairs = m.rows() / 2;
  f.matrix = m;
  const std::string text = to_json_text(f);
  return {parse_matrix_file(text), fnv1a64_hex(text), "<memory>"};
}

void collect(const Json& v, std::vector<double>& out) {
  if (v.is_number()) out.push_back(v.get<double>());
  else if (v.is_structured())
    for (const Json& c : v) collect(c, out);
}

std::vector<double> numbers_of_json(const std::string& text) {
  std::vector<double> out;
  collect(Json::parse(text), out);
  return out;
}

std::vector<double> numbers_of_text(const std::string& text) {
  static const std::regex num(R"((?:^|[\s\[,])(-?(?:\d+\.?\d*(?:e[-+]?\d+)?|inf|nan))(?=[\s,\]]|$))");
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    const std::string value = line.substr(eq + 3);
    if (value == "true" || value == "false") continue;
    for (auto it = std::sregex_iterator(value.begin(), value.end(), num); it != std::sregex_iterator(); ++it)
      out.push_back(std::stod((*it)[1].str()));
  }
  return out;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::Parse) == 4);
  CHECK(exit_code_for(ErrorCode::Io) == 4);
  CHECK(exit_code_for(ErrorCode::PivotComplex) == 3);
  CHECK(exit_code_for(ErrorCode::BoostDomain) == 3);
  CHECK(exit_code_for(ErrorCode::ComplexEigenvalues) == 3);
  CHECK(exit_code_for(ErrorCode::NotASymplex) == 2);
  CHECK(exit_code_for(ErrorCode::NotSymplectic) == 2);
}

TEST_CASE("decouple report replays to the reported final matrix") {
  for (std::size_t n : {2u, 4u}) {
    for (TargetForm form : {TargetForm::Block, TargetForm::Hamiltonian, TargetForm::Normal}) {
      const Input in = input_of(random_test_symplex(n, 3));
      DecoupleRequest req;
      req.form = form;
      const Json doc = decouple_report(in, req);
      CHECK(doc["schema"] == kReportSchema);
      CHECK(doc["input"]["digest"] == in.digest);
      CHECK(doc["tolerances"]["step"].get<double>() == 1e-14);
      CHECK(doc["replay_residual"].get<double>() < 1e-12);
      CHECK(replay_report_residual(doc, in.file.matrix) == doc["replay_residual"].get<double>());
      CHECK(doc["final"]["residual"].get<double>() < 1e-9);
      CHECK(doc["branch"] == (n == 2 ? "real" : "jacobi"));
      if (form == TargetForm::Normal) CHECK(doc["form"] == "normal");
      // replaying from the rendered JSON text works too
      const Json reparsed = Json::parse(render_json(doc));
      CHECK(replay_report_residual(reparsed, in.file.matrix) < 1e-12);
    }
  }
}

TEST_CASE("text and JSON renderings carry identical numbers") {
  const Input in = input_of(random_test_symplex(3, 9));
  const Json doc = decouple_report(in, {});
  const auto a = numbers_of_json(render_json(doc));
  const auto b = numbers_of_text(render_text(doc));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("complex 4x4 input picks a branch") {
  EmeqState s;
  s.e = {0.6, 0, 0};
  s.b = {0.8, 0, 0};
  const Json low = decouple_report(input_of(to_matrix(s)), {});
  CHECK(low["branch"] == "complex-low-energy");
  CHECK(low["form"] == "complex-canonical");
  CHECK(low["rho"].get<double>() == doctest::Approx(1.0));
  std::mt19937_64 g(5);
  for (int found = 0; found < 5;) {
    const EmeqState t = testing::random_complex_state(g, testing::ComplexRegion::Intermediate);
    const double e2 = t.energy * t.energy;
    if (e2 < std::max(norm2(t.p), norm2(t.e))) continue;
    ++found;
    const Json mid = decouple_report(input_of(to_matrix(t)), {});
    CHECK(mid["branch"] == "complex-intermediate");
    CHECK(mid["replay_residual"].get<double>() < 1e-12);
  }
}

TEST_CASE("decouple rejects transfer matrices and non-symplices") {
  CHECK_THROWS_AS(decouple_report(input_of(Matrix::identity(4), MatrixKind::Transfer), {}), Error);
  CHECK_THROWS_AS(decouple_report(input_of(gamma(12)), {}), Error);
}

TEST_CASE("check report") {
  const CheckOutcome good = check_report(input_of(random_test_symplex(2, 1)), 1e-10);
  CHECK(good.valid);
  CHECK(good.doc["spectral"]["classification"] == "TwoImaginaryPairs");
  const CheckOutcome bad = check_report(input_of(gamma(12)), 1e-10);
  CHECK_FALSE(bad.valid);
  const CheckOutcome transfer = check_report(input_of(Matrix::identity(6), MatrixKind::Transfer), 1e-10);
  CHECK(transfer.valid);
}

TEST_CASE("tunes report") {
  const Input in = input_of(random_test_symplex(2, 4));
  TunesRequest req;
  req.tau = 0.5;
  req.emittances = std::vector<double>{1.0, 2.0};
  const TunesOutcome out = tunes_report(in, req);
  CHECK_FALSE(out.rejected.has_value());
  CHECK(out.doc["tau"].get<double>() == 0.5);
  CHECK(out.doc["matched_sigma"]["fixed_point_residual"].get<double>() < 1e-8);
  CHECK(out.doc["effective_force"]["reconstruction_residual"].get<double>() < 1e-7);
  CHECK(out.doc["tunes"].size() == 2);

  const TunesOutcome id = tunes_report(input_of(Matrix::identity(4), MatrixKind::Transfer), req);
  REQUIRE(id.rejected.has_value());
  CHECK(*id.rejected == ErrorCode::BranchAmbiguity);
  CHECK(id.doc["tunes"][0]["tune"].get<double>() == 0.0);
}

TEST_CASE("error report") {
  const Json doc = error_report("decouple", Error(ErrorCode::PivotComplex, "x").with_pivot(1, 2));
  CHECK(doc["error"]["code"] == "PivotComplex");
  CHECK(doc["error"]["pivot"][1] == 2);
  const Json boost = error_report("decouple", Error(ErrorCode::BoostDomain, "y", 4));
  CHECK(boost["error"]["step"] == 4);
}

TEST_CASE("bench") {
  BenchRequest req;
  req.n_min = 2;
  req.n_max = 3;
  req.seeds = 4;
  const auto rows = run_bench(req);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mean_steps == 1.0);
  CHECK(rows[0].min_steps == 1);
  CHECK(rows[1].reference == 7.5);
  const std::string csv = bench_csv(rows, false);
  CHECK(csv.rfind("n,seeds,mean_steps,min,max,reference\n2,4,1,1,1,0\n", 0) == 0);
  CHECK(bench_csv(rows, true).rfind("n,seeds,mean_steps,min,max,reference,mean_ms,max_ms\n", 0) == 0);
  CHECK(bench_csv(run_bench(req), false) == csv);
  req.n_min = 1;
  CHECK_THROWS_AS(run_bench(req), Error);
}
