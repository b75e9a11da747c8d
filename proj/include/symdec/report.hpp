#pragma once

// Report documents for the command-line front end. Every report is a JSON
// tree (schema "symdec-report/1"); the text rendering is a flattening of the
// same tree, so both carry identical numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symdec/decouple4.hpp"
#include "symdec/error.hpp"
#include "symdec/io.hpp"

namespace symdec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "symdec-report/1";

/// 0 ok, 2 validation, 3 pipeline infeasibility, 4 I/O or parse.
int exit_code_for(ErrorCode code);

struct Input {
  MatrixFile file;
  std::string digest;  // FNV-1a 64 of the file bytes
  std::string path;
};

Input load_input(const std::string& path);

struct CheckOutcome {
  Json doc;
  bool valid = false;
};

CheckOutcome check_report(const Input& in, double tol);

enum class TargetForm { Block, Hamiltonian, Normal };

struct DecoupleRequest {
  TargetForm form = TargetForm::Normal;
  double tol = 1e-12;  // Jacobi convergence
  DecoupleOptions options;
};

/// Throws Error on pipeline failure; see error_report.
Json decouple_report(const Input& in, const DecoupleRequest& req);

struct TunesRequest {
  std::optional<double> tau;
  std::optional<std::vector<double>> emittances;
};

struct TunesOutcome {
  Json doc;
  /// Set when the matched sigma or effective force was rejected.
  std::optional<ErrorCode> rejected;
};

TunesOutcome tunes_report(const Input& in, const TunesRequest& req);

Json error_report(const std::string& command, const Error& e);

/// Rebuilds the final matrix of a decouple report by replaying its
/// transform log on the input; returns max |replayed - reported|.
double replay_report_residual(const Json& report, const Matrix& input);

std::string render_json(const Json& doc);
std::string render_text(const Json& doc);

struct BenchRow {
  std::size_t n = 0;
  std::size_t seeds = 0;
  double mean_steps = 0.0;
  std::size_t min_steps = 0;
  std::size_t max_steps = 0;
  double reference = 0.0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
};

struct BenchRequest {
  std::size_t n_min = 2;
  std::size_t n_max = 12;
  std::size_t seeds = 20;
  std::uint64_t seed_base = 1;
};

/// Seeds seed_base .. seed_base + seeds - 1 for every n.
std::vector<BenchRow> run_bench(const BenchRequest& req);

/// Columns n,seeds,mean_steps,min,max,reference (+ mean_ms,max_ms).
std::string bench_csv(const std::vector<BenchRow>& rows, bool timing);

}  // namespace symdec
