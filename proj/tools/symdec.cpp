#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symdec/report.hpp"

namespace {

using symdec::Json;

int emit(const Json& doc, bool text) {
  std::cout << (text ? symdec::render_text(doc) : symdec::render_json(doc));
  return 0;
}

int fail(const std::string& command, const symdec::Error& e, bool text) {
  emit(symdec::error_report(command, e), text);
  std::cerr << "symdec " << command << ": " << e.what() << "\n";
  return symdec::exit_code_for(e.code());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic decoupling of linear Hamiltonian systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "symdec 0.1.0");

  bool text = false;

  std::string file;
  double tol = 1e-10;
  auto* check = app.add_subcommand("check", "Validate a matrix file and print its invariants");
  check->add_option("file", file, "Matrix file (JSON or text)")->required();
  check->add_option("--tol", tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  check->add_flag("--text", text, "Flattened key = value output instead of JSON");

  std::string form = "normal";
  double jtol = 1e-12;
  double step_tol = 1e-14;
  auto* dec = app.add_subcommand("decouple", "Decouple a force matrix into 2x2 blocks");
  dec->add_option("file", file, "Force matrix file")->required();
  dec->add_option("--form", form, "Target form")
      ->check(CLI::IsMember({"block", "hamiltonian", "normal"}));
  dec->add_option("--tol", jtol, "Jacobi convergence tolerance")->check(CLI::PositiveNumber);
  dec->add_option("--step-tol", step_tol, "Skip elementary steps with smaller angles");
  dec->add_flag("--text", text);

  std::optional<double> tau;
  std::vector<double> emittances;
  auto* tunes = app.add_subcommand("tunes", "Tunes, matched sigma and effective force of a one-turn map");
  tunes->add_option("file", file, "Transfer matrix, or force matrix integrated over tau")->required();
  tunes->add_option("--tau", tau, "Integration time for force input");
  tunes->add_option("--emittances", emittances, "One emittance per pair")->delimiter(',');
  tunes->add_flag("--text", text);

  symdec::BenchRequest bench_req;
  bool timing = false;
  bool csv = false;
  auto* bench = app.add_subcommand("bench", "Pivot-step statistics on random symplices");
  bench->add_option("--n-min", bench_req.n_min)->check(CLI::Range(2, 16));
  bench->add_option("--n-max", bench_req.n_max)->check(CLI::Range(2, 16));
  bench->add_option("--seeds", bench_req.seeds)->check(CLI::PositiveNumber);
  bench->add_option("--seed-base", bench_req.seed_base);
  bench->add_flag("--csv", csv, "CSV output");
  bench->add_flag("--timing", timing, "Add wall-clock columns (not reproducible)");
  bench->add_flag("--text", text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "bench") {
      const auto rows = symdec::run_bench(bench_req);
      if (csv) {
        std::cout << symdec::bench_csv(rows, timing);
        return 0;
      }
      Json doc;
      doc["schema"] = symdec::kReportSchema;
      doc["command"] = "bench";
      doc["seed_base"] = bench_req.seed_base;
      Json arr = Json::array();
      for (const auto& r : rows) {
        Json row = {{"n", r.n},           {"seeds", r.seeds},         {"mean_steps", r.mean_steps},
                    {"min", r.min_steps}, {"max", r.max_steps},       {"reference", r.reference}};
        if (timing) {
          row["mean_ms"] = r.mean_ms;
          row["max_ms"] = r.max_ms;
        }
        arr.push_back(std::move(row));
      }
      doc["rows"] = std::move(arr);
      return emit(doc, text);
    }

    const symdec::Input in = symdec::load_input(file);
    if (command == "check") {
      const auto out = symdec::check_report(in, tol);
      emit(out.doc, text);
      return out.valid ? 0 : 2;
    }
    if (command == "decouple") {
      symdec::DecoupleRequest req;
      req.form = form == "block"         ? symdec::TargetForm::Block
                 : form == "hamiltonian" ? symdec::TargetForm::Hamiltonian
                                         : symdec::TargetForm::Normal;
      req.tol = jtol;
      req.options.step_tol = step_tol;
      return emit(symdec::decouple_report(in, req), text);
    }
    symdec::TunesRequest req;
    req.tau = tau;
    if (!emittances.empty()) req.emittances = emittances;
    const auto out = symdec::tunes_report(in, req);
    emit(out.doc, text);
    return out.rejected ? symdec::exit_code_for(*out.rejected) : 0;
  } catch (const symdec::Error& e) {
    return fail(command, e, text);
  }
}
