#include <cmath>
#include <string>

#include "doctest.h"
#include "symdec/error.hpp"
#include "symdec/io.hpp"

using namespace symdec;

namespace {

std::string parse_error_of(const std::string& text) {
  try {
    parse_matrix_file(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("JSON matrix files") {
  const MatrixFile f = parse_matrix_file(
      R"({"kind": "transfer", "n": 1, "tau": 2.5, "label": "drift", "matrix": [[1, 0.5], [0, 1]]})");
  CHECK(f.kind == MatrixKind::Transfer);
  CHECK(f.n_pairs == 1);
  REQUIRE(f.tau.has_value());
  CHECK(*f.tau == 2.5);
  CHECK(f.label == "drift");
  CHECK(f.matrix == Matrix{{1, 0.5}, {0, 1}});

  const MatrixFile g = parse_matrix_file(R"(  {"matrix": [[0, 1], [-1, 0]]})");
  CHECK(g.kind == MatrixKind::Force);
  CHECK_FALSE(g.tau.has_value());

  // roundtrip through the writer
  const MatrixFile h = parse_matrix_file(to_json_text(f));
  CHECK(h.matrix == f.matrix);
  CHECK(h.label == f.label);
  CHECK(*h.tau == *f.tau);
}

TEST_CASE("JSON errors") {
  CHECK(parse_error_of(R"({"matrix": [[1, 2], [3]]})").find("schema: row 1") != std::string::npos);
  CHECK(parse_error_of(R"({"kind": "lens", "matrix": [[1, 0], [0, 1]]})").find("schema") != std::string::npos);
  CHECK(parse_error_of(R"({"n": 2, "matrix": [[1, 0], [0, 1]]})").find("\"n\"") != std::string::npos);
  CHECK(parse_error_of(R"({"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})").find("even") != std::string::npos);
  CHECK(parse_error_of(R"({"matrix": [[1, "x"], [0, 1]]})").find("not a number") != std::string::npos);
  const std::string syntax = parse_error_of("{\n  \"matrix\": [[1, 0], [0, 1]],,\n}");
  CHECK(syntax.find("line 2") != std::string::npos);
}

TEST_CASE("text matrix files") {
  const MatrixFile f = parse_matrix_file("# comment\n4\n0 1 0 0\n-1 0 0 0\n0 0 0 2\n0 0 -2 0 # trailing\n");
  CHECK(f.n_pairs == 2);
  CHECK(f.matrix(2, 3) == 2.0);
  CHECK(f.kind == MatrixKind::Force);
  CHECK(parse_matrix_file("2\n1,0\n0,+1\n").matrix == Matrix::identity(2));
}

TEST_CASE("text errors carry positions") {
  CHECK(parse_error_of("2\n1 0\n0 x\n").find("line 3, column 3") != std::string::npos);
  CHECK(parse_error_of("3\n").find("even") != std::string::npos);
  CHECK(parse_error_of("2\n1 0\n0\n").find("expected 4 entries") != std::string::npos);
  CHECK(parse_error_of("2\n1 0 0\n1\n").find("more than 2") != std::string::npos);
  CHECK(parse_error_of("2\n1 0\n0 1\n5\n").find("extra") != std::string::npos);
  CHECK(parse_error_of("  \n").find("empty") != std::string::npos);
  CHECK(parse_error_of("2\n1 0\n0 inf\n").find("line 3") != std::string::npos);
}

TEST_CASE("file access, digest, number formatting") {
  try {
    read_file("/nonexistent/matrix.json");
    FAIL("expected Io");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-12) == "1e-12");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}
