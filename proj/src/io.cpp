#include "symdec/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "symdec/error.hpp"

namespace symdec {

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void parse_error(Position p, const std::string& what) {
  throw Error(ErrorCode::Parse,
              "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": " + what);
}

struct Token {
  std::string_view text;
  Position pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  Position p;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      ++p.line;
      p.column = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      ++p.column;
      ++i;
      continue;
    }
    const std::size_t start = i;
    const Position at = p;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
           text[i] != '\n' && text[i] != ',') {
      ++i;
      ++p.column;
    }
    out.push_back({text.substr(start, i - start), at});
  }
  return out;
}

double to_number(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    parse_error(t.pos, "expected a number, found '" + std::string(t.text) + "'");
  if (!std::isfinite(v)) parse_error(t.pos, "non-finite entry");
  return v;
}

MatrixFile parse_text(std::string_view text) {
  const std::vector<Token> tokens = tokenize(text);
  if (tokens.empty()) parse_error(position_of(text, text.size()), "empty matrix file");
  const double dim_value = to_number(tokens[0]);
  if (dim_value < 2 || std::floor(dim_value) != dim_value ||
      static_cast<std::size_t>(dim_value) % 2 != 0)
    parse_error(tokens[0].pos, "dimension must be a positive even integer");
  const std::size_t dim = static_cast<std::size_t>(dim_value);
  const std::size_t expected = dim * dim;
  if (tokens.size() - 1 < expected)
    parse_error(position_of(text, text.size()),
                "expected " + std::to_string(expected) + " entries, found " +
                    std::to_string(tokens.size() - 1));
  if (tokens.size() - 1 > expected) parse_error(tokens[expected + 1].pos, "unexpected extra entry");

  MatrixFile f;
  f.n_pairs = dim / 2;
  f.matrix = Matrix(dim, dim);
  for (std::size_t k = 0; k < expected; ++k) {
    const Token& t = tokens[k + 1];
    if (k % dim == 0 && k > 0 && t.pos.line == tokens[k].pos.line)
      parse_error(t.pos, "row " + std::to_string(k / dim) + " has more than " + std::to_string(dim) +
                             " entries");
    f.matrix(k / dim, k % dim) = to_number(t);
  }
  return f;
}

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::Parse, "schema: " + what);
}

MatrixFile parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(position_of(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");

  MatrixFile f;
  if (doc.contains("kind")) {
    const auto& k = doc["kind"];
    if (!k.is_string()) schema_error("\"kind\" must be a string");
    const std::string kind = k.get<std::string>();
    if (kind == "force") f.kind = MatrixKind::Force;
    else if (kind == "transfer") f.kind = MatrixKind::Transfer;
    else schema_error("\"kind\" must be \"force\" or \"transfer\", got \"" + kind + "\"");
  }
  if (doc.contains("tau")) {
    if (!doc["tau"].is_number()) schema_error("\"tau\" must be a number");
    f.tau = doc["tau"].get<double>();
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) schema_error("\"label\" must be a string");
    f.label = doc["label"].get<std::string>();
  }
  if (!doc.contains("matrix") || !doc["matrix"].is_array())
    schema_error("\"matrix\" must be an array of rows");
  const auto& rows = doc["matrix"];
  const std::size_t dim = rows.size();
  if (dim == 0 || dim % 2 != 0) schema_error("matrix dimension must be positive and even");
  if (doc.contains("n")) {
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() * 2 != dim)
      schema_error("\"n\" must equal half the matrix dimension");
  }
  f.n_pairs = dim / 2;
  f.matrix = Matrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim)
      schema_error("row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) {
      if (!rows[i][j].is_number())
        schema_error("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not a number");
      const double v = rows[i][j].get<double>();
      if (!std::isfinite(v)) schema_error("non-finite entry");
      f.matrix(i, j) = v;
    }
  }
  return f;
}

}  // namespace

MatrixFile parse_matrix_file(std::string_view text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') continue;
    return c == '{' ? parse_json(text) : parse_text(text);
  }
  parse_error(position_of(text, text.size()), "empty matrix file");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read failed: " + path);
  return ss.str();
}

MatrixFile load_matrix_file(const std::string& path) { return parse_matrix_file(read_file(path)); }

std::string to_json_text(const MatrixFile& f) {
  nlohmann::ordered_json doc;
  doc["kind"] = f.kind == MatrixKind::Force ? "force" : "transfer";
  doc["n"] = f.n_pairs;
  if (f.tau) doc["tau"] = *f.tau;
  if (!f.label.empty()) doc["label"] = f.label;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < f.matrix.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < f.matrix.cols(); ++j) row.push_back(f.matrix(i, j));
    rows.push_back(row);
  }
  doc["matrix"] = rows;
  return doc.dump(2) + "\n";
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace symdec
