#pragma once

// Matrix files: either a JSON document
//   {"kind": "force"|"transfer", "n": <pairs>, "tau": 1.0, "label": "...",
//    "matrix": [[...], ...]}
// or whitespace-separated text: the dimension 2n, then 2n rows of 2n numbers.
// Lines starting with '#' are comments in the text form.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "symdec/matrix.hpp"

namespace symdec {

enum class MatrixKind { Force, Transfer };

struct MatrixFile {
  MatrixKind kind = MatrixKind::Force;
  std::size_t n_pairs = 0;
  std::optional<double> tau;
  std::string label;
  Matrix matrix;
};

/// Throws Error(Parse) with "line L, column C" in the message.
MatrixFile parse_matrix_file(std::string_view text);

/// Throws Error(Io) when the file cannot be read.
std::string read_file(const std::string& path);
MatrixFile load_matrix_file(const std::string& path);

std::string to_json_text(const MatrixFile& f);

/// FNV-1a 64-bit hash, hex encoded.
std::string fnv1a64_hex(std::string_view bytes);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double v);

}  // namespace symdec
