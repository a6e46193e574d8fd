#pragma once

/// \file document.hpp
/// Line-oriented input documents and structured-text reports.
///
/// Input grammar (one `key: value` per line, `#` starts a comment):
///
///   kind: tro | commutative | map
///   tolerance: <float>                      optional
///
///   # kind tro / map
///   dim: <d>
///   generator: [re,im] ... (d*d pairs, row-major)   repeatable
///
///   # kind map
///   codomain_dim: <d'>                      optional, defaults to d
///   builtin: identity | transpose | negate | trace | diagonal
///   row: [re,im] ... (d*d pairs)            d'*d' rows, instead of builtin
///
///   # kind commutative
///   points: <n>
///   tau: <i_0> ... <i_{n-1}>
///   topology: discrete | indiscrete | explicit
///   open: <point> ...                       repeatable, for explicit
///
/// Matrices in reports use the same `[re,im]` row-major encoding.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "otro/commutative.hpp"
#include "otro/linalg.hpp"

namespace otro {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class DocumentKind { tro, commutative, map };

struct InputDocument {
  DocumentKind kind = DocumentKind::tro;
  std::optional<double> tolerance;

  std::size_t dim = 0;
  std::vector<CMatrix> generators;

  std::size_t codomain_dim = 0;
  std::string builtin;
  std::optional<CMatrix> map_matrix;

  std::size_t points = 0;
  std::vector<std::size_t> tau;
  std::string topology = "discrete";
  std::vector<PointSet> opens;
};

InputDocument parse_document(std::string_view text);

/// Parses `[re,im] [re,im] ...` into exactly `count` values. Columns in
/// diagnostics are 1-based offsets into `text` plus `column_offset`.
std::vector<Complex> parse_pairs(std::string_view text, std::size_t line,
                                 std::size_t column_offset = 0);

/// Square matrix from a pair list of length d*d.
CMatrix parse_matrix(std::string_view text, std::size_t d);

/// `[re,im]` row-major pairs with a fixed number of significant digits;
/// negative zero and values below 1e-13 in magnitude print as 0.
std::string format_matrix(const CMatrix& m);
std::string format_real(double x);

/// FNV-1a, lowercase hex.
std::string digest(std::string_view text);

/// Accumulates `key: value` lines in insertion order.
class ReportWriter {
 public:
  void field(std::string_view key, std::string_view value);
  void field(std::string_view key, const char* value) { field(key, std::string_view(value)); }
  void field(std::string_view key, std::size_t value);
  void field(std::string_view key, bool value);
  void field(std::string_view key, double value);
  /// Records a named check; a failing check makes the report fail.
  void check(std::string_view name, bool passed);

  [[nodiscard]] bool all_passed() const { return all_passed_; }
  /// Appends the final status line and returns the text.
  [[nodiscard]] std::string finish();

 private:
  std::string text_;
  bool all_passed_ = true;
};

}  // namespace otro
