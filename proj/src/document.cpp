#include "otro/document.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace otro {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 0;
  std::size_t column_offset = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line, column_offset + pos + 1, message);
  }
  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_space();
    return pos >= text.size();
  }
  void expect(char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  double number() {
    skip_space();
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') ++begin;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail("expected a number");
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
  }
};

std::size_t parse_size(std::string_view value, std::size_t line, std::size_t column) {
  value = trim(value);
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ParseError(line, column, "expected a nonnegative integer, got '" + std::string(value) + "'");
  }
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view value, std::size_t line,
                                         std::size_t column) {
  std::vector<std::size_t> out;
  std::istringstream in{std::string(value)};
  std::string token;
  while (in >> token) out.push_back(parse_size(token, line, column));
  return out;
}

struct RawMatrix {
  std::vector<Complex> values;
  std::size_t line;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line), column_(column) {}

std::vector<Complex> parse_pairs(std::string_view text, std::size_t line,
                                 std::size_t column_offset) {
  Cursor c{text, 0, line, column_offset};
  std::vector<Complex> out;
  while (!c.at_end()) {
    c.expect('[');
    const double re = c.number();
    c.expect(',');
    const double im = c.number();
    c.expect(']');
    out.emplace_back(re, im);
  }
  return out;
}

CMatrix parse_matrix(std::string_view text, std::size_t d) {
  const std::vector<Complex> values = parse_pairs(text, 0);
  if (values.size() != d * d) {
    throw ParseError(0, 1, "expected " + std::to_string(d * d) + " pairs, got " +
                               std::to_string(values.size()));
  }
  CVector v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
  return unvec(v, d);
}

InputDocument parse_document(std::string_view text) {
  InputDocument doc;
  bool have_kind = false;
  bool have_dim = false;
  bool have_points = false;
  bool have_codomain = false;
  std::vector<RawMatrix> generators;
  std::vector<RawMatrix> rows;
  std::size_t kind_line = 0;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, 1, "expected 'key: value'");
    }
    const std::string key(trim(line.substr(0, colon)));
    const std::string_view value = line.substr(colon + 1);
    const std::size_t lead = std::min(value.find_first_not_of(" \t"), value.size());
    const std::size_t value_column = colon + 2 + lead;  // 1-based, first character of the value

    if (key == "kind") {
      const std::string_view k = trim(value);
      if (k == "tro") doc.kind = DocumentKind::tro;
      else if (k == "commutative") doc.kind = DocumentKind::commutative;
      else if (k == "map") doc.kind = DocumentKind::map;
      else throw ParseError(line_no, value_column, "unknown kind '" + std::string(k) + "'");
      have_kind = true;
      kind_line = line_no;
    } else if (key == "tolerance") {
      const std::string v(trim(value));
      char* endp = nullptr;
      const double tol = std::strtod(v.c_str(), &endp);
      if (v.empty() || *endp != '\0' || !(tol > 0.0)) {
        throw ParseError(line_no, value_column, "tolerance must be a positive number");
      }
      doc.tolerance = tol;
    } else if (key == "dim") {
      doc.dim = parse_size(value, line_no, value_column);
      if (doc.dim == 0) throw ParseError(line_no, value_column, "dim must be positive");
      have_dim = true;
    } else if (key == "generator") {
      generators.push_back({parse_pairs(value, line_no, colon + 1), line_no});
    } else if (key == "codomain_dim") {
      doc.codomain_dim = parse_size(value, line_no, value_column);
      if (doc.codomain_dim == 0) throw ParseError(line_no, value_column, "codomain_dim must be positive");
      have_codomain = true;
    } else if (key == "builtin") {
      doc.builtin = std::string(trim(value));
      if (doc.builtin != "identity" && doc.builtin != "transpose" && doc.builtin != "negate" &&
          doc.builtin != "trace" && doc.builtin != "diagonal") {
        throw ParseError(line_no, value_column, "unknown builtin map '" + doc.builtin + "'");
      }
    } else if (key == "row") {
      rows.push_back({parse_pairs(value, line_no, colon + 1), line_no});
    } else if (key == "points") {
      doc.points = parse_size(value, line_no, value_column);
      if (doc.points > kMaxPoints) throw ParseError(line_no, value_column, "at most 30 points");
      have_points = true;
    } else if (key == "tau") {
      doc.tau = parse_size_list(value, line_no, value_column);
    } else if (key == "topology") {
      doc.topology = std::string(trim(value));
      if (doc.topology != "discrete" && doc.topology != "indiscrete" && doc.topology != "explicit") {
        throw ParseError(line_no, value_column, "topology must be discrete, indiscrete or explicit");
      }
    } else if (key == "open") {
      PointSet s = 0;
      for (std::size_t p : parse_size_list(value, line_no, value_column)) {
        if (p >= kMaxPoints) throw ParseError(line_no, value_column, "point index out of range");
        s |= PointSet{1} << p;
      }
      doc.opens.push_back(s);
    } else {
      throw ParseError(line_no, 1, "unknown key '" + key + "'");
    }
    if (end == text.size()) break;
  }

  if (!have_kind) throw ParseError(line_no, 1, "missing 'kind'");

  if (doc.kind == DocumentKind::commutative) {
    if (!have_points) throw ParseError(kind_line, 1, "commutative document needs 'points'");
    if (doc.tau.size() != doc.points) {
      throw ParseError(kind_line, 1, "'tau' must list " + std::to_string(doc.points) + " images");
    }
    for (PointSet s : doc.opens) {
      if (doc.points < 32 && (s >> doc.points) != 0) {
        throw ParseError(kind_line, 1, "open set uses a point outside the space");
      }
    }
    return doc;
  }

  if (!have_dim) throw ParseError(kind_line, 1, "document needs 'dim'");
  const std::size_t d = doc.dim;
  for (const auto& g : generators) {
    if (g.values.size() != d * d) {
      throw ParseError(g.line, 1, "generator has " + std::to_string(g.values.size()) +
                                      " entries; expected " + std::to_string(d * d));
    }
    CVector v(static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d * d; ++i) v(static_cast<Eigen::Index>(i)) = g.values[i];
    doc.generators.push_back(unvec(v, d));
  }

  if (doc.kind == DocumentKind::map) {
    if (!have_codomain) doc.codomain_dim = d;
    if (!rows.empty() && !doc.builtin.empty()) {
      throw ParseError(rows.front().line, 1, "give either 'builtin' or 'row' lines, not both");
    }
    if (rows.empty() && doc.builtin.empty()) {
      throw ParseError(kind_line, 1, "map document needs 'builtin' or 'row' lines");
    }
    if (!doc.builtin.empty() && doc.codomain_dim != d) {
      throw ParseError(kind_line, 1, "builtin maps need codomain_dim equal to dim");
    }
    if (!rows.empty()) {
      const std::size_t dc = doc.codomain_dim;
      if (rows.size() != dc * dc) {
        throw ParseError(rows.back().line, 1, "expected " + std::to_string(dc * dc) + " 'row' lines, got " +
                                                  std::to_string(rows.size()));
      }
      CMatrix m(static_cast<Eigen::Index>(dc * dc), static_cast<Eigen::Index>(d * d));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].values.size() != d * d) {
          throw ParseError(rows[r].line, 1, "row has " + std::to_string(rows[r].values.size()) +
                                                " entries; expected " + std::to_string(d * d));
        }
        for (std::size_t c = 0; c < d * d; ++c) {
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r].values[c];
        }
      }
      doc.map_matrix = std::move(m);
    }
  } else if (!rows.empty() || !doc.builtin.empty()) {
    throw ParseError(kind_line, 1, "'row' and 'builtin' belong to map documents");
  }
  return doc;
}

std::string format_real(double x) {
  if (std::abs(x) < 1e-13) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

std::string format_matrix(const CMatrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!out.empty()) out += ' ';
      out += '[' + format_real(m(i, j).real()) + ',' + format_real(m(i, j).imag()) + ']';
    }
  }
  return out;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void ReportWriter::field(std::string_view key, std::string_view value) {
  text_.append(key);
  text_.append(": ");
  text_.append(value);
  text_.push_back('\n');
}

void ReportWriter::field(std::string_view key, std::size_t value) {
  field(key, std::string_view(std::to_string(value)));
}

void ReportWriter::field(std::string_view key, bool value) {
  field(key, std::string_view(value ? "true" : "false"));
}

void ReportWriter::field(std::string_view key, double value) {
  field(key, std::string_view(format_real(value)));
}

void ReportWriter::check(std::string_view name, bool passed) {
  field(std::string("check.") + std::string(name), std::string_view(passed ? "pass" : "fail"));
  all_passed_ = all_passed_ && passed;
}

std::string ReportWriter::finish() {
  field("status", std::string_view(all_passed_ ? "pass" : "fail"));
  return text_;
}

}  // namespace otro
