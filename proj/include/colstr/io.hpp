#pragma once

// Ideal input files: a ring header line, then one polynomial per line.
//
//   # comment
//   ring n=12 field=fp:32003 matrix=4x3
//   x1_1*x2_2 - x1_2*x2_1
//
// The matrix key is optional and switches variable names to x<i>_<j>.

#include "colstr/field.hpp"
#include "colstr/linalg.hpp"
#include "colstr/polynomial.hpp"
#include "colstr/text.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace colstr {

using AnyField = std::variant<RationalField, PrimeField>;

/// "q" or "fp:<p>".  Throws ParseError otherwise.
AnyField parse_field(std::string_view spec);
std::string describe(const AnyField& f);

struct RingHeader {
  std::size_t nvars = 0;
  std::string field = "q";
  std::optional<std::pair<std::size_t, std::size_t>> matrix;

  VariableNaming naming() const;
  AnyField coefficient_field() const { return parse_field(field); }
};

/// Accepts "ring n=3 field=q" or the bare "n=3 field=q"; keys in any order.
RingHeader parse_ring_header(std::string_view line);
std::string format_ring_header(const RingHeader& h);

struct IdealText {
  RingHeader ring;
  std::vector<std::pair<std::size_t, std::string>> lines;  // (line number, text)
};

/// Splits a file into header and generator lines, dropping comments and
/// blank lines.  A header given by the caller replaces or supplies the
/// file's own.
IdealText read_ideal_text(std::string_view text, const std::optional<RingHeader>& header = std::nullopt);

template <class F>
std::vector<Polynomial<F>> parse_generators(const IdealText& in, const F& field) {
  std::vector<Polynomial<F>> out;
  auto naming = in.ring.naming();
  for (const auto& [line, text] : in.lines) {
    try {
      out.push_back(parse_poly(text, field, naming));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what(), e.position());
    }
  }
  return out;
}

template <class F>
std::string write_ideal_text(const RingHeader& h, const std::vector<Polynomial<F>>& gens) {
  std::string out = format_ring_header(h) + "\n";
  auto naming = h.naming();
  for (const auto& g : gens) out += format_poly(g, naming) + "\n";
  return out;
}

/// Whitespace- or comma-separated numbers ("3", "-1/2"), one matrix row per
/// line; '#' starts a comment.  Throws ParseError on malformed entries or
/// ragged rows.
std::vector<std::vector<std::pair<std::string, std::string>>> read_numeric_rows(std::string_view text);

/// A comma-separated list of rationals, as given to --diag.
std::vector<std::pair<std::string, std::string>> read_numeric_list(std::string_view text);

template <class F>
Matrix<F> parse_numeric_matrix(std::string_view text, const F& field) {
  auto rows = read_numeric_rows(text);
  if (rows.empty()) throw ParseError("empty matrix", 0);
  Matrix<F> m(field, rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = field.from_string(rows[i][j].first, rows[i][j].second);
  return m;
}

}  // namespace colstr
