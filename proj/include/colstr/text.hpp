#pragma once

// Polynomial text format.
//
//   poly    := term (('+'|'-') term)*        (a leading sign is accepted)
//   term    := coeff ('*' varpow)* | varpow ('*' varpow)*
//   varpow  := var ('^' uint)?
//   var     := 'x' uint ('_' uint)?
//   coeff   := int ('/' uint)?
//
// Whitespace between tokens is ignored.  Canonical output lists terms in
// descending degrevlex order and writes "a - b" rather than "a + -b".

#include "colstr/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace colstr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Maps ring variables to names: x1..xn for flat rings, x<i>_<j> (1-based,
/// flattened row-major) for matrix rings.
class VariableNaming {
 public:
  static VariableNaming flat(std::size_t nvars) { return VariableNaming(nvars, 0, 0); }
  static VariableNaming matrix(std::size_t rows, std::size_t cols) { return VariableNaming(rows * cols, rows, cols); }

  std::size_t nvars() const { return nvars_; }
  bool is_matrix() const { return rows_ > 0; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::string name(std::size_t index) const;
  /// Index for "x<a>" (flat) or "x<a>_<b>" (matrix); nullopt if unknown.
  std::optional<std::size_t> index_of(std::size_t a, std::optional<std::size_t> b) const;

 private:
  VariableNaming(std::size_t n, std::size_t r, std::size_t c) : nvars_(n), rows_(r), cols_(c) {}
  std::size_t nvars_, rows_, cols_;
};

template <class F>
Polynomial<F> parse_poly(std::string_view text, const F& field, const VariableNaming& naming);

template <class F>
std::string format_poly(const Polynomial<F>& f, const VariableNaming& naming);

std::string format_monomial(const Monomial& m, const VariableNaming& naming);

}  // namespace colstr
