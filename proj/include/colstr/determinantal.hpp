#pragma once

// Generic matrices, cofactor determinants, maximal-minor families and the
// codimension facts about them.

#include "colstr/grading.hpp"
#include "colstr/groebner.hpp"
#include "colstr/polynomial.hpp"
#include "colstr/text.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace colstr {

/// rows x cols matrix whose (i, j) entry is the ring variable x<i+1>_<j+1>,
/// flattened row-major.
class GenericMatrix {
 public:
  GenericMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return rows_ * cols_; }
  std::size_t variable(std::size_t i, std::size_t j) const { return i * cols_ + j; }
  VariableNaming naming() const { return VariableNaming::matrix(rows_, cols_); }
  GradingSpec column_grading() const { return GradingSpec::columns(rows_, cols_); }

  template <class F>
  Polynomial<F> entry(const F& field, std::size_t i, std::size_t j) const {
    return Polynomial<F>::variable(field, nvars(), variable(i, j));
  }

  /// The entries of the rows listed in `keep`, as a symbolic matrix.
  template <class F>
  std::vector<std::vector<Polynomial<F>>> submatrix(const F& field, const std::vector<std::size_t>& keep) const {
    std::vector<std::vector<Polynomial<F>>> m;
    for (auto i : keep) {
      std::vector<Polynomial<F>> row;
      for (std::size_t j = 0; j < cols_; ++j) row.push_back(entry(field, i, j));
      m.push_back(std::move(row));
    }
    return m;
  }

 private:
  std::size_t rows_, cols_;
};

template <class F>
using SymbolicMatrix = std::vector<std::vector<Polynomial<F>>>;

struct Expansion {
  enum class Kind { Row, Column };
  Kind kind = Kind::Column;
  std::size_t index = 0;
};

/// Cofactor expansion along the chosen row or column at the top level;
/// sub-minors are expanded along their first column with memoization.
/// Throws std::invalid_argument for non-square or empty input.
template <class F>
Polynomial<F> determinant_laplace(const SymbolicMatrix<F>& m, Expansion how = {});

/// The maximal minors f_i = det(delete row i) of a (cols + 1) x cols generic
/// matrix.  No alternating signs are applied, so signs are all +1.
template <class F>
struct MinorFamily {
  GenericMatrix source;
  std::vector<Polynomial<F>> minors;
  std::vector<int> signs;
  std::vector<MultiDegree> multidegrees;
};

template <class F>
MinorFamily<F> maximal_minors(const GenericMatrix& m, const F& field);

/// Sum of products witnessing strength <= n - 1 for an n x n minor.
template <class F>
struct LaplaceBound {
  std::optional<int> bound;  // nullopt: a linear form has no decomposition
  std::vector<std::pair<Polynomial<F>, Polynomial<F>>> products;

  Polynomial<F> reconstruct(const F& field, std::size_t nvars) const {
    Polynomial<F> sum(field, nvars);
    for (const auto& [g, h] : products) sum += g * h;
    return sum;
  }
};

/// First-row cofactor expansion of minor i of the family: products
/// (+-x_{r,j}) * (complementary minor), one per column.
template <class F>
LaplaceBound<F> laplace_strength_bound(const MinorFamily<F>& family, std::size_t i);

struct CodimCheck {
  int codim = 0;
  bool passed = false;
};

/// codim of the ideal of all maximal minors, which should be 2.
template <class F>
CodimCheck hilbert_burch_codim_check(const MinorFamily<F>& family);

/// codim of <f_a, f_b, f_c> for three distinct members; passed means the
/// codimension is below 3, so the three minors are not a regular sequence.
/// Throws std::invalid_argument for families with fewer than three members
/// or repeated indices.
template <class F>
CodimCheck not_regular_by_containment(const MinorFamily<F>& family, std::size_t a, std::size_t b, std::size_t c);

/// Writes the family as an ideal input file.
template <class F>
std::string export_family(const MinorFamily<F>& family, const F& field);

}  // namespace colstr
