#include "colstr/determinantal.hpp"

#include "colstr/io.hpp"

#include <bit>
#include <map>
#include <stdexcept>

namespace colstr {

GenericMatrix::GenericMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("generic matrix needs positive dimensions");
}

namespace {

template <class F>
class CofactorExpander {
 public:
  explicit CofactorExpander(const SymbolicMatrix<F>& m) : m_(m) {}

  // Determinant of the submatrix on the given row and column sets,
  // expanded along its first column.
  Polynomial<F> det(std::uint64_t rows, std::uint64_t cols) {
    const auto& any = m_.front().front();
    if (rows == 0) return Polynomial<F>::constant(any.field(), any.nvars(), any.field().one());
    auto key = std::make_pair(rows, cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::size_t c = static_cast<std::size_t>(std::countr_zero(cols));
    Polynomial<F> sum(any.field(), any.nvars());
    int k = 0;
    for (std::size_t r = 0; r < m_.size(); ++r) {
      if (!(rows >> r & 1)) continue;
      const auto& e = m_[r][c];
      if (!e.is_zero()) {
        auto term = e * det(rows & ~(1ull << r), cols & ~(1ull << c));
        if (k % 2) sum -= term;
        else sum += term;
      }
      ++k;
    }
    memo_.emplace(key, sum);
    return sum;
  }

 private:
  const SymbolicMatrix<F>& m_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Polynomial<F>> memo_;
};

template <class F>
void check_square(const SymbolicMatrix<F>& m) {
  if (m.empty()) throw std::invalid_argument("determinant of an empty matrix");
  if (m.size() > 63) throw std::invalid_argument("matrix too large for cofactor expansion");
  for (const auto& row : m)
    if (row.size() != m.size()) throw std::invalid_argument("determinant of a non-square matrix");
}

}  // namespace

template <class F>
Polynomial<F> determinant_laplace(const SymbolicMatrix<F>& m, Expansion how) {
  check_square(m);
  const std::size_t n = m.size();
  if (how.index >= n) throw std::invalid_argument("expansion index out of range");
  const std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
  CofactorExpander<F> ex(m);
  const auto& any = m.front().front();
  Polynomial<F> sum(any.field(), any.nvars());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = how.kind == Expansion::Kind::Column ? k : how.index;
    std::size_t c = how.kind == Expansion::Kind::Column ? how.index : k;
    if (m[r][c].is_zero()) continue;
    auto term = m[r][c] * ex.det(all & ~(1ull << r), all & ~(1ull << c));
    if ((r + c) % 2) sum -= term;
    else sum += term;
  }
  return sum;
}

template <class F>
MinorFamily<F> maximal_minors(const GenericMatrix& m, const F& field) {
  if (m.rows() != m.cols() + 1) throw std::invalid_argument("maximal minor families need a (n+1) x n matrix");
  MinorFamily<F> fam{m, {}, {}, {}};
  auto grading = m.column_grading();
  for (std::size_t drop = 0; drop < m.rows(); ++drop) {
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != drop) keep.push_back(r);
    auto f = determinant_laplace(m.submatrix(field, keep));
    auto d = multidegree(f, grading);
    if (d.kind != DegreeResult::Kind::Homogeneous) throw std::logic_error("maximal minor is not column-homogeneous");
    fam.minors.push_back(std::move(f));
    fam.signs.push_back(1);
    fam.multidegrees.push_back(d.degree);
  }
  return fam;
}

template <class F>
LaplaceBound<F> laplace_strength_bound(const MinorFamily<F>& family, std::size_t i) {
  const GenericMatrix& m = family.source;
  if (i >= family.minors.size()) throw std::invalid_argument("minor index out of range");
  const F& field = family.minors[i].field();
  const std::size_t n = m.cols();
  LaplaceBound<F> out;
  if (n == 1) return out;
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (r != i) keep.push_back(r);
  auto sub = m.submatrix(field, keep);
  CofactorExpander<F> ex(sub);
  const std::uint64_t rows = ((1ull << n) - 1) & ~1ull;
  for (std::size_t j = 0; j < n; ++j) {
    auto g = sub[0][j];
    if (j % 2) g = -g;
    out.products.emplace_back(std::move(g), ex.det(rows, ((1ull << n) - 1) & ~(1ull << j)));
  }
  out.bound = static_cast<int>(n) - 1;
  return out;
}

template <class F>
CodimCheck hilbert_burch_codim_check(const MinorFamily<F>& family) {
  const auto& any = family.minors.front();
  Ideal<F> ideal(any.field(), any.nvars(), family.minors);
  CodimCheck c;
  c.codim = codimension(ideal);
  c.passed = c.codim == 2;
  return c;
}

template <class F>
CodimCheck not_regular_by_containment(const MinorFamily<F>& family, std::size_t a, std::size_t b, std::size_t c) {
  const std::size_t k = family.minors.size();
  if (k < 3) throw std::invalid_argument("family too small: three distinct minors are required");
  if (a >= k || b >= k || c >= k) throw std::invalid_argument("minor index out of range");
  if (a == b || b == c || a == c) throw std::invalid_argument("the three minors must be distinct");
  const auto& any = family.minors[a];
  Ideal<F> ideal(any.field(), any.nvars(), {family.minors[a], family.minors[b], family.minors[c]});
  CodimCheck r;
  r.codim = codimension(ideal);
  r.passed = r.codim < 3;
  return r;
}

template <class F>
std::string export_family(const MinorFamily<F>& family, const F& field) {
  RingHeader h;
  h.nvars = family.source.nvars();
  h.field = field.describe();
  h.matrix = std::make_pair(family.source.rows(), family.source.cols());
  std::string out = "# maximal minors of the generic " + std::to_string(family.source.rows()) + "x" +
                    std::to_string(family.source.cols()) + " matrix, f_i = det(delete row i)\n";
  return out + write_ideal_text(h, family.minors);
}

#define COLSTR_INSTANTIATE(F)                                                                  \
  template Polynomial<F> determinant_laplace(const SymbolicMatrix<F>&, Expansion);             \
  template MinorFamily<F> maximal_minors(const GenericMatrix&, const F&);                      \
  template LaplaceBound<F> laplace_strength_bound(const MinorFamily<F>&, std::size_t);         \
  template CodimCheck hilbert_burch_codim_check(const MinorFamily<F>&);                        \
  template CodimCheck not_regular_by_containment(const MinorFamily<F>&, std::size_t, std::size_t, std::size_t); \
  template std::string export_family(const MinorFamily<F>&, const F&);

COLSTR_INSTANTIATE(RationalField)
COLSTR_INSTANTIATE(PrimeField)

}  // namespace colstr
