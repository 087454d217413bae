#pragma once

// Multigradings: each variable carries a degree vector in Z^m.  The column
// grading of a generic rows x cols matrix assigns e_j to every entry of
// column j.

#include "colstr/polynomial.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace colstr {

using MultiDegree = std::vector<std::int64_t>;

std::string to_string(const MultiDegree& d);

class GradingSpec {
 public:
  /// degrees[i] is the multidegree of variable i; all of equal length m.
  explicit GradingSpec(std::vector<MultiDegree> degrees);

  static GradingSpec standard(std::size_t nvars);
  /// Variables flattened row-major: index (i, j) -> i * cols + j.
  static GradingSpec columns(std::size_t rows, std::size_t cols);

  std::size_t components() const { return m_; }
  std::size_t nvars() const { return degrees_.size(); }
  const MultiDegree& degree_of_variable(std::size_t i) const { return degrees_[i]; }
  MultiDegree degree_of(const Monomial& mono) const;

 private:
  std::size_t m_;
  std::vector<MultiDegree> degrees_;
};

/// Outcome of a multidegree query.  The zero polynomial has no degree and is
/// reported as Undefined rather than as a default vector.
struct DegreeResult {
  enum class Kind { Homogeneous, NonHomogeneous, Undefined };
  Kind kind;
  MultiDegree degree;  // set only for Homogeneous

  bool homogeneous() const { return kind == Kind::Homogeneous; }
};

template <class F>
DegreeResult multidegree(const Polynomial<F>& f, const GradingSpec& g) {
  if (f.nvars() != g.nvars()) throw std::invalid_argument("grading does not match ring");
  if (f.is_zero()) return {DegreeResult::Kind::Undefined, {}};
  MultiDegree d = g.degree_of(f.terms().front().monomial);
  for (const auto& t : f.terms())
    if (g.degree_of(t.monomial) != d) return {DegreeResult::Kind::NonHomogeneous, {}};
  return {DegreeResult::Kind::Homogeneous, d};
}

/// Sum of the terms of f of multidegree exactly d.
template <class F>
Polynomial<F> component(const Polynomial<F>& f, const GradingSpec& g, const MultiDegree& d) {
  if (f.nvars() != g.nvars()) throw std::invalid_argument("grading does not match ring");
  std::vector<typename Polynomial<F>::Term> kept;
  for (const auto& t : f.terms())
    if (g.degree_of(t.monomial) == d) kept.push_back(t);
  return Polynomial<F>::from_terms(f.field(), f.nvars(), std::move(kept));
}

/// All nonzero homogeneous components keyed by multidegree.
template <class F>
std::map<MultiDegree, Polynomial<F>> components(const Polynomial<F>& f, const GradingSpec& g) {
  std::map<MultiDegree, std::vector<typename Polynomial<F>::Term>> buckets;
  for (const auto& t : f.terms()) buckets[g.degree_of(t.monomial)].push_back(t);
  std::map<MultiDegree, Polynomial<F>> out;
  for (auto& [d, terms] : buckets) out.emplace(d, Polynomial<F>::from_terms(f.field(), f.nvars(), std::move(terms)));
  return out;
}

}  // namespace colstr
