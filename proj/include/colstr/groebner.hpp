#pragma once

// Buchberger's algorithm and the ideal-theoretic queries built on it:
// normal forms, membership, dimension, intersection, quotient and the two
// regular-sequence tests.

#include "colstr/polynomial.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace colstr {

class NonHomogeneousError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ideal given by generators.  Zero generators are dropped, so the zero
/// ideal has an empty generator list.
template <class F>
class Ideal {
 public:
  using Poly = Polynomial<F>;

  Ideal(F field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}
  Ideal(F field, std::size_t nvars, const std::vector<Poly>& gens) : Ideal(std::move(field), nvars) {
    for (const auto& g : gens) add(g);
  }
  explicit Ideal(const std::vector<Poly>& gens) : Ideal(gens.at(0).field(), gens.at(0).nvars(), gens) {}

  void add(const Poly& g) {
    require_same_field(field_, g.field());
    if (g.nvars() != nvars_) throw DomainError("generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(g);
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Poly>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_homogeneous() const {
    for (const auto& g : gens_)
      if (!g.is_homogeneous()) return false;
    return true;
  }

 private:
  F field_;
  std::size_t nvars_;
  std::vector<Poly> gens_;
};

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis: monic elements, sorted by ascending leading
/// monomial under the basis order.
template <class F>
class GroebnerBasis {
 public:
  using Poly = Polynomial<F>;

  GroebnerBasis(F field, std::size_t nvars, MonomialOrder order, std::vector<Poly> elements, bool reduced);

  const F& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Poly>& elements() const { return elements_; }
  const std::vector<Monomial>& leading_monomials() const { return leads_; }
  bool reduced() const { return reduced_; }
  bool is_unit() const { return elements_.size() == 1 && elements_.front().is_constant(); }
  bool is_zero() const { return elements_.empty(); }

  /// Remainder with no term divisible by a leading monomial of the basis.
  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  Ideal<F> as_ideal() const { return Ideal<F>(field_, nvars_, elements_); }

 private:
  F field_;
  std::size_t nvars_;
  MonomialOrder order_;
  std::vector<Poly> elements_;
  std::vector<Monomial> leads_;
  bool reduced_;
};

template <class F>
GroebnerBasis<F> buchberger(const Ideal<F>& ideal, MonomialOrder order = MonomialOrder::degrevlex(),
                            BuchbergerStats* stats = nullptr);

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& basis) {
  return basis.normal_form(f);
}

/// True iff every S-polynomial of the basis reduces to zero modulo it.
template <class F>
bool satisfies_buchberger_criterion(const GroebnerBasis<F>& basis);

/// Krull dimension of R/I via maximal independent variable sets of the
/// leading-term ideal; -1 for the unit ideal.
template <class F>
int dimension(const Ideal<F>& ideal);

/// n - dimension.  With require_homogeneous, throws NonHomogeneousError on
/// inhomogeneous generators.  The unit ideal reports n + 1.
template <class F>
int codimension(const Ideal<F>& ideal, bool require_homogeneous = true);

template <class F>
Ideal<F> ideal_intersection(const Ideal<F>& a, const Ideal<F>& b);

/// (I : f) for nonzero f.
template <class F>
Ideal<F> ideal_quotient(const Ideal<F>& ideal, const Polynomial<F>& f);

/// True iff every generator of sub lies in super.
template <class F>
bool ideal_contains(const Ideal<F>& super, const Ideal<F>& sub);

template <class F>
bool ideals_equal(const Ideal<F>& a, const Ideal<F>& b) {
  return ideal_contains(a, b) && ideal_contains(b, a);
}

/// Regular-sequence test by codimension: codim <fs> == |fs|.
/// Throws std::invalid_argument for zero, constant or inhomogeneous input.
template <class F>
bool is_regular_sequence_codim(const std::vector<Polynomial<F>>& fs);

/// Regular-sequence test from the definition: <fs> proper and each f_{i+1}
/// a nonzerodivisor modulo <f_1..f_i>, checked as (I_i : f_{i+1}) == I_i.
template <class F>
bool is_regular_sequence_direct(const std::vector<Polynomial<F>>& fs);

template <class F>
struct PairRegularityReport {
  Polynomial<F> gcd;
  bool gcd_regular;    // gcd is a unit
  bool codim_regular;  // codim <f1, f2> == 2
  bool agree;
};

template <class F>
PairRegularityReport<F> regular_pair_gcd_check(const Polynomial<F>& f1, const Polynomial<F>& f2);

}  // namespace colstr
