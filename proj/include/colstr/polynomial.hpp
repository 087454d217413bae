#pragma once

// Sparse multivariate polynomials over a coefficient field.

#include "colstr/field.hpp"
#include "colstr/monomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace colstr {

template <class F>
class Polynomial {
 public:
  using Field = F;
  using Element = typename F::Element;

  struct Term {
    Monomial monomial;
    Element coeff;
  };

  Polynomial(F field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static Polynomial constant(const F& field, std::size_t nvars, const Element& c) {
    Polynomial p(field, nvars);
    if (!F::is_zero(c)) p.terms_.push_back({Monomial(nvars), c});
    return p;
  }
  static Polynomial variable(const F& field, std::size_t nvars, std::size_t index) {
    Polynomial p(field, nvars);
    p.terms_.push_back({Monomial::variable(nvars, index), field.one()});
    return p;
  }
  static Polynomial monomial(const F& field, const Monomial& m, const Element& c) {
    Polynomial p(field, m.nvars());
    if (!F::is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  /// Combines like terms, drops zeros, sorts into canonical order.
  static Polynomial from_terms(const F& field, std::size_t nvars, std::vector<Term> terms);

  const F& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  /// Terms in descending degrevlex order, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  /// Degrevlex leading term; requires a nonzero polynomial.
  const Term& leading_term() const { return terms_.front(); }
  const Element& leading_coefficient() const { return terms_.front().coeff; }

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, static_cast<int>(t.monomial.degree()));
    return d;
  }
  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
    return true;
  }
  bool uses_variable(std::size_t i) const {
    for (const auto& t : terms_)
      if (t.monomial[i]) return true;
    return false;
  }
  unsigned degree_in(std::size_t i) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.monomial[i]);
    return d;
  }
  Element coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.monomial == m) return t.coeff;
    return field_.zero();
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
    return r;
  }
  Polynomial operator+(const Polynomial& o) const { return combine(o, false); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, true); }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Element& c) const {
    if (F::is_zero(c)) return Polynomial(field_, nvars_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
    return r;
  }
  /// Multiplication by c*m preserves the term order.
  Polynomial times_term(const Monomial& m, const Element& c) const {
    if (F::is_zero(c)) return Polynomial(field_, nvars_);
    Polynomial r(*this);
    for (auto& t : r.terms_) {
      t.monomial = t.monomial * m;
      t.coeff = field_.mul(t.coeff, c);
    }
    return r;
  }
  Polynomial pow(unsigned e) const {
    Polynomial r = constant(field_, nvars_, field_.one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  /// Scales so the degrevlex leading coefficient is 1; zero stays zero.
  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(leading_coefficient()));
  }

  /// Evaluates at a full point (one value per ring variable).
  Element evaluate(std::span<const Element> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
    Element acc = field_.zero();
    for (const auto& t : terms_) {
      Element v = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned e = 0; e < t.monomial[i]; ++e) v = field_.mul(v, point[i]);
      acc = field_.add(acc, v);
    }
    return acc;
  }
  /// Evaluates under a partial assignment; throws std::invalid_argument if a
  /// variable of the polynomial is unassigned.
  Element evaluate(const std::map<std::size_t, Element>& assignment) const {
    Element acc = field_.zero();
    for (const auto& t : terms_) {
      Element v = t.coeff;
      for (auto [i, e] : t.monomial.support()) {
        auto it = assignment.find(i);
        if (it == assignment.end()) throw std::invalid_argument("missing assignment for variable " + std::to_string(i));
        for (unsigned k = 0; k < e; ++k) v = field_.mul(v, it->second);
      }
      acc = field_.add(acc, v);
    }
    return acc;
  }

  /// Re-embeds into a ring with new_nvars variables, index i -> i + offset.
  Polynomial embed(std::size_t new_nvars, std::size_t offset) const {
    Polynomial r(field_, new_nvars);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial.embed(new_nvars, offset), t.coeff});
    r.sort_terms();
    return r;
  }
  /// Inverse of embed: keeps variables [offset, offset + new_nvars); throws
  /// if another variable occurs.
  Polynomial restrict_to(std::size_t new_nvars, std::size_t offset) const;

  /// Substitutes variable i -> images[i] (all images in the target ring).
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  /// Terms sorted in descending order for an arbitrary monomial order.
  std::vector<Term> terms_in(const MonomialOrder& order) const {
    std::vector<Term> t = terms_;
    if (order.kind() != OrderKind::DegRevLex)
      std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) { return order.greater(a.monomial, b.monomial); });
    return t;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || !(a.field_ == b.field_) || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !F::equal(a.terms_[i].coeff, b.terms_[i].coeff))
        return false;
    return true;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    require_same_field(field_, o.field_);
    if (nvars_ != o.nvars_) throw DomainError("polynomials live in rings of different size");
  }
  void sort_terms() {
    static const MonomialOrder drl = MonomialOrder::degrevlex();
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return drl.greater(a.monomial, b.monomial); });
  }
  Polynomial combine(const Polynomial& o, bool subtract) const;

  F field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

template <class F>
Polynomial<F> Polynomial<F>::from_terms(const F& field, std::size_t nvars, std::vector<Term> terms) {
  std::unordered_map<Monomial, Element, MonomialHash> acc;
  for (auto& t : terms) {
    if (t.monomial.nvars() != nvars) throw DomainError("term has wrong number of variables");
    auto [it, inserted] = acc.try_emplace(t.monomial, t.coeff);
    if (!inserted) it->second = field.add(it->second, t.coeff);
  }
  Polynomial p(field, nvars);
  for (auto& [m, c] : acc)
    if (!F::is_zero(c)) p.terms_.push_back({m, c});
  p.sort_terms();
  return p;
}

template <class F>
Polynomial<F> Polynomial<F>::combine(const Polynomial& o, bool subtract) const {
  check_compatible(o);
  static const MonomialOrder drl = MonomialOrder::degrevlex();
  Polynomial r(field_, nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = drl.compare(terms_[i].monomial, o.terms_[j].monomial);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      const auto& t = o.terms_[j++];
      r.terms_.push_back({t.monomial, subtract ? field_.neg(t.coeff) : t.coeff});
    } else {
      Element s = subtract ? field_.sub(terms_[i].coeff, o.terms_[j].coeff) : field_.add(terms_[i].coeff, o.terms_[j].coeff);
      if (!F::is_zero(s)) r.terms_.push_back({terms_[i].monomial, s});
      ++i;
      ++j;
    }
  }
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::operator*(const Polynomial& o) const {
  check_compatible(o);
  std::unordered_map<Monomial, Element, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Element c = field_.mul(a.coeff, b.coeff);
      auto [it, inserted] = acc.try_emplace(a.monomial * b.monomial, c);
      if (!inserted) it->second = field_.add(it->second, c);
    }
  Polynomial r(field_, nvars_);
  for (auto& [m, c] : acc)
    if (!F::is_zero(c)) r.terms_.push_back({m, c});
  r.sort_terms();
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::restrict_to(std::size_t new_nvars, std::size_t offset) const {
  Polynomial r(field_, new_nvars);
  for (const auto& t : terms_) {
    std::vector<unsigned> e(new_nvars, 0);
    for (auto [i, k] : t.monomial.support()) {
      if (i < offset || i >= offset + new_nvars) throw DomainError("polynomial uses a variable outside the target ring");
      e[i - offset] = k;
    }
    r.terms_.push_back({Monomial(e), t.coeff});
  }
  r.sort_terms();
  return r;
}

template <class F>
Polynomial<F> Polynomial<F>::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != nvars_) throw std::invalid_argument("substitution needs one image per variable");
  if (images.empty()) return *this;
  Polynomial r(field_, images.front().nvars());
  for (const auto& t : terms_) {
    Polynomial term = constant(field_, r.nvars(), t.coeff);
    for (auto [i, e] : t.monomial.support()) term = term * images[i].pow(e);
    r += term;
  }
  return r;
}

/// Image of a rational polynomial over another field (reduction mod p for a
/// prime field).  Throws DomainError when a denominator vanishes there.
template <class F>
Polynomial<F> change_field(const Polynomial<RationalField>& f, const F& target) {
  std::vector<typename Polynomial<F>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.monomial, target.from_rational(t.coeff)});
  return Polynomial<F>::from_terms(target, f.nvars(), std::move(terms));
}

}  // namespace colstr
