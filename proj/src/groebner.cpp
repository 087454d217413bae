#include "colstr/groebner.hpp"

#include "colstr/gcd.hpp"
#include "colstr/kernels.hpp"

#include <algorithm>
#include <limits>

namespace colstr {

namespace {

// Working representation: terms in descending order under a fixed order.
template <class F>
using Terms = std::vector<typename Polynomial<F>::Term>;

template <class F>
struct Engine {
  const F& field;
  std::size_t nvars;
  MonomialOrder order;

  Terms<F> ordered(const Polynomial<F>& p) const { return p.terms_in(order); }

  Polynomial<F> to_poly(Terms<F> t) const { return Polynomial<F>::from_terms(field, nvars, std::move(t)); }

  /// a[from..] - c * m * g, merged in order.
  Terms<F> sub_mul(const Terms<F>& a, std::size_t from, const typename F::Element& c, const Monomial& m,
                   const Terms<F>& g) const {
    Terms<F> out;
    out.reserve(a.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < a.size() || j < g.size()) {
      if (j == g.size()) {
        out.push_back(a[i++]);
        continue;
      }
      Monomial gm = g[j].monomial * m;
      int cmp = i == a.size() ? -1 : order.compare(a[i].monomial, gm);
      if (cmp > 0) {
        out.push_back(a[i++]);
      } else if (cmp < 0) {
        out.push_back({std::move(gm), field.neg(field.mul(c, g[j].coeff))});
        ++j;
      } else {
        auto v = field.sub(a[i].coeff, field.mul(c, g[j].coeff));
        if (!F::is_zero(v)) out.push_back({a[i].monomial, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_monic(Terms<F>& t) const {
    if (t.empty() || F::is_one(t.front().coeff)) return;
    auto inv = field.inv(t.front().coeff);
    for (auto& term : t) term.coeff = field.mul(term.coeff, inv);
  }

  /// Full reduction of f by the polynomials basis[idx] (all monic).
  Terms<F> reduce(Terms<F> p, const std::vector<Terms<F>>& basis, const std::vector<std::size_t>& idx,
                  std::size_t skip = std::numeric_limits<std::size_t>::max()) const {
    Terms<F> rem;
    std::size_t pos = 0;
    while (pos < p.size()) {
      const auto& lt = p[pos];
      const Terms<F>* divisor = nullptr;
      for (auto k : idx) {
        if (k == skip) continue;
        if (basis[k].front().monomial.divides(lt.monomial)) {
          divisor = &basis[k];
          break;
        }
      }
      if (!divisor) {
        rem.push_back(lt);
        ++pos;
        continue;
      }
      Monomial m = divisor->front().monomial.quotient_of(lt.monomial);
      auto c = lt.coeff;
      p = sub_mul(p, pos, c, m, *divisor);
      pos = 0;
    }
    return rem;
  }

  Terms<F> s_polynomial(const Terms<F>& f, const Terms<F>& g) const {
    Monomial l = f.front().monomial.lcm(g.front().monomial);
    Monomial mf = f.front().monomial.quotient_of(l);
    Monomial mg = g.front().monomial.quotient_of(l);
    Terms<F> a;
    a.reserve(f.size());
    for (const auto& t : f) a.push_back({t.monomial * mf, t.coeff});
    return sub_mul(a, 0, field.one(), mg, g);
  }
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

template <class F>
GroebnerBasis<F>::GroebnerBasis(F field, std::size_t nvars, MonomialOrder order, std::vector<Poly> elements,
                                bool reduced)
    : field_(std::move(field)), nvars_(nvars), order_(order), elements_(std::move(elements)), reduced_(reduced) {
  for (const auto& e : elements_) leads_.push_back(e.terms_in(order_).front().monomial);
}

template <class F>
Polynomial<F> GroebnerBasis<F>::normal_form(const Poly& f) const {
  require_same_field(field_, f.field());
  if (f.nvars() != nvars_) throw DomainError("polynomial lives in a different ring");
  Engine<F> eng{field_, nvars_, order_};
  std::vector<Terms<F>> basis;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    basis.push_back(eng.ordered(elements_[k]));
    eng.make_monic(basis.back());
    idx.push_back(k);
  }
  return eng.to_poly(eng.reduce(eng.ordered(f), basis, idx));
}

template <class F>
GroebnerBasis<F> buchberger(const Ideal<F>& ideal, MonomialOrder order, BuchbergerStats* stats) {
  const F& field = ideal.field();
  const std::size_t n = ideal.nvars();
  Engine<F> eng{field, n, order};
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;

  std::vector<Terms<F>> polys;
  std::vector<std::size_t> basis;  // indices of the current basis
  std::vector<Pair> pairs;
  bool unit = false;

  auto lead = [&](std::size_t k) -> const Monomial& { return polys[k].front().monomial; };

  // Gebauer-Moeller update with the new element h.
  auto update = [&](std::size_t h) {
    std::vector<Pair> candidates;
    for (auto g : basis) candidates.push_back({h, g, lead(h).lcm(lead(g))});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& c = candidates[a];
      bool keep = lead(h).coprime(lead(c.j));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
          if (candidates[b].lcm.divides(c.lcm)) keep = false;
        for (std::size_t b = 0; b < kept.size() && keep; ++b)
          if (kept[b].lcm.divides(c.lcm)) keep = false;
      }
      if (keep) kept.push_back(c);
    }
    std::vector<Pair> fresh;
    for (auto& c : kept)
      if (!lead(c.i).coprime(lead(c.j))) fresh.push_back(std::move(c));
    std::vector<Pair> old;
    for (auto& p : pairs) {
      bool drop = lead(h).divides(p.lcm) && !(lead(p.i).lcm(lead(h)) == p.lcm) && !(lead(p.j).lcm(lead(h)) == p.lcm);
      if (!drop) old.push_back(std::move(p));
    }
    pairs = std::move(old);
    for (auto& p : fresh) pairs.push_back(std::move(p));
    std::vector<std::size_t> nb;
    for (auto g : basis)
      if (!lead(h).divides(lead(g))) nb.push_back(g);
    nb.push_back(h);
    basis = std::move(nb);
  };

  auto insert = [&](Terms<F> h) {
    eng.make_monic(h);
    if (h.front().monomial.is_one()) unit = true;
    polys.push_back(std::move(h));
    update(polys.size() - 1);
  };

  std::vector<Terms<F>> inputs;
  for (const auto& g : ideal.generators()) inputs.push_back(eng.ordered(g));
  std::sort(inputs.begin(), inputs.end(),
            [&](const Terms<F>& a, const Terms<F>& b) { return order.compare(a.front().monomial, b.front().monomial) < 0; });
  for (auto& g : inputs) {
    if (unit) break;
    Terms<F> h = eng.reduce(std::move(g), polys, basis);
    if (!h.empty()) insert(std::move(h));
  }

  while (!pairs.empty() && !unit) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      int c = order.compare(pairs[k].lcm, pairs[best].lcm);
      if (c < 0 || (c == 0 && std::make_pair(pairs[k].i, pairs[k].j) < std::make_pair(pairs[best].i, pairs[best].j)))
        best = k;
    }
    Pair p = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    ++st.pairs_considered;
    Terms<F> s = eng.s_polynomial(polys[p.i], polys[p.j]);
    Terms<F> h = eng.reduce(std::move(s), polys, basis);
    ++st.pairs_reduced;
    if (h.empty()) {
      ++st.zero_reductions;
      continue;
    }
    insert(std::move(h));
  }

  using Poly = Polynomial<F>;
  if (unit) {
    return GroebnerBasis<F>(field, n, order, {Poly::constant(field, n, field.one())}, true);
  }

  // Minimal basis, then tail reduction.
  std::vector<std::size_t> minimal;
  for (auto g : basis) {
    bool redundant = false;
    for (auto o : basis)
      if (o != g && lead(o).divides(lead(g)) && (!(lead(o) == lead(g)) || o < g)) redundant = true;
    if (!redundant) minimal.push_back(g);
  }
  std::vector<Terms<F>> reduced;
  for (auto g : minimal) {
    Terms<F> tail(polys[g].begin() + 1, polys[g].end());
    Terms<F> r = eng.reduce(std::move(tail), polys, minimal, g);
    r.insert(r.begin(), polys[g].front());
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Terms<F>& a, const Terms<F>& b) { return order.compare(a.front().monomial, b.front().monomial) < 0; });
  std::vector<Poly> elements;
  for (auto& r : reduced) elements.push_back(eng.to_poly(std::move(r)));
  return GroebnerBasis<F>(field, n, order, std::move(elements), true);
}

template <class F>
bool satisfies_buchberger_criterion(const GroebnerBasis<F>& basis) {
  Engine<F> eng{basis.field(), basis.nvars(), basis.order()};
  std::vector<Terms<F>> polys;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < basis.elements().size(); ++k) {
    polys.push_back(eng.ordered(basis.elements()[k]));
    eng.make_monic(polys.back());
    idx.push_back(k);
  }
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i + 1; j < polys.size(); ++j)
      if (!eng.reduce(eng.s_polynomial(polys[i], polys[j]), polys, idx).empty()) return false;
  return true;
}

template <class F>
int dimension(const Ideal<F>& ideal) {
  const std::size_t n = ideal.nvars();
  if (ideal.is_zero()) return static_cast<int>(n);
  if (n > 30) throw std::invalid_argument("dimension limited to 30 variables");
  auto gb = buchberger(ideal, MonomialOrder::degrevlex());
  if (gb.is_unit()) return -1;
  std::vector<std::uint64_t> masks;
  for (const auto& m : gb.leading_monomials()) masks.push_back(m.support_mask());
  return kernels::max_independent_set(masks, n);
}

template <class F>
int codimension(const Ideal<F>& ideal, bool require_homogeneous) {
  if (require_homogeneous && !ideal.is_homogeneous())
    throw NonHomogeneousError("codimension requires homogeneous generators");
  return static_cast<int>(ideal.nvars()) - dimension(ideal);
}

template <class F>
Ideal<F> ideal_intersection(const Ideal<F>& a, const Ideal<F>& b) {
  require_same_field(a.field(), b.field());
  if (a.nvars() != b.nvars()) throw DomainError("ideals live in different rings");
  const F& field = a.field();
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return Ideal<F>(field, n);
  using Poly = Polynomial<F>;
  const std::size_t m = n + 1;  // t is variable 0
  Poly t = Poly::variable(field, m, 0);
  Poly one_minus_t = Poly::constant(field, m, field.one()) - t;
  Ideal<F> lifted(field, m);
  for (const auto& f : a.generators()) lifted.add(t * f.embed(m, 1));
  for (const auto& g : b.generators()) lifted.add(one_minus_t * g.embed(m, 1));
  auto gb = buchberger(lifted, MonomialOrder::elimination(1));
  Ideal<F> out(field, n);
  for (const auto& e : gb.elements())
    if (!e.uses_variable(0)) out.add(e.restrict_to(n, 1));
  return out;
}

template <class F>
Ideal<F> ideal_quotient(const Ideal<F>& ideal, const Polynomial<F>& f) {
  if (f.is_zero()) throw std::invalid_argument("quotient by the zero polynomial");
  Ideal<F> principal(ideal.field(), ideal.nvars(), {f});
  Ideal<F> cap = ideal_intersection(ideal, principal);
  Ideal<F> out(ideal.field(), ideal.nvars());
  for (const auto& h : cap.generators()) {
    auto q = exact_divide(h, f);
    if (!q) throw std::logic_error("intersection generator not divisible by the quotient element");
    out.add(*q);
  }
  return out;
}

template <class F>
bool ideal_contains(const Ideal<F>& super, const Ideal<F>& sub) {
  if (sub.is_zero()) return true;
  if (super.is_zero()) return false;
  auto gb = buchberger(super);
  for (const auto& g : sub.generators())
    if (!gb.contains(g)) return false;
  return true;
}

namespace {

template <class F>
void validate_sequence(const std::vector<Polynomial<F>>& fs) {
  if (fs.empty()) throw std::invalid_argument("empty sequence");
  for (const auto& f : fs) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial in sequence (strength -1)");
    if (f.is_constant()) throw std::invalid_argument("constant polynomial in sequence");
    if (!f.is_homogeneous()) throw NonHomogeneousError("sequence element is not homogeneous");
  }
}

}  // namespace

template <class F>
bool is_regular_sequence_codim(const std::vector<Polynomial<F>>& fs) {
  validate_sequence(fs);
  return codimension(Ideal<F>(fs)) == static_cast<int>(fs.size());
}

template <class F>
bool is_regular_sequence_direct(const std::vector<Polynomial<F>>& fs) {
  validate_sequence(fs);
  Ideal<F> all(fs);
  if (buchberger(all).is_unit()) return false;
  Ideal<F> prefix(fs.front().field(), fs.front().nvars());
  for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
    prefix.add(fs[i]);
    Ideal<F> q = ideal_quotient(prefix, fs[i + 1]);
    if (!ideals_equal(q, prefix)) return false;
  }
  return true;
}

template <class F>
PairRegularityReport<F> regular_pair_gcd_check(const Polynomial<F>& f1, const Polynomial<F>& f2) {
  auto g = gcd(f1, f2);
  bool by_gcd = g.is_constant();
  bool by_codim = is_regular_sequence_codim(std::vector<Polynomial<F>>{f1, f2});
  return {g, by_gcd, by_codim, by_gcd == by_codim};
}

#define COLSTR_INSTANTIATE(F)                                                                  \
  template class GroebnerBasis<F>;                                                             \
  template GroebnerBasis<F> buchberger(const Ideal<F>&, MonomialOrder, BuchbergerStats*);      \
  template bool satisfies_buchberger_criterion(const GroebnerBasis<F>&);                       \
  template int dimension(const Ideal<F>&);                                                     \
  template int codimension(const Ideal<F>&, bool);                                             \
  template Ideal<F> ideal_intersection(const Ideal<F>&, const Ideal<F>&);                      \
  template Ideal<F> ideal_quotient(const Ideal<F>&, const Polynomial<F>&);                     \
  template bool ideal_contains(const Ideal<F>&, const Ideal<F>&);                              \
  template bool is_regular_sequence_codim(const std::vector<Polynomial<F>>&);                  \
  template bool is_regular_sequence_direct(const std::vector<Polynomial<F>>&);                 \
  template PairRegularityReport<F> regular_pair_gcd_check(const Polynomial<F>&, const Polynomial<F>&);

COLSTR_INSTANTIATE(RationalField)
COLSTR_INSTANTIATE(PrimeField)

}  // namespace colstr
