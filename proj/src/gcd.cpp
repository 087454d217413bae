#include "colstr/gcd.hpp"

#include <map>

namespace colstr {

template <class F>
std::optional<Polynomial<F>> exact_divide(const Polynomial<F>& f, const Polynomial<F>& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  const F& field = f.field();
  Polynomial<F> rem = f;
  Polynomial<F> quo(field, f.nvars());
  const auto& lg = g.leading_term();
  typename F::Element inv_lc = field.inv(lg.coeff);
  // With a single divisor the remainder is unique, so a nonzero remainder
  // means g does not divide f.
  while (!rem.is_zero()) {
    const auto& lt = rem.leading_term();
    if (!lg.monomial.divides(lt.monomial)) return std::nullopt;
    Monomial m = lg.monomial.quotient_of(lt.monomial);
    typename F::Element c = field.mul(lt.coeff, inv_lc);
    quo += Polynomial<F>::monomial(field, m, c);
    rem -= g.times_term(m, c);
  }
  return quo;
}

namespace {

template <class F>
using Coeffs = std::map<unsigned, Polynomial<F>>;  // degree in v -> coefficient

template <class F>
Coeffs<F> split(const Polynomial<F>& f, std::size_t v) {
  std::map<unsigned, std::vector<typename Polynomial<F>::Term>> buckets;
  for (const auto& t : f.terms()) {
    std::vector<unsigned> e(f.nvars());
    for (auto [i, k] : t.monomial.support()) e[i] = k;
    unsigned d = e[v];
    e[v] = 0;
    buckets[d].push_back({Monomial(e), t.coeff});
  }
  Coeffs<F> out;
  for (auto& [d, terms] : buckets) out.emplace(d, Polynomial<F>::from_terms(f.field(), f.nvars(), std::move(terms)));
  return out;
}

template <class F>
Polynomial<F> content_in(const Polynomial<F>& f, std::size_t v) {
  Polynomial<F> c(f.field(), f.nvars());
  for (const auto& [d, coeff] : split(f, v)) {
    c = gcd(c, coeff);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

template <class F>
Polynomial<F> primitive_part(const Polynomial<F>& f, std::size_t v) {
  if (f.is_zero()) return f;
  return *exact_divide(f, content_in(f, v));
}

/// lc_v(b)^(deg a - deg b + 1) * a  reduced by b, as polynomials in v.
template <class F>
Polynomial<F> pseudo_remainder(Polynomial<F> a, const Polynomial<F>& b, std::size_t v) {
  const F& field = a.field();
  unsigned db = b.degree_in(v);
  Coeffs<F> bc = split(b, v);
  const Polynomial<F>& lcb = bc.rbegin()->second;
  while (!a.is_zero() && a.degree_in(v) >= db) {
    unsigned da = a.degree_in(v);
    Coeffs<F> ac = split(a, v);
    const Polynomial<F>& lca = ac.rbegin()->second;
    Monomial shift = Monomial::variable(a.nvars(), v, da - db);
    a = lcb * a - (lca * b).times_term(shift, field.one());
  }
  return a;
}

template <class F>
std::optional<std::size_t> common_variable(const Polynomial<F>& f, const Polynomial<F>& g) {
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (f.uses_variable(i) && g.uses_variable(i)) return i;
  return std::nullopt;
}

}  // namespace

template <class F>
Polynomial<F> gcd(const Polynomial<F>& f, const Polynomial<F>& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  require_same_field(f.field(), g.field());
  Polynomial<F> one = Polynomial<F>::constant(f.field(), f.nvars(), f.field().one());
  if (f.is_constant() || g.is_constant()) return one;
  auto var = common_variable(f, g);
  if (!var) return one;
  std::size_t v = *var;

  Polynomial<F> cf = content_in(f, v);
  Polynomial<F> cg = content_in(g, v);
  Polynomial<F> c = gcd(cf, cg);
  Polynomial<F> a = *exact_divide(f, cf);
  Polynomial<F> b = *exact_divide(g, cg);
  if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);

  Polynomial<F> result = one;
  while (true) {
    Polynomial<F> r = pseudo_remainder(a, b, v);
    if (r.is_zero()) {
      result = b;
      break;
    }
    if (r.degree_in(v) == 0) break;
    a = std::move(b);
    b = primitive_part(r, v);
  }
  return (c * primitive_part(result, v)).monic();
}

template std::optional<Polynomial<RationalField>> exact_divide(const Polynomial<RationalField>&, const Polynomial<RationalField>&);
template std::optional<Polynomial<PrimeField>> exact_divide(const Polynomial<PrimeField>&, const Polynomial<PrimeField>&);
template Polynomial<RationalField> gcd(const Polynomial<RationalField>&, const Polynomial<RationalField>&);
template Polynomial<PrimeField> gcd(const Polynomial<PrimeField>&, const Polynomial<PrimeField>&);

}  // namespace colstr
