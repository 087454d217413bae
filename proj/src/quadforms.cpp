#include "colstr/quadforms.hpp"

#include <algorithm>
#include <map>

namespace colstr {

template <class F>
QuadraticForm<F>::QuadraticForm(Matrix<F> gram) : gram_(std::move(gram)) {
  if (gram_.field().characteristic() == 2) throw DomainError("quadratic forms need characteristic other than 2");
  if (gram_.rows() != gram_.cols()) throw DomainError("Gram matrix must be square");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!F::equal(gram_(i, j), gram_(j, i))) throw DomainError("Gram matrix must be symmetric");
}

template <class F>
QuadraticForm<F> QuadraticForm<F>::from_polynomial(const Polynomial<F>& q) {
  const F& field = q.field();
  if (field.characteristic() == 2) throw DomainError("quadratic forms need characteristic other than 2");
  if (!q.is_zero() && (!q.is_homogeneous() || q.total_degree() != 2))
    throw std::invalid_argument("not a quadratic form: expected a homogeneous polynomial of degree 2");
  const std::size_t n = q.nvars();
  Matrix<F> g(field, n, n);
  const Element half = field.inv(field.from_int(2));
  for (const auto& t : q.terms()) {
    auto s = t.monomial.support();
    if (s.size() == 1) {
      g(s[0].first, s[0].first) = t.coeff;
    } else {
      auto c = field.mul(t.coeff, half);
      g(s[0].first, s[1].first) = c;
      g(s[1].first, s[0].first) = c;
    }
  }
  return QuadraticForm(std::move(g));
}

template <class F>
QuadraticForm<F> QuadraticForm<F>::diagonal(const F& field, const std::vector<Element>& coeffs) {
  Matrix<F> g(field, coeffs.size(), coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) g(i, i) = coeffs[i];
  return QuadraticForm(std::move(g));
}

template <class F>
Polynomial<F> QuadraticForm<F>::to_polynomial() const {
  const F& f = field();
  const std::size_t n = nvars();
  std::vector<typename Polynomial<F>::Term> terms;
  const Element two = f.from_int(2);
  for (std::size_t i = 0; i < n; ++i) {
    if (!F::is_zero(gram_(i, i))) terms.push_back({Monomial::variable(n, i, 2), gram_(i, i)});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (F::is_zero(gram_(i, j))) continue;
      terms.push_back({Monomial::variable(n, i) * Monomial::variable(n, j), f.mul(two, gram_(i, j))});
    }
  }
  return Polynomial<F>::from_terms(f, n, std::move(terms));
}

template <class F>
QuadraticForm<F> QuadraticForm<F>::transformed(const Matrix<F>& t) const {
  return QuadraticForm(t.transpose() * gram_ * t);
}

template <class F>
QuadraticForm<F> combine(const std::vector<QuadraticForm<F>>& forms, const std::vector<typename F::Element>& coeffs) {
  if (forms.empty() || forms.size() != coeffs.size()) throw std::invalid_argument("one coefficient per form required");
  const F& f = forms.front().field();
  const std::size_t n = forms.front().nvars();
  Matrix<F> g(f, n, n);
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (forms[k].nvars() != n) throw DomainError("forms live in rings of different size");
    g = g + forms[k].gram().scaled(coeffs[k]);
  }
  return QuadraticForm<F>(std::move(g));
}

template class QuadraticForm<RationalField>;
template class QuadraticForm<PrimeField>;
template QuadraticForm<RationalField> combine(const std::vector<QuadraticForm<RationalField>>&,
                                              const std::vector<mpq_class>&);
template QuadraticForm<PrimeField> combine(const std::vector<QuadraticForm<PrimeField>>&,
                                           const std::vector<std::uint32_t>&);

int strength_from_rank(int k) {
  if (k < 0) throw std::invalid_argument("rank must be nonnegative");
  return (k + 1) / 2 - 1;
}

std::vector<std::uint32_t> gram_residues(const QuadraticForm<PrimeField>& q) {
  const std::size_t n = q.nvars();
  std::vector<std::uint32_t> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = q.gram()(i, j);
  return out;
}

QuadraticForm<PrimeField> reduce_mod(const QuadraticForm<RationalField>& q, const PrimeField& field) {
  const std::size_t n = q.nvars();
  Matrix<PrimeField> g(field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = field.from_rational(q.gram()(i, j));
  return QuadraticForm<PrimeField>(std::move(g));
}

// ---------------------------------------------------------------------------
// Diagonal pairs

DiagonalPair DiagonalPair::from_diagonals(std::vector<mpq_class> a, std::vector<mpq_class> b) {
  if (a.size() != b.size()) throw DomainError("diagonal pair needs equally many coefficients");
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(a[i]) == 0 && sgn(b[i]) == 0)
      throw DomainError("variable x" + std::to_string(i + 1) +
                        " occurs in neither form; drop it to reduce the number of variables");
  DiagonalPair dp;
  dp.a = std::move(a);
  dp.b = std::move(b);
  dp.shift = 0;
  auto needs_shift = [&](const mpq_class& s) {
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(dp.a[i] + s * dp.b[i]) == 0) return true;
    return false;
  };
  while (needs_shift(dp.shift)) dp.shift += 1;

  std::vector<mpq_class> ratios(n);
  for (std::size_t i = 0; i < n; ++i) ratios[i] = dp.ratio(i);
  dp.alpha = ratios;
  std::sort(dp.alpha.begin(), dp.alpha.end());
  dp.alpha.erase(std::unique(dp.alpha.begin(), dp.alpha.end()), dp.alpha.end());
  dp.lambda.assign(dp.alpha.size(), 0);
  dp.block.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto t = static_cast<std::size_t>(std::lower_bound(dp.alpha.begin(), dp.alpha.end(), ratios[i]) - dp.alpha.begin());
    dp.block[i] = t;
    ++dp.lambda[t];
  }
  std::size_t acc = 0;
  for (auto l : dp.lambda) dp.mu.push_back(acc += l);
  return dp;
}

QuadraticForm<RationalField> DiagonalPair::f1() const { return QuadraticForm<RationalField>::diagonal(RationalField{}, a); }
QuadraticForm<RationalField> DiagonalPair::f2() const { return QuadraticForm<RationalField>::diagonal(RationalField{}, b); }

namespace {

using QMatrix = Matrix<RationalField>;

// Coefficients (constant term first) of det(B - t A), by interpolation at
// t = 0..n.
std::vector<mpq_class> pencil_polynomial(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.rows();
  std::vector<mpq_class> xs, ys;
  for (std::size_t k = 0; k <= n; ++k) {
    mpq_class t(static_cast<long>(k));
    xs.push_back(t);
    ys.push_back((b + a.scaled(-t)).determinant());
  }
  // Newton divided differences, then expansion into the monomial basis.
  std::vector<mpq_class> dd = ys;
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<mpq_class> poly{dd[n]};
  for (std::size_t k = n; k-- > 0;) {
    // poly = poly * (t - xs[k]) + dd[k]
    std::vector<mpq_class> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xs[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  while (poly.size() > 1 && sgn(poly.back()) == 0) poly.pop_back();
  return poly;
}

std::optional<std::vector<mpz_class>> divisors(mpz_class v) {
  v = abs(v);
  if (v > mpz_class("1000000000000")) return std::nullopt;
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  return out;
}

mpq_class horner(const std::vector<mpq_class>& poly, const mpq_class& t) {
  mpq_class acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * t + poly[i];
  return acc;
}

// Distinct rational roots of a nonzero polynomial, or nullopt when the
// coefficients are too large to enumerate candidates.
std::optional<std::vector<mpq_class>> rational_roots(std::vector<mpq_class> poly) {
  std::vector<mpq_class> roots;
  if (poly.size() > 1 && sgn(poly[0]) == 0) {
    roots.push_back(0);
    while (sgn(poly.front()) == 0) poly.erase(poly.begin());
  }
  if (poly.size() <= 1) return roots;
  mpz_class den = 1;
  for (const auto& c : poly) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> ints;
  for (const auto& c : poly) ints.push_back(mpz_class(c * den));
  auto ps = divisors(ints.front()), qs = divisors(ints.back());
  if (!ps || !qs) return std::nullopt;
  for (const auto& p : *ps)
    for (const auto& q : *qs)
      for (int s : {1, -1}) {
        mpq_class t(s * p, q);
        t.canonicalize();
        if (sgn(horner(poly, t)) == 0 && std::find(roots.begin(), roots.end(), t) == roots.end()) roots.push_back(t);
      }
  return roots;
}

std::size_t root_multiplicity(std::vector<mpq_class> poly, const mpq_class& t) {
  std::size_t m = 0;
  while (poly.size() > 1 && sgn(horner(poly, t)) == 0) {
    // synthetic division by (x - t)
    std::vector<mpq_class> q(poly.size() - 1);
    mpq_class carry = 0;
    for (std::size_t i = poly.size(); i-- > 1;) {
      carry = carry * t + poly[i];
      q[i - 1] = carry;
    }
    poly = std::move(q);
    ++m;
  }
  return m;
}

// Columns w_1..w_k with w_i^T g w_j = 0 for i != j, for symmetric
// nondegenerate g.
std::vector<std::vector<mpq_class>> congruence_basis(const QMatrix& g) {
  const std::size_t k = g.rows();
  RationalField Q;
  QMatrix w = QMatrix::identity(Q, k);
  auto current = [&] { return w.transpose() * g * w; };
  for (std::size_t i = 0; i < k; ++i) {
    QMatrix h = current();
    if (sgn(h(i, i)) == 0) {
      std::size_t j = i + 1;
      while (j < k && sgn(h(j, j)) == 0) ++j;
      if (j < k) {
        for (std::size_t r = 0; r < k; ++r) std::swap(w(r, i), w(r, j));
      } else {
        j = i + 1;
        while (j < k && sgn(h(i, j)) == 0) ++j;
        if (j == k) throw std::logic_error("degenerate block in congruence diagonalization");
        for (std::size_t r = 0; r < k; ++r) w(r, i) += w(r, j);
      }
      h = current();
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      if (sgn(h(i, j)) == 0) continue;
      mpq_class f = h(i, j) / h(i, i);
      for (std::size_t r = 0; r < k; ++r) w(r, j) -= f * w(r, i);
    }
  }
  std::vector<std::vector<mpq_class>> cols(k, std::vector<mpq_class>(k));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < k; ++r) cols[c][r] = w(r, c);
  return cols;
}

}  // namespace

Diagonalization simultaneous_diagonalize(const QuadraticForm<RationalField>& f1,
                                         const QuadraticForm<RationalField>& f2) {
  if (f1.nvars() != f2.nvars()) throw DomainError("forms live in rings of different size");
  const std::size_t n = f1.nvars();
  const QMatrix& a = f1.gram();
  const QMatrix& b = f2.gram();
  Diagonalization out;
  if (!a.inverse()) {
    out.status = Diagonalization::Status::DegenerateF1;
    out.message =
        "f1 is degenerate; replace f1 by a combination with f2 that is nondegenerate, or drop variables that occur in "
        "neither form";
    return out;
  }
  auto poly = pencil_polynomial(a, b);
  auto roots = rational_roots(poly);
  if (!roots) {
    out.message = "pencil coefficients too large for the rational root search";
    return out;
  }
  std::size_t counted = 0;
  for (const auto& t : *roots) counted += root_multiplicity(poly, t);
  if (counted < n) {
    out.message = "pencil eigenvalues are not all rational";
    return out;
  }

  struct Space {
    mpq_class t;
    std::vector<std::vector<mpq_class>> basis;
    std::size_t first;
  };
  std::vector<Space> spaces;
  std::size_t dims = 0;
  for (const auto& t : *roots) {
    auto ker = (b + a.scaled(-t)).kernel();
    std::size_t first = n;
    for (const auto& v : ker) {
      std::size_t i = 0;
      while (sgn(v[i]) == 0) ++i;
      first = std::min(first, i);
    }
    dims += ker.size();
    spaces.push_back({t, std::move(ker), first});
  }
  if (dims != n) {
    out.message = "pencil is not diagonalizable over Q";
    return out;
  }
  std::sort(spaces.begin(), spaces.end(), [](const Space& x, const Space& y) {
    if (x.first != y.first) return x.first < y.first;
    return x.t > y.t;
  });

  RationalField Q;
  QMatrix transform(Q, n, n);
  std::vector<mpq_class> da, db;
  std::size_t col = 0;
  for (const auto& s : spaces) {
    const std::size_t k = s.basis.size();
    QMatrix v(Q, n, k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t r = 0; r < n; ++r) v(r, c) = s.basis[c][r];
    QMatrix g = v.transpose() * a * v;
    for (const auto& w : congruence_basis(g)) {
      for (std::size_t r = 0; r < n; ++r) {
        mpq_class x = 0;
        for (std::size_t c = 0; c < k; ++c) x += v(r, c) * w[c];
        transform(r, col) = x;
      }
      ++col;
    }
  }
  QMatrix ta = transform.transpose() * a * transform;
  QMatrix tb = transform.transpose() * b * transform;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (sgn(ta(i, j)) != 0 || sgn(tb(i, j)) != 0))
        throw std::logic_error("simultaneous diagonalization produced an off-diagonal entry");
    da.push_back(ta(i, i));
    db.push_back(tb(i, i));
  }
  out.status = Diagonalization::Status::Ok;
  out.pair = DiagonalPair::from_diagonals(std::move(da), std::move(db));
  out.transform = std::move(transform);
  return out;
}

std::string to_string(MinrankMethod m) { return m == MinrankMethod::Formula ? "formula" : "finite-field-scan"; }

MinrankResult<RationalField> minrank_formula(const DiagonalPair& dp) {
  auto best = static_cast<std::size_t>(std::max_element(dp.lambda.begin(), dp.lambda.end()) - dp.lambda.begin());
  MinrankResult<RationalField> r;
  r.value = static_cast<int>(dp.nvars() - dp.lambda[best]);
  const mpq_class& al = dp.alpha[best];
  // f2 - alpha (f1 + shift f2) = -alpha f1 + (1 - alpha shift) f2
  r.witness = {-al, 1 - al * dp.shift};
  r.method = MinrankMethod::Formula;
  return r;
}

MinrankResult<PrimeField> minrank_bruteforce(const QuadraticForm<PrimeField>& f1, const QuadraticForm<PrimeField>& f2,
                                             kernels::Exec exec) {
  const std::uint32_t p = f1.field().modulus();
  if (p == 2) throw DomainError("minrank scan needs an odd prime");
  require_same_field(f1.field(), f2.field());
  if (f1.nvars() != f2.nvars()) throw DomainError("forms live in rings of different size");
  auto scan = kernels::rank_scan({gram_residues(f1), gram_residues(f2)}, f1.nvars(), p, kernels::PointSet::Projective,
                                 exec);
  MinrankResult<PrimeField> r;
  r.value = scan.min_rank;
  r.witness = scan.witness;
  r.method = MinrankMethod::FiniteFieldScan;
  return r;
}

Ideal<RationalField> jacobian_minor_ideal(const DiagonalPair& dp) {
  RationalField Q;
  const std::size_t n = dp.nvars();
  Ideal<RationalField> j(Q, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      mpq_class c = dp.a[i] * dp.b[k] - dp.a[k] * dp.b[i];
      if (sgn(c) == 0) continue;
      j.add(Polynomial<RationalField>::monomial(Q, Monomial::variable(n, i) * Monomial::variable(n, k), c));
    }
  return j;
}

std::vector<Ideal<RationalField>> coordinate_primary_components(const DiagonalPair& dp) {
  RationalField Q;
  const std::size_t n = dp.nvars();
  std::vector<Ideal<RationalField>> out;
  for (std::size_t t = 0; t < dp.blocks(); ++t) {
    Ideal<RationalField> it(Q, n);
    for (std::size_t k = 0; k < n; ++k)
      if (dp.block[k] != t) it.add(Polynomial<RationalField>::variable(Q, n, k));
    out.push_back(std::move(it));
  }
  return out;
}

JacobianIdentityReport verify_jacobian_identity(const DiagonalPair& dp, std::uint32_t p) {
  JacobianIdentityReport r;
  r.prime = p;
  auto j = jacobian_minor_ideal(dp);
  auto comps = coordinate_primary_components(dp);
  Ideal<RationalField> cap = comps.front();
  for (std::size_t t = 1; t < comps.size(); ++t) cap = ideal_intersection(cap, comps[t]);
  r.intersection_matches = ideals_equal(j, cap);
  r.codim_j = codimension(j);
  r.formula = minrank_formula(dp).value;
  PrimeField fp(p);
  r.bruteforce = minrank_bruteforce(reduce_mod(dp.f1(), fp), reduce_mod(dp.f2(), fp)).value;
  r.passed = r.intersection_matches && r.codim_j == r.formula && r.formula == r.bruteforce;
  return r;
}

std::string to_string(PrimeVerdict v) { return v == PrimeVerdict::CertifiedPrime ? "certified-prime" : "inconclusive"; }

PrimeCertificate prime_certificate(const DiagonalPair& dp) {
  PrimeCertificate c;
  c.codim_j = codimension(jacobian_minor_ideal(dp));
  c.verdict = c.codim_j > 4 ? PrimeVerdict::CertifiedPrime : PrimeVerdict::Inconclusive;
  return c;
}

CollectiveStrength collective_strength_quadrics(const std::vector<QuadraticForm<PrimeField>>& forms,
                                                kernels::Exec exec) {
  if (forms.empty()) throw std::invalid_argument("empty family");
  const std::uint32_t p = forms.front().field().modulus();
  if (p == 2) throw DomainError("collective strength scan needs an odd prime");
  std::vector<std::vector<std::uint32_t>> grams;
  for (const auto& q : forms) {
    require_same_field(q.field(), forms.front().field());
    if (q.nvars() != forms.front().nvars()) throw DomainError("forms live in rings of different size");
    grams.push_back(gram_residues(q));
  }
  CollectiveStrength c;
  c.scan = kernels::rank_scan(grams, forms.front().nvars(), p, kernels::PointSet::Projective, exec);
  c.min_rank = c.scan.min_rank;
  c.strength = strength_from_rank(c.min_rank);
  c.witness = c.scan.witness;
  return c;
}

N32Report theorem_n32_report(const QuadraticForm<RationalField>& f1, const QuadraticForm<RationalField>& f2,
                             const QuadraticForm<RationalField>& f3, std::uint32_t p, kernels::Exec exec) {
  N32Report r;
  r.prime = p;
  PrimeField fp(p);
  auto g1 = reduce_mod(f1, fp), g2 = reduce_mod(f2, fp), g3 = reduce_mod(f3, fp);
  r.collective = collective_strength_quadrics({g1, g2, g3}, exec);
  r.minrank_scan = minrank_bruteforce(g1, g2, exec);

  auto d = simultaneous_diagonalize(f1, f2);
  r.diagonalization = d.status;
  r.diagonalization_message = d.message;
  if (d.status == Diagonalization::Status::Ok) {
    r.minrank_formula = minrank_formula(*d.pair).value;
    auto cert = prime_certificate(*d.pair);
    r.codim_j = cert.codim_j;
    r.prime_verdict = cert.verdict;
  }
  int minrank = r.minrank_formula.value_or(r.minrank_scan.value);
  r.meets_threshold_4 = minrank >= 4;
  r.meets_threshold_5 = minrank >= 5;

  std::vector<Polynomial<RationalField>> system{f1.to_polynomial(), f2.to_polynomial(), f3.to_polynomial()};
  bool has_zero = false;
  for (const auto& f : system) has_zero = has_zero || f.is_zero();
  r.regular = !has_zero && is_regular_sequence_codim(system);

  bool ok = true;
  if (r.minrank_formula && r.codim_j) ok = ok && *r.codim_j == *r.minrank_formula;
  if (r.minrank_formula && *r.minrank_formula >= 5) ok = ok && r.prime_verdict == PrimeVerdict::CertifiedPrime;
  if (r.collective.strength >= 2) ok = ok && r.minrank_scan.value >= 5;
  if (r.prime_verdict == PrimeVerdict::CertifiedPrime && r.collective.strength >= 0) ok = ok && r.regular;
  if (r.collective.strength < 0) ok = ok && !r.regular;
  r.consistent = ok;
  return r;
}

}  // namespace colstr
