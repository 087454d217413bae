#pragma once

#include "colstr/polynomial.hpp"
#include "colstr/text.hpp"

#include <random>
#include <string>

namespace colstr::testing {

inline Polynomial<PrimeField> random_poly(std::mt19937_64& rng, const PrimeField& f, std::size_t n, unsigned max_deg,
                                          std::size_t max_terms) {
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<std::size_t> count(0, max_terms);
  std::uniform_int_distribution<std::uint32_t> coeff(0, f.modulus() - 1);
  std::vector<Polynomial<PrimeField>::Term> terms;
  std::size_t k = count(rng);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<unsigned> e(n, 0);
    unsigned d = deg(rng);
    std::uniform_int_distribution<std::size_t> var(0, n - 1);
    for (unsigned i = 0; i < d; ++i) ++e[var(rng)];
    terms.push_back({Monomial(e), coeff(rng)});
  }
  return Polynomial<PrimeField>::from_terms(f, n, std::move(terms));
}

/// Random homogeneous polynomial of degree d with at least one term.
template <class F>
Polynomial<F> random_homogeneous(std::mt19937_64& rng, const F& f, std::size_t n, unsigned d, std::size_t max_terms,
                                 int coeff_range = 6) {
  std::uniform_int_distribution<std::size_t> count(1, max_terms);
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  for (;;) {
    std::vector<typename Polynomial<F>::Term> terms;
    std::size_t k = count(rng);
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<unsigned> e(n, 0);
      for (unsigned i = 0; i < d; ++i) ++e[var(rng)];
      terms.push_back({Monomial(e), f.from_int(coeff(rng))});
    }
    auto p = Polynomial<F>::from_terms(f, n, std::move(terms));
    if (!p.is_zero()) return p;
  }
}

template <class F>
Polynomial<F> P(const F& field, std::size_t n, const std::string& text) {
  return parse_poly(text, field, VariableNaming::flat(n));
}

template <class F>
Polynomial<F> M(const F& field, std::size_t rows, std::size_t cols, const std::string& text) {
  return parse_poly(text, field, VariableNaming::matrix(rows, cols));
}

}  // namespace colstr::testing
