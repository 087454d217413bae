#pragma once

#include "colstr/polynomial.hpp"

#include <optional>

namespace colstr {

/// f / g when g divides f exactly, nullopt otherwise.  Throws DomainError
/// for g = 0.
template <class F>
std::optional<Polynomial<F>> exact_divide(const Polynomial<F>& f, const Polynomial<F>& g);

template <class F>
bool divides(const Polynomial<F>& g, const Polynomial<F>& f) {
  if (g.is_zero()) return f.is_zero();
  return exact_divide(f, g).has_value();
}

/// Greatest common divisor, monic under degrevlex.  gcd(f, 0) = monic(f);
/// gcd(0, 0) = 0.  Primitive pseudo-remainder sequence, recursing on the
/// lowest-index variable present in both arguments.
template <class F>
Polynomial<F> gcd(const Polynomial<F>& f, const Polynomial<F>& g);

}  // namespace colstr
