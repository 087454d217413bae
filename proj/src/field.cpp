#include "colstr/field.hpp"

namespace colstr {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

RationalField::Element RationalField::from_string(const std::string& num, const std::string& den) {
  mpz_class n(num, 10);
  mpz_class d = den.empty() ? mpz_class(1) : mpz_class(den, 10);
  if (d == 0) throw DomainError("invalid rational: zero denominator");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

RationalField::Element RationalField::inv(const Element& a) {
  if (is_zero(a)) throw DomainError("division by zero");
  return 1 / a;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) throw DomainError("modulus is not a prime below 2^31: " + std::to_string(p));
}

PrimeField::Element PrimeField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_rational(const mpq_class& q) const {
  mpz_class n = q.get_num() % p_;
  mpz_class d = q.get_den() % p_;
  if (d == 0) throw DomainError("denominator vanishes modulo " + std::to_string(p_));
  if (n < 0) n += p_;
  return div(static_cast<Element>(n.get_ui()), static_cast<Element>(d.get_ui()));
}

PrimeField::Element PrimeField::from_string(const std::string& num, const std::string& den) const {
  return from_rational(RationalField::from_string(num, den));
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const {
  Element r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw DomainError("division by zero");
  // extended Euclid
  long long t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    long long tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Element>(t);
}

}  // namespace colstr
