#pragma once

// Coefficient domains: the rationals (GMP) and prime fields F_p.
//
// A field object is a small value carried by every polynomial.  Elements are
// plain values; all arithmetic goes through the field so that prime-field
// residues need not carry their modulus.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace colstr {

/// Raised on domain violations: division by zero, mixed coefficient
/// domains, unsupported characteristic.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

class RationalField {
 public:
  using Element = mpq_class;

  static Element zero() { return Element(0); }
  static Element one() { return Element(1); }
  static Element from_int(long long v) { return Element(static_cast<long>(v)); }
  static Element from_rational(const mpq_class& q) { return q; }
  /// Parses "a" or "a/b"; throws DomainError on a zero denominator.
  static Element from_string(const std::string& num, const std::string& den);

  static bool is_zero(const Element& a) { return sgn(a) == 0; }
  static bool is_one(const Element& a) { return a == 1; }
  static bool equal(const Element& a, const Element& b) { return a == b; }

  static Element add(const Element& a, const Element& b) { return a + b; }
  static Element sub(const Element& a, const Element& b) { return a - b; }
  static Element mul(const Element& a, const Element& b) { return a * b; }
  static Element neg(const Element& a) { return -a; }
  static Element inv(const Element& a);
  static Element div(const Element& a, const Element& b) { return mul(a, inv(b)); }

  static std::uint64_t characteristic() { return 0; }
  static std::string describe() { return "q"; }
  /// Canonical text: "3", "-3/2".
  static std::string to_string(const Element& a) { return a.get_str(); }
  /// True when the printed form needs a leading minus.
  static bool is_negative(const Element& a) { return sgn(a) < 0; }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

class PrimeField {
 public:
  using Element = std::uint32_t;

  /// Throws DomainError unless p is a prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const;
  Element from_rational(const mpq_class& q) const;
  Element from_string(const std::string& num, const std::string& den) const;

  static bool is_zero(Element a) { return a == 0; }
  static bool is_one(Element a) { return a == 1; }
  static bool equal(Element a, Element b) { return a == b; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  std::uint64_t characteristic() const { return p_; }
  std::string describe() const { return "fp:" + std::to_string(p_); }
  /// Symmetric representative in (-p/2, p/2].
  long long to_signed(Element a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }
  std::string to_string(Element a) const { return std::to_string(to_signed(a)); }
  bool is_negative(Element a) const { return to_signed(a) < 0; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// Throws DomainError when two operands live over different fields.
template <class F>
void require_same_field(const F& a, const F& b) {
  if (!(a == b)) throw DomainError("mixed coefficient domains: " + a.describe() + " vs " + b.describe());
}

}  // namespace colstr
