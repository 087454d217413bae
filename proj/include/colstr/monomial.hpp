#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace colstr {

/// Power product over a fixed number of variables.  Exponents are stored
/// densely; support() gives the sparse (index, exponent) view with no zero
/// exponents.
class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(const std::vector<unsigned>& exps);

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1);

  std::size_t nvars() const { return exps_.size(); }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  std::vector<std::pair<std::size_t, unsigned>> support() const;
  /// Bit i set iff variable i occurs; valid for nvars <= 64.
  std::uint64_t support_mask() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  /// Embeds into a ring of new_nvars variables, shifting indices by offset.
  Monomial embed(std::size_t new_nvars, std::size_t offset) const;

  std::size_t hash() const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  /// Structural order (not a monomial order); for use as a map key.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  boost::container::small_vector<Exponent, 16> exps_;
  std::uint32_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind { Lex, DegRevLex, Elimination };

/// Monomial orders with x1 > x2 > ... > xn.  Elimination(k) compares the
/// first k variables by degrevlex and breaks ties by degrevlex on the rest;
/// it eliminates the first block.
class MonomialOrder {
 public:
  static MonomialOrder lex() { return MonomialOrder(OrderKind::Lex, 0); }
  static MonomialOrder degrevlex() { return MonomialOrder(OrderKind::DegRevLex, 0); }
  static MonomialOrder elimination(std::size_t block) { return MonomialOrder(OrderKind::Elimination, block); }

  OrderKind kind() const { return kind_; }
  std::size_t block() const { return block_; }
  std::string name() const;

  /// Negative, zero, positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonomialOrder(OrderKind k, std::size_t b) : kind_(k), block_(b) {}
  OrderKind kind_;
  std::size_t block_;
};

/// Parses "lex" / "degrevlex"; throws std::invalid_argument otherwise.
MonomialOrder parse_order(const std::string& name);

}  // namespace colstr
