#include "colstr/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace colstr {

Monomial::Monomial(const std::vector<unsigned>& exps) : exps_(exps.size()) {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0xFFFF) throw std::overflow_error("exponent too large");
    exps_[i] = static_cast<Exponent>(exps[i]);
    degree_ += exps[i];
  }
}

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned power) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Monomial m(nvars);
  m.exps_[index] = static_cast<Exponent>(power);
  m.degree_ = power;
  return m;
}

std::vector<std::pair<std::size_t, unsigned>> Monomial::support() const {
  std::vector<std::pair<std::size_t, unsigned>> out;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i]) out.emplace_back(i, exps_[i]);
  return out;
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < exps_.size() && i < 64; ++i)
    if (exps_[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    unsigned e = unsigned(exps_[i]) + o.exps_[i];
    if (e > 0xFFFF) throw std::overflow_error("exponent overflow");
    r.exps_[i] = static_cast<Exponent>(e);
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r(o);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = static_cast<Exponent>(o.exps_[i] - exps_[i]);
  r.degree_ = o.degree_ - degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r(*this);
  r.degree_ = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], o.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && o.exps_[i]) return false;
  return true;
}

Monomial Monomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + exps_.size() > new_nvars) throw std::out_of_range("embedding does not fit");
  Monomial r(new_nvars);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i + offset] = exps_[i];
  r.degree_ = degree_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
  return h;
}

namespace {

int compare_degrevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  unsigned da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case OrderKind::Lex:
      for (std::size_t i = 0; i < a.nvars(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case OrderKind::DegRevLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = a.nvars(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    case OrderKind::Elimination: {
      int c = compare_degrevlex(a, b, 0, std::min(block_, a.nvars()));
      if (c) return c;
      return compare_degrevlex(a, b, std::min(block_, a.nvars()), a.nvars());
    }
  }
  return 0;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case OrderKind::Lex: return "lex";
    case OrderKind::DegRevLex: return "degrevlex";
    case OrderKind::Elimination: return "elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

MonomialOrder parse_order(const std::string& name) {
  if (name == "lex") return MonomialOrder::lex();
  if (name == "degrevlex") return MonomialOrder::degrevlex();
  throw std::invalid_argument("unknown monomial order: " + name);
}

}  // namespace colstr
