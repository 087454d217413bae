#include "colstr/text.hpp"

#include <cctype>

namespace colstr {

std::string VariableNaming::name(std::size_t index) const {
  if (index >= nvars_) throw std::out_of_range("variable index out of range");
  if (!is_matrix()) return "x" + std::to_string(index + 1);
  return "x" + std::to_string(index / cols_ + 1) + "_" + std::to_string(index % cols_ + 1);
}

std::optional<std::size_t> VariableNaming::index_of(std::size_t a, std::optional<std::size_t> b) const {
  if (!is_matrix()) {
    if (b || a == 0 || a > nvars_) return std::nullopt;
    return a - 1;
  }
  if (!b || a == 0 || a > rows_ || *b == 0 || *b > cols_) return std::nullopt;
  return (a - 1) * cols_ + (*b - 1);
}

std::string format_monomial(const Monomial& m, const VariableNaming& naming) {
  std::string out;
  for (auto [i, e] : m.support()) {
    if (!out.empty()) out += '*';
    out += naming.name(i);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

namespace {

template <class F>
class Parser {
 public:
  Parser(std::string_view text, const F& field, const VariableNaming& naming)
      : s_(text), field_(field), naming_(naming) {}

  Polynomial<F> parse() {
    using Term = typename Polynomial<F>::Term;
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    terms.push_back(term(negative));
    while (true) {
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      ++pos_;
      terms.push_back(term(c == '-'));
    }
    return Polynomial<F>::from_terms(field_, naming_.nvars(), std::move(terms));
  }

 private:
  typename Polynomial<F>::Term term(bool negative) {
    skip_ws();
    if (at_end()) throw ParseError("expected term", pos_);
    typename F::Element coeff = field_.one();
    Monomial mono(naming_.nvars());
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      std::string num = digits();
      std::string den;
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_ws();
        den = digits();
        if (den.empty()) throw ParseError("expected denominator", pos_);
      }
      try {
        coeff = field_.from_string(num, den);
      } catch (const DomainError& e) {
        throw ParseError(std::string("invalid rational (") + e.what() + ")", start);
      }
      need_factor = false;
      skip_ws();
      if (at_end() || peek() != '*') return finish(negative, coeff, mono);
      ++pos_;
      need_factor = true;
    }
    while (need_factor) {
      mono = mono * varpow();
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
    }
    return finish(negative, coeff, mono);
  }

  typename Polynomial<F>::Term finish(bool negative, typename F::Element coeff, Monomial mono) {
    return {std::move(mono), negative ? field_.neg(coeff) : coeff};
  }

  Monomial varpow() {
    skip_ws();
    std::size_t start = pos_;
    if (at_end() || peek() != 'x') throw ParseError("expected variable", pos_);
    ++pos_;
    std::string a = digits();
    if (a.empty()) throw ParseError("expected variable index", pos_);
    std::optional<std::size_t> b;
    if (!at_end() && peek() == '_') {
      ++pos_;
      std::string bs = digits();
      if (bs.empty()) throw ParseError("expected column index", pos_);
      b = std::stoul(bs);
    }
    auto idx = naming_.index_of(std::stoul(a), b);
    if (!idx) throw ParseError("unknown variable '" + std::string(s_.substr(start, pos_ - start)) + "'", start);
    unsigned e = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      std::string es = digits();
      if (es.empty()) throw ParseError("expected exponent", pos_);
      e = static_cast<unsigned>(std::stoul(es));
    }
    return Monomial::variable(naming_.nvars(), *idx, e);
  }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ - start > 4000) throw ParseError("number too long", start);
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  std::string_view s_;
  const F& field_;
  const VariableNaming& naming_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class F>
Polynomial<F> parse_poly(std::string_view text, const F& field, const VariableNaming& naming) {
  return Parser<F>(text, field, naming).parse();
}

template <class F>
std::string format_poly(const Polynomial<F>& f, const VariableNaming& naming) {
  if (f.nvars() != naming.nvars()) throw std::invalid_argument("naming does not match ring");
  if (f.is_zero()) return "0";
  const F& field = f.field();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    bool neg = field.is_negative(t.coeff);
    typename F::Element mag = neg ? field.neg(t.coeff) : t.coeff;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool unit = F::is_one(mag);
    if (t.monomial.is_one()) {
      out += field.to_string(mag);
    } else if (unit) {
      out += format_monomial(t.monomial, naming);
    } else {
      out += field.to_string(mag) + "*" + format_monomial(t.monomial, naming);
    }
  }
  return out;
}

template Polynomial<RationalField> parse_poly(std::string_view, const RationalField&, const VariableNaming&);
template Polynomial<PrimeField> parse_poly(std::string_view, const PrimeField&, const VariableNaming&);
template std::string format_poly(const Polynomial<RationalField>&, const VariableNaming&);
template std::string format_poly(const Polynomial<PrimeField>&, const VariableNaming&);

}  // namespace colstr
