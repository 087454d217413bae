#include "colstr/smallfield.hpp"

#include "colstr/field.hpp"

namespace colstr {

SmallField SmallField::prime(std::uint32_t p) { return SmallField(p, false); }
SmallField SmallField::quadratic_extension(std::uint32_t p) { return SmallField(p, true); }

SmallField::SmallField(std::uint32_t p, bool extension) : p_(p), q_(extension ? p * p : p) {
  if (p < 3 || !is_prime(p)) throw DomainError("small field needs an odd prime");
  if (q_ > 256) throw DomainError("small field too large for byte tables");
  std::uint32_t r = 0;
  if (extension) {
    for (std::uint32_t c = 2; c < p && !r; ++c) {
      bool square = false;
      for (std::uint32_t x = 1; x < p; ++x)
        if (x * x % p == c) square = true;
      if (!square) r = c;
    }
  }
  add_.resize(q_ * q_);
  sub_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  for (std::uint32_t a = 0; a < q_; ++a)
    for (std::uint32_t b = 0; b < q_; ++b) {
      std::uint32_t a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
      auto enc = [p](std::uint32_t x0, std::uint32_t x1) { return static_cast<std::uint8_t>(x0 % p + (x1 % p) * p); };
      add_[a * q_ + b] = enc(a0 + b0, a1 + b1);
      sub_[a * q_ + b] = enc(a0 + p - b0, a1 + p - b1);
      // (a0 + a1 w)(b0 + b1 w) = a0 b0 + r a1 b1 + (a0 b1 + a1 b0) w
      mul_[a * q_ + b] = enc(a0 * b0 + r * a1 * b1, a0 * b1 + a1 * b0);
    }
}

}  // namespace colstr
