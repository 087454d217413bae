#pragma once

// Table-driven arithmetic in GF(p) and GF(p^2) for small p, used by the
// exhaustive decomposition searches.  GF(p^2) = F_p[w]/(w^2 - r) with r the
// least quadratic nonresidue; the element a + b*w is encoded as a + b*p.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace colstr {

class SmallField {
 public:
  /// GF(p); p an odd prime with p^2 <= 256 for the extension variant.
  static SmallField prime(std::uint32_t p);
  static SmallField quadratic_extension(std::uint32_t p);

  std::uint32_t size() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_extension() const { return q_ != p_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return sub_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  /// Embeds a residue of F_p.
  std::uint8_t from_base(std::uint32_t residue) const { return static_cast<std::uint8_t>(residue % p_); }

 private:
  SmallField(std::uint32_t p, bool extension);
  std::uint32_t p_, q_;
  std::vector<std::uint8_t> add_, sub_, mul_;
};

}  // namespace colstr
