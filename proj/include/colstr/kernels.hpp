#pragma once

// Data-parallel scan kernels.  Each kernel has a serial reference path and an
// OpenMP path selected by Exec; both return identical results (ties are
// broken by enumeration index, never by thread timing).

#include "colstr/smallfield.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace colstr::kernels {

enum class Exec { Serial, Parallel };

/// Largest |S| over subsets S of {0..nvars-1} such that no mask is a subset
/// of S.  Returns -1 when some mask is empty (the unit ideal).
int max_independent_set(std::span<const std::uint64_t> masks, std::size_t nvars, Exec exec = Exec::Parallel);

/// Rank of a rows x cols matrix over F_p; the matrix is destroyed.
int rank_mod_p(std::span<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p);

enum class PointSet {
  Projective,  // one representative per line, first nonzero coordinate 1
  AllNonzero,  // every nonzero vector
};

std::uint64_t point_count(std::size_t dim, std::uint32_t p, PointSet set);
/// The index-th point of the enumeration, written to out[0..dim).
void point_at(std::uint64_t index, std::size_t dim, std::uint32_t p, PointSet set, std::uint32_t* out);

struct RankScan {
  int min_rank = 0;
  int max_rank = 0;
  std::vector<std::uint32_t> witness;   // first point attaining min_rank
  std::vector<std::uint64_t> histogram;  // histogram[k] = points of rank k
  std::uint64_t points = 0;
};

/// Ranks of all combinations sum_i c_i * grams[i] (each n x n, row-major,
/// entries mod p) over the chosen point set.
RankScan rank_scan(const std::vector<std::vector<std::uint32_t>>& grams, std::size_t n, std::uint32_t p,
                   PointSet set, Exec exec = Exec::Parallel);

/// All products l1 * l2 of nonzero linear forms in n variables over a small
/// field, as quadric coefficient vectors.  Monomials x_i x_j (i <= j) are
/// indexed row by row: (0,0), (0,1), ..., (0,n-1), (1,1), ...
class QuadricProducts {
 public:
  QuadricProducts(SmallField field, std::size_t n);

  const SmallField& field() const { return field_; }
  std::size_t nvars() const { return n_; }
  std::size_t coefficient_count() const { return width_; }
  std::size_t size() const { return keys_.size(); }

  std::uint64_t key(std::span<const std::uint8_t> coeffs) const;
  bool contains(std::uint64_t key) const;
  /// Coefficients of the index-th product.
  std::span<const std::uint8_t> product(std::size_t index) const {
    return {digits_.data() + index * width_, width_};
  }

 private:
  SmallField field_;
  std::size_t n_, width_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint8_t> digits_;
  std::vector<std::uint64_t> table_;  // open addressing, key + 1, 0 = empty
};

/// Least s <= s_max such that the quadric is a sum of s + 1 products of
/// linear forms over the field of `products`; -1 for the zero quadric;
/// nullopt if none exists up to s_max.
std::optional<int> quadric_strength(const QuadricProducts& products, std::span<const std::uint8_t> coeffs, int s_max,
                                    Exec exec = Exec::Parallel);

}  // namespace colstr::kernels
