#include "doctest.h"

#include "colstr/kernels.hpp"

#include <random>
#include <set>

using namespace colstr;
using namespace colstr::kernels;

TEST_CASE("max independent set") {
  // <x1*x2, x1*x3>: {x2, x3} avoids x1
  std::vector<std::uint64_t> masks{0b011, 0b101};
  CHECK(max_independent_set(masks, 3, Exec::Serial) == 2);
  CHECK(max_independent_set(masks, 3, Exec::Parallel) == 2);
  std::vector<std::uint64_t> unit{0};
  CHECK(max_independent_set(unit, 3) == -1);
  CHECK(max_independent_set({}, 4) == 4);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 3 + i % 8;
    std::vector<std::uint64_t> ms;
    for (int k = 0; k < 4; ++k) ms.push_back((rng() & ((1ull << n) - 1)) | 1ull << (rng() % n));
    CHECK(max_independent_set(ms, n, Exec::Serial) == max_independent_set(ms, n, Exec::Parallel));
  }
}

TEST_CASE("rank mod p") {
  std::vector<std::uint32_t> m{1, 2, 3, 2, 4, 6, 0, 1, 1};
  CHECK(rank_mod_p(m, 3, 3, 7) == 2);
  std::vector<std::uint32_t> id{1, 0, 0, 1};
  CHECK(rank_mod_p(id, 2, 2, 5) == 2);
  std::vector<std::uint32_t> z(4, 0);
  CHECK(rank_mod_p(z, 2, 2, 5) == 0);
}

TEST_CASE("point enumeration") {
  CHECK(point_count(3, 5, PointSet::Projective) == 31);
  CHECK(point_count(3, 5, PointSet::AllNonzero) == 124);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::uint32_t> v(3);
  for (std::uint64_t k = 0; k < 31; ++k) {
    point_at(k, 3, 5, PointSet::Projective, v.data());
    std::size_t first = 0;
    while (v[first] == 0) ++first;
    CHECK(v[first] == 1);
    seen.insert(v);
  }
  CHECK(seen.size() == 31);
}

TEST_CASE("rank scan serial and parallel agree") {
  // pencil (x1^2, x2^2) in 2 variables over F_5
  std::vector<std::vector<std::uint32_t>> grams{{1, 0, 0, 0}, {0, 0, 0, 1}};
  auto s = rank_scan(grams, 2, 5, PointSet::Projective, Exec::Serial);
  auto p = rank_scan(grams, 2, 5, PointSet::Projective, Exec::Parallel);
  CHECK(s.min_rank == 1);
  CHECK(s.max_rank == 2);
  CHECK(s.points == 6);
  CHECK(s.histogram == p.histogram);
  CHECK(s.witness == p.witness);
}

TEST_CASE("quadric products and strength search") {
  auto f3 = SmallField::prime(3);
  QuadricProducts prods(f3, 2);
  // monomials: x1^2, x1x2, x2^2
  std::vector<std::uint8_t> x1x2{0, 1, 0};
  CHECK(prods.contains(prods.key(x1x2)));
  CHECK(quadric_strength(prods, x1x2, 2) == 0);
  std::vector<std::uint8_t> sum_sq{1, 0, 1};  // x1^2 + x2^2, anisotropic over F_3
  CHECK(quadric_strength(prods, sum_sq, 2, Exec::Serial) == 1);
  CHECK(quadric_strength(prods, sum_sq, 2, Exec::Parallel) == 1);
  std::vector<std::uint8_t> zero{0, 0, 0};
  CHECK(quadric_strength(prods, zero, 2) == -1);

  auto f9 = SmallField::quadratic_extension(3);
  QuadricProducts ext(f9, 2);
  CHECK(quadric_strength(ext, sum_sq, 2) == 0);
}

TEST_CASE("extension field arithmetic") {
  auto f9 = SmallField::quadratic_extension(3);
  CHECK(f9.size() == 9);
  // every nonzero element has an inverse, and w^2 = r is a nonsquare in F_3
  for (std::uint8_t a = 1; a < 9; ++a) {
    int inverses = 0;
    for (std::uint8_t b = 1; b < 9; ++b) inverses += f9.mul(a, b) == 1;
    CHECK(inverses == 1);
  }
  std::uint8_t w = 3;
  CHECK(f9.mul(w, w) == 2);
}
