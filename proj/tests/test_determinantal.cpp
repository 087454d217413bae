#include "doctest.h"

#include "colstr/determinantal.hpp"
#include "colstr/io.hpp"
#include "test_support.hpp"

#include <random>

using namespace colstr;
using colstr::testing::M;

namespace {

const RationalField Q;

Polynomial<RationalField> expand_delta1() {
  // products written out, since the grammar has no parentheses
  return M(Q, 4, 3,
           "x2_1*x3_2*x4_3 - x2_1*x3_3*x4_2 - x2_2*x3_1*x4_3 + x2_2*x4_1*x3_3 + x2_3*x3_1*x4_2 - x2_3*x3_2*x4_1");
}

SymbolicMatrix<RationalField> random_matrix(std::mt19937_64& rng, std::size_t n) {
  SymbolicMatrix<RationalField> m(n);
  for (auto& row : m)
    for (std::size_t j = 0; j < n; ++j) row.push_back(colstr::testing::random_homogeneous(rng, Q, 3, 1, 2, 3));
  return m;
}

}  // namespace

TEST_CASE("small determinants") {
  GenericMatrix one(1, 1);
  CHECK(determinant_laplace(one.submatrix(Q, {0})) == M(Q, 1, 1, "x1_1"));
  GenericMatrix two(2, 2);
  CHECK(determinant_laplace(two.submatrix(Q, {0, 1})) == M(Q, 2, 2, "x1_1*x2_2 - x1_2*x2_1"));
  SymbolicMatrix<RationalField> rect{{M(Q, 2, 2, "x1_1"), M(Q, 2, 2, "x1_2")}};
  CHECK_THROWS_AS(determinant_laplace(rect), std::invalid_argument);
}

TEST_CASE("Delta_1 of the 4x3 generic matrix") {
  GenericMatrix g(4, 3);
  auto d1 = determinant_laplace(g.submatrix(Q, {1, 2, 3}));
  CHECK(d1 == expand_delta1());
  CHECK(d1.size() == 6);
}

TEST_CASE("maximal minor families") {
  auto f32 = maximal_minors(GenericMatrix(3, 2), Q);
  REQUIRE(f32.minors.size() == 3);
  CHECK(f32.minors[0] == M(Q, 3, 2, "x2_1*x3_2 - x3_1*x2_2"));
  CHECK(f32.minors[1] == M(Q, 3, 2, "x1_1*x3_2 - x3_1*x1_2"));
  CHECK(f32.minors[2] == M(Q, 3, 2, "x1_1*x2_2 - x2_1*x1_2"));

  auto f43 = maximal_minors(GenericMatrix(4, 3), Q);
  REQUIRE(f43.minors.size() == 4);
  CHECK(f43.minors[0] == expand_delta1());
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(f43.signs[i] == 1);
    CHECK(f43.multidegrees[i] == MultiDegree{1, 1, 1});
    CHECK(f43.minors[i].is_homogeneous());
    CHECK(f43.minors[i].total_degree() == 3);
  }

  auto f21 = maximal_minors(GenericMatrix(2, 1), Q);
  REQUIRE(f21.minors.size() == 2);
  CHECK(f21.minors[0] == M(Q, 2, 1, "x2_1"));
  CHECK(f21.minors[1] == M(Q, 2, 1, "x1_1"));

  CHECK_THROWS_AS(maximal_minors(GenericMatrix(3, 3), Q), std::invalid_argument);
}

TEST_CASE("Laplace strength bound") {
  auto f32 = maximal_minors(GenericMatrix(3, 2), Q);
  auto b = laplace_strength_bound(f32, 2);  // rows 1 and 2: x11*x22 - x12*x21
  REQUIRE(b.bound == 1);
  REQUIRE(b.products.size() == 2);
  CHECK(b.products[0].first == M(Q, 3, 2, "x1_1"));
  CHECK(b.products[0].second == M(Q, 3, 2, "x2_2"));
  CHECK(b.products[1].first == M(Q, 3, 2, "-x1_2"));
  CHECK(b.products[1].second == M(Q, 3, 2, "x2_1"));

  auto f43 = maximal_minors(GenericMatrix(4, 3), Q);
  auto d = laplace_strength_bound(f43, 0);
  REQUIRE(d.bound == 2);
  REQUIRE(d.products.size() == 3);
  CHECK(d.products[0].first == M(Q, 4, 3, "x2_1"));
  CHECK(d.products[0].second == M(Q, 4, 3, "x3_2*x4_3 - x3_3*x4_2"));
  CHECK(d.products[1].first == M(Q, 4, 3, "-x2_2"));
  CHECK(d.products[1].second == M(Q, 4, 3, "x3_1*x4_3 - x4_1*x3_3"));
  CHECK(d.products[2].first == M(Q, 4, 3, "x2_3"));
  CHECK(d.products[2].second == M(Q, 4, 3, "x3_1*x4_2 - x3_2*x4_1"));
  for (std::size_t i = 0; i < 4; ++i) CHECK(laplace_strength_bound(f43, i).reconstruct(Q, 12) == f43.minors[i]);
  for (std::size_t i = 0; i < 3; ++i) CHECK(laplace_strength_bound(f32, i).reconstruct(Q, 6) == f32.minors[i]);

  auto f21 = maximal_minors(GenericMatrix(2, 1), Q);
  auto lin = laplace_strength_bound(f21, 0);
  CHECK_FALSE(lin.bound.has_value());
  CHECK(lin.products.empty());
}

TEST_CASE("expansion independence and the alternating property") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto m = random_matrix(rng, n);
    auto ref = determinant_laplace(m);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(determinant_laplace(m, {Expansion::Kind::Row, k}) == ref);
      CHECK(determinant_laplace(m, {Expansion::Kind::Column, k}) == ref);
    }
    auto swapped = m;
    std::swap(swapped[0], swapped[n - 1]);
    CHECK(determinant_laplace(swapped) == -ref);
  }
}

TEST_CASE("minors vanish on rank-deficient matrices") {
  std::mt19937_64 rng(73);
  PrimeField f101(101);
  std::uniform_int_distribution<std::uint32_t> c(0, 100);
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 3}}) {
    GenericMatrix g(rows, cols);
    auto fam = maximal_minors(g, f101);
    for (int trial = 0; trial < 200; ++trial) {
      // rank <= cols - 1: columns spanned by cols - 1 random vectors
      std::vector<std::vector<std::uint32_t>> basis(cols - 1, std::vector<std::uint32_t>(rows));
      for (auto& v : basis)
        for (auto& x : v) x = c(rng);
      std::vector<std::uint32_t> point(rows * cols, 0);
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k + 1 < cols; ++k) {
          auto w = c(rng);
          for (std::size_t i = 0; i < rows; ++i)
            point[g.variable(i, j)] = f101.add(point[g.variable(i, j)], f101.mul(w, basis[k][i]));
        }
      for (const auto& f : fam.minors) CHECK(f.evaluate(std::span<const std::uint32_t>(point)) == 0);
    }
  }
}

TEST_CASE("Hilbert-Burch codimension") {
  PrimeField big(32003);
  CHECK(hilbert_burch_codim_check(maximal_minors(GenericMatrix(3, 2), Q)).passed);
  CHECK(hilbert_burch_codim_check(maximal_minors(GenericMatrix(3, 2), big)).passed);
  auto c43 = hilbert_burch_codim_check(maximal_minors(GenericMatrix(4, 3), big));
  CHECK(c43.codim == 2);
  CHECK(c43.passed);
  auto c21 = hilbert_burch_codim_check(maximal_minors(GenericMatrix(2, 1), Q));
  CHECK(c21.codim == 2);
  CHECK(c21.passed);
}

TEST_CASE("three minors are not a regular sequence") {
  PrimeField big(32003);
  auto r32 = not_regular_by_containment(maximal_minors(GenericMatrix(3, 2), Q), 0, 1, 2);
  CHECK(r32.codim == 2);
  CHECK(r32.passed);
  auto r43 = not_regular_by_containment(maximal_minors(GenericMatrix(4, 3), big), 0, 1, 2);
  CHECK(r43.codim == 2);
  CHECK(r43.passed);
  CHECK_THROWS_AS(not_regular_by_containment(maximal_minors(GenericMatrix(2, 1), Q), 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(not_regular_by_containment(maximal_minors(GenericMatrix(3, 2), Q), 0, 0, 1), std::invalid_argument);
}

TEST_CASE("family export round trip") {
  auto fam = maximal_minors(GenericMatrix(3, 2), Q);
  auto text = export_family(fam, Q);
  auto in = read_ideal_text(text);
  CHECK(in.ring.nvars == 6);
  REQUIRE(in.ring.matrix.has_value());
  CHECK(in.ring.matrix->first == 3);
  auto gens = parse_generators(in, Q);
  CHECK(gens == fam.minors);
}

TEST_CASE("ideal file parsing") {
  auto in = read_ideal_text("# system\nring n=3 field=fp:7\nx1\n\nx2 # second\nx3\n");
  CHECK(in.ring.field == "fp:7");
  CHECK(in.lines.size() == 3);
  CHECK(in.lines[1].first == 5);
  CHECK_THROWS_AS(read_ideal_text("x1\n"), ParseError);
  CHECK_THROWS_AS(parse_ring_header("ring n=3 field=fp:8"), ParseError);
  CHECK_THROWS_AS(parse_ring_header("ring field=q"), ParseError);
  auto h = parse_ring_header("n=12 field=q matrix=4x3");
  CHECK(h.nvars == 12);
  CHECK(format_ring_header(h) == "ring n=12 field=q matrix=4x3");
  auto bad = read_ideal_text("ring n=2 field=q\nx1\nx1 +* x2\n");
  try {
    parse_generators(bad, Q);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
