#include "doctest.h"

#include "colstr/quadforms.hpp"
#include "colstr/strengthcert.hpp"
#include "test_support.hpp"

#include <random>

using namespace colstr;
using colstr::testing::M;
using colstr::testing::P;

namespace {

const RationalField Q;
const GenericMatrix G43(4, 3);

Polynomial<RationalField> m43(const char* text) { return M(Q, 4, 3, text); }

GradedLinearForm<RationalField> lin(const char* text) { return GradedLinearForm<RationalField>(m43(text), G43); }

// Random nonzero linear form supported on one column.
Polynomial<RationalField> random_column_form(std::mt19937_64& rng, std::size_t col) {
  std::uniform_int_distribution<int> c(-3, 3);
  for (;;) {
    Polynomial<RationalField> f(Q, G43.nvars());
    for (std::size_t i = 0; i < G43.rows(); ++i)
      f += G43.entry(Q, i, col).scaled(mpq_class(c(rng)));
    if (!f.is_zero()) return f;
  }
}

// The same row coefficients placed in another column.
Polynomial<RationalField> move_to_column(const Polynomial<RationalField>& f, std::size_t col) {
  GradedLinearForm<RationalField> l(f, G43);
  Polynomial<RationalField> g(Q, G43.nvars());
  for (std::size_t i = 0; i < G43.rows(); ++i) g += G43.entry(Q, i, col).scaled(l.row_coefficients()[i]);
  return g;
}

Matrix<RationalField> random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(-4, 4);
  for (;;) {
    Matrix<RationalField> m(Q, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = mpq_class(c(rng));
    if (m.rank() == n) return m;
  }
}

}  // namespace

TEST_CASE("linear pair classification examples") {
  auto same = classify_linear_pair(lin("x1_1"), lin("x2_1"), G43);
  CHECK(same.tag == LinearPairTag::SameColumn);

  auto l1 = lin("x1_1 + 2*x2_1"), l2 = lin("x1_2 + 2*x2_2");
  auto par = classify_linear_pair(l1, l2, G43);
  CHECK(par.tag == LinearPairTag::ParallelRows);
  CHECK(apply_matrix_action(l1.polynomial(), G43, par.row_action, par.column_action) == m43("x1_1"));
  CHECK(apply_matrix_action(l2.polynomial(), G43, par.row_action, par.column_action) == m43("x1_2"));

  CHECK(classify_linear_pair(lin("x1_1"), lin("x2_2"), G43).tag == LinearPairTag::Skew);
  CHECK(classify_linear_pair(lin("x1_1"), lin("3*x1_2"), G43).tag == LinearPairTag::ParallelRows);
  CHECK(to_string(LinearPairTag::Skew) == "Skew");
}

TEST_CASE("linear pair classification errors") {
  CHECK_THROWS_AS(lin("x1_1 + x1_2"), std::invalid_argument);
  CHECK_THROWS_AS(lin("x1_1*x2_1"), std::invalid_argument);
  CHECK_THROWS_AS(GradedLinearForm<RationalField>(Polynomial<RationalField>(Q, 12), G43), std::invalid_argument);
  CHECK_THROWS_AS(classify_linear_pair(lin("x1_1 - x3_1"), lin("2*x1_1 - 2*x3_1"), G43), std::invalid_argument);
  GenericMatrix column(4, 1);
  auto a = GradedLinearForm<RationalField>(column.entry(Q, 0, 0), column);
  auto b = GradedLinearForm<RationalField>(column.entry(Q, 1, 0), column);
  CHECK(classify_linear_pair(a, b, column).tag == LinearPairTag::SameColumn);
}

TEST_CASE("the witness action sends random pairs to their representative") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> col(0, 2);
  int seen[3] = {0, 0, 0};
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t c1 = col(rng), c2 = col(rng);
    auto f1 = random_column_form(rng, c1);
    auto f2 = trial % 4 == 0 && c1 != c2 ? move_to_column(f1, c2).scaled(mpq_class(-2)) : random_column_form(rng, c2);
    GradedLinearForm<RationalField> l1(f1, G43), l2(f2, G43);
    LinearPairClass<RationalField> cls{LinearPairTag::Skew, Matrix<RationalField>(Q, 1, 1), Matrix<RationalField>(Q, 1, 1)};
    try {
      cls = classify_linear_pair(l1, l2, G43);
    } catch (const std::invalid_argument&) {
      CHECK(c1 == c2);  // only same-column pairs can be dependent
      continue;
    }
    ++seen[static_cast<int>(cls.tag)];
    CHECK(cls.row_action.rank() == 4);
    CHECK(cls.column_action.rank() == 3);
    auto rep = representative_pair(cls.tag, G43, Q);
    auto t1 = apply_matrix_action(f1, G43, cls.row_action, cls.column_action);
    auto t2 = apply_matrix_action(f2, G43, cls.row_action, cls.column_action);
    CHECK(t1 == rep.first);
    CHECK(t2 == rep.second);
    auto again = classify_linear_pair(GradedLinearForm<RationalField>(t1, G43), GradedLinearForm<RationalField>(t2, G43), G43);
    CHECK(again.tag == cls.tag);
    CHECK((c1 == c2) == (cls.tag == LinearPairTag::SameColumn));
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

TEST_CASE("the witness action keeps the span of the maximal minors") {
  // Cauchy-Binet: a maximal minor of A M B is a combination of the maximal
  // minors of M.  In degree 3 ideal membership is span membership.
  auto fam = maximal_minors(G43, Q);
  auto cls = classify_linear_pair(lin("x1_1 + x2_1"), lin("x3_2"), G43);
  auto t = apply_matrix_action(fam.minors[0], G43, cls.row_action, cls.column_action);
  CHECK(t.is_homogeneous());
  CHECK(t.total_degree() == 3);
  auto mdeg = multidegree(t, G43.column_grading());
  REQUIRE(mdeg.homogeneous());
  CHECK(mdeg.degree == MultiDegree{1, 1, 1});
  Ideal<RationalField> ideal(Q, 12, fam.minors);
  CHECK(buchberger(ideal).contains(t));
}

TEST_CASE("constraint checker examples") {
  auto dec = GradedDecomposition<RationalField>::split(G43, m43("x1_1"), m43("x2_2*x3_3"), m43("x2_1"), m43("x3_2*x4_3"));
  auto ok = grading_constraint_check(dec, G43);
  CHECK(ok.holds);
  CHECK_FALSE(ok.zero_product);
  CHECK(ok.violations.empty());
  CHECK(dec.balanced_part() == dec.product());

  dec.b[0] = m43("x2_1*x3_1");
  auto bad = grading_constraint_check(dec, G43);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].degree == MultiDegree{3, 0, 0});
  CHECK(bad.violations[0].equation == 1);
  CHECK(bad.violations[0].component == m43("x1_1*x2_1*x3_1"));

  auto zero = grading_constraint_check(GradedDecomposition<RationalField>::zero(Q, 12), G43);
  CHECK(zero.holds);
  CHECK(zero.zero_product);
}

TEST_CASE("constraint equation numbering") {
  CHECK(constraint_equation({3, 0, 0}) == 1);
  CHECK(constraint_equation({1, 2, 0}) == 2);
  CHECK(constraint_equation({1, 0, 2}) == 3);
  CHECK(constraint_equation({2, 1, 0}) == 4);
  CHECK(constraint_equation({0, 3, 0}) == 5);
  CHECK(constraint_equation({0, 1, 2}) == 6);
  CHECK(constraint_equation({2, 0, 1}) == 7);
  CHECK(constraint_equation({0, 0, 3}) == 8);
  CHECK(constraint_equation({0, 2, 1}) == 9);
  CHECK_FALSE(constraint_equation({1, 1, 1}).has_value());
}

TEST_CASE("constraint checker on random decompositions") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  using D = GradedDecomposition<RationalField>;
  auto grading = G43.column_grading();
  int accepted = 0, rejected = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto a = colstr::testing::random_homogeneous(rng, Q, 12, 1, 3, 3);
    auto c = colstr::testing::random_homogeneous(rng, Q, 12, 1, 3, 3);
    auto b = colstr::testing::random_homogeneous(rng, Q, 12, 2, 4, 3);
    auto d = colstr::testing::random_homogeneous(rng, Q, 12, 2, 4, 3);
    auto dec = D::split(G43, a, b, c, d);
    if (trial % 2 == 0) {
      // one linear piece each, paired with the quadric piece completing it
      // to (1,1,1), so the product is column-homogeneous
      std::size_t ka = pick(rng), kc = pick(rng);
      const Polynomial<RationalField> zero(Q, 12);
      for (std::size_t k = 0; k < 3; ++k) {
        if (k != ka) dec.a[k] = zero;
        if (k != kc) dec.c[k] = zero;
      }
      for (std::size_t k = 0; k < 6; ++k) {
        if (k != 5 - ka) dec.b[k] = zero;
        if (k != 5 - kc) dec.d[k] = zero;
      }
    }
    CHECK(dec.a_total() + dec.c_total() + dec.b_total() + dec.d_total() ==
          dec.a[0] + dec.a[1] + dec.a[2] + dec.c[0] + dec.c[1] + dec.c[2] + dec.b[0] + dec.b[1] + dec.b[2] +
              dec.b[3] + dec.b[4] + dec.b[5] + dec.d[0] + dec.d[1] + dec.d[2] + dec.d[3] + dec.d[4] + dec.d[5]);
    auto r = grading_constraint_check(dec, G43);
    auto prod = dec.product();
    // violations plus the balanced component rebuild the product
    Polynomial<RationalField> rebuilt = component(prod, grading, {1, 1, 1});
    for (const auto& v : r.violations) {
      CHECK(v.equation.has_value());
      CHECK_FALSE(v.component.is_zero());
      rebuilt += v.component;
    }
    CHECK(rebuilt == prod);
    CHECK(component(prod, grading, {1, 1, 1}) == dec.balanced_part());
    if (r.holds) {
      ++accepted;
      CHECK(dec.balanced_part() == prod);
    } else {
      ++rejected;
    }
  }
  CHECK(accepted > 20);
  CHECK(rejected > 20);
}

TEST_CASE("split rejects malformed inputs") {
  CHECK_THROWS_AS(GradedDecomposition<RationalField>::split(G43, m43("x1_1*x1_2"), m43("x1_1*x1_2"), m43("x1_1"),
                                                            m43("x1_1*x1_2")),
                  std::invalid_argument);
  GenericMatrix g32(3, 2);
  auto z = Polynomial<RationalField>(Q, 6);
  CHECK_THROWS_AS(GradedDecomposition<RationalField>::split(g32, z, z, z, z), std::invalid_argument);
  auto dec = GradedDecomposition<RationalField>::zero(Q, 12);
  dec.a[0] = m43("x1_2");  // column 2 placed in the column-1 slot
  CHECK_THROWS_AS(grading_constraint_check(dec, G43), std::invalid_argument);
}

TEST_CASE("exclusion matrices of the 4x3 family") {
  auto fam = maximal_minors(G43, Q);
  std::vector<Polynomial<RationalField>> three(fam.minors.begin(), fam.minors.begin() + 3);
  auto classes = standard_classes();
  REQUIRE(classes.size() == 3);
  CHECK(classes[0].name == "<x11,x12>");
  CHECK(classes[1].name == "<x11,x21>");
  CHECK(classes[2].name == "<x11,x22>");

  auto s = strength_one_excluded(three, G43, classes);
  CHECK(s.excluded);
  REQUIRE(s.reports.size() == 3);
  CHECK(s.reports[0].monomials.size() == 10);
  CHECK(s.reports[1].monomials.size() == 10);
  // modulo <x11,x22> every one of the 11 surviving monomials is distinct
  CHECK(s.reports[2].monomials.size() == 11);
  for (const auto& r : s.reports) {
    CHECK(r.trivial());
    CHECK(r.matrix.cols() == 3);
    CHECK(r.matrix.rank() == 3);
  }

  CHECK(strength_one_excluded(fam.minors, G43, classes).excluded);
  auto extra = classes;
  extra.push_back(extra_class());
  CHECK(extra.back().name == "<x11,x13>");
  CHECK(strength_one_excluded(three, G43, extra).excluded);
  auto pairs = all_coordinate_pairs(G43);
  CHECK(pairs.size() == 66);
  CHECK(strength_one_excluded(three, G43, pairs).excluded);
}

TEST_CASE("exclusion detects dependent and low-strength families") {
  auto fam = maximal_minors(G43, Q);
  std::vector<Polynomial<RationalField>> dependent{fam.minors[0], fam.minors[0].scaled(mpq_class(2))};
  for (const auto& cls : standard_classes()) {
    auto r = exclusion_matrix(dependent, cls.ideal(G43, Q), cls.name);
    CHECK(r.kernel_dimension() >= 1);
  }
  std::vector<Polynomial<RationalField>> low{m43("x1_1*x2_2*x3_3 + x1_1*x4_2*x2_3")};
  auto s = strength_one_excluded(low, G43, standard_classes());
  CHECK_FALSE(s.excluded);
  CHECK(s.reports[0].monomials.empty());
  CHECK(s.reports[0].kernel_dimension() == 1);
}

TEST_CASE("exclusion kernels are invariant under re-mixing the family") {
  auto fam = maximal_minors(G43, Q);
  std::vector<Polynomial<RationalField>> three(fam.minors.begin(), fam.minors.begin() + 3);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    auto mix = random_invertible(rng, 3);
    std::vector<Polynomial<RationalField>> mixed;
    for (std::size_t j = 0; j < 3; ++j) {
      Polynomial<RationalField> g(Q, 12);
      for (std::size_t i = 0; i < 3; ++i) g += three[i].scaled(mix(i, j));
      mixed.push_back(g);
    }
    auto s = strength_one_excluded(mixed, G43, standard_classes());
    CHECK(s.excluded);
    auto singular = mixed;
    singular[2] = mixed[0] + mixed[1].scaled(mpq_class(trial + 1));
    CHECK_FALSE(strength_one_excluded(singular, G43, standard_classes()).excluded);
  }
}

TEST_CASE("brute-force strength of small quadrics") {
  PrimeField f3(3), f5(5);
  CHECK(strength_bruteforce_small(P(f3, 2, "x1*x2"), 3) == 0);
  CHECK(strength_bruteforce_small(P(f5, 2, "x1*x2"), 3) == 0);
  CHECK(strength_bruteforce_small(P(f3, 4, "x1*x2 + x3*x4"), 3) == 1);
  CHECK(strength_bruteforce_small(P(f5, 3, "x1^2 + x2^2 + x3^2"), 3) == 1);
  CHECK(strength_bruteforce_small(Polynomial<PrimeField>(f3, 3), 3) == -1);
  CHECK_FALSE(strength_bruteforce_small(P(f3, 4, "x1*x2 + x3*x4"), 0).has_value());

  CHECK_THROWS_AS(strength_bruteforce_small(P(f3, 2, "x1^3"), 2), std::invalid_argument);
  CHECK_THROWS_AS(strength_bruteforce_small(P(f3, 5, "x1*x5"), 2), std::invalid_argument);
  CHECK_THROWS_AS(strength_bruteforce_small(P(PrimeField(7), 2, "x1*x2"), 2), std::invalid_argument);
  CHECK_THROWS_AS(strength_bruteforce_small(P(f3, 2, "x1*x2 + x1"), 2), std::invalid_argument);
}

TEST_CASE("anisotropic quadrics over F_3 break the rank-to-strength law") {
  // Over the base field x1^2 + x2^2 does not factor, so its strength is 1
  // although its rank is 2.  Over GF(9) it splits and the law holds.
  PrimeField f3(3);
  auto q = P(f3, 2, "x1^2 + x2^2");
  CHECK(QuadraticForm<PrimeField>::from_polynomial(q).rank() == 2);
  CHECK(strength_from_rank(2) == 0);
  CHECK(strength_bruteforce_small(q, 3, SearchField::Base) == 1);
  CHECK(strength_bruteforce_small(q, 3, SearchField::QuadraticExtension) == 0);

  // A hyperbolic plane plus an anisotropic plane has no isotropic plane, so
  // two products cannot reach it over F_3.
  auto elliptic = P(f3, 4, "x1*x2 + x3^2 + x4^2");
  CHECK(strength_from_rank(4) == 1);
  CHECK(strength_bruteforce_small(elliptic, 3, SearchField::Base) == 2);
  CHECK(strength_bruteforce_small(elliptic, 3, SearchField::QuadraticExtension) == 1);
  CHECK(strength_bruteforce_small(P(f3, 4, "x1^2 + x2^2 + x3^2 + x4^2"), 3, SearchField::Base) == 1);
}

TEST_CASE("rank-to-strength law over GF(9) for every F_3 quadric in up to 3 variables") {
  PrimeField f3(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t width = n * (n + 1) / 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < width; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<Polynomial<PrimeField>::Term> terms;
      std::size_t c = code, k = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++k, c /= 3) {
          std::vector<unsigned> e(n, 0);
          ++e[i];
          ++e[j];
          terms.push_back({Monomial(e), static_cast<std::uint32_t>(c % 3)});
        }
      auto q = Polynomial<PrimeField>::from_terms(f3, n, std::move(terms));
      int law = strength_from_rank(QuadraticForm<PrimeField>::from_polynomial(q).rank());
      auto brute = strength_bruteforce_small(q, 3, SearchField::QuadraticExtension, kernels::Exec::Serial);
      REQUIRE(brute.has_value());
      CHECK(*brute == law);
    }
  }
}
