#pragma once

// Strength certification for minor families: classification of pairs of
// column-homogeneous linear forms, the column-degree constraint checker for
// a strength-one decomposition ab + cd, modular exclusion matrices, small
// brute-force strength oracles, and the certificates assembled from them.

#include "colstr/determinantal.hpp"
#include "colstr/grading.hpp"
#include "colstr/groebner.hpp"
#include "colstr/kernels.hpp"
#include "colstr/linalg.hpp"
#include "colstr/polynomial.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace colstr {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Linear pairs

/// A linear form supported on a single column of a generic matrix.
template <class F>
class GradedLinearForm {
 public:
  using Element = typename F::Element;

  /// Throws std::invalid_argument unless f is a nonzero linear form whose
  /// variables all lie in one column of m.
  GradedLinearForm(const Polynomial<F>& f, const GenericMatrix& m);

  const Polynomial<F>& polynomial() const { return poly_; }
  std::size_t column() const { return column_; }
  /// Coefficient of x_{i, column} for every row i.
  const std::vector<Element>& row_coefficients() const { return rows_; }

 private:
  Polynomial<F> poly_;
  std::size_t column_ = 0;
  std::vector<Element> rows_;
};

enum class LinearPairTag { SameColumn, ParallelRows, Skew };
std::string to_string(LinearPairTag t);

/// The witness is an action M -> A * M * B of GL(rows) x GL(cols) on the
/// generic matrix, applied as a substitution of variables.  It sends the
/// first form to x_{1,1} and the second to the representative x_{2,1},
/// x_{1,2} or x_{2,2} of the tag.  B is a monomial matrix.
template <class F>
struct LinearPairClass {
  LinearPairTag tag;
  Matrix<F> row_action;     // A, rows x rows
  Matrix<F> column_action;  // B, cols x cols
};

/// x_{1,1} paired with x_{2,1}, x_{1,2} or x_{2,2}.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> representative_pair(LinearPairTag tag, const GenericMatrix& m, const F& field);

/// Throws std::invalid_argument when the two forms are linearly dependent
/// or the matrix is too small to hold the representative.
template <class F>
LinearPairClass<F> classify_linear_pair(const GradedLinearForm<F>& l1, const GradedLinearForm<F>& l2,
                                        const GenericMatrix& m);

/// Substitutes x_{i,j} -> (A M B)_{i,j}.
template <class F>
Polynomial<F> apply_matrix_action(const Polynomial<F>& f, const GenericMatrix& m, const Matrix<F>& a,
                                  const Matrix<F>& b);

// ---------------------------------------------------------------------------
// Column-degree constraints for ab + cd

/// Column-homogeneous pieces of a, c (linear) and b, d (quadric) over a
/// generic matrix with three columns.  Linear pieces are indexed by
/// linear_degrees(), quadric pieces by quadric_degrees().
template <class F>
struct GradedDecomposition {
  std::vector<Polynomial<F>> a, c;  // three pieces each
  std::vector<Polynomial<F>> b, d;  // six pieces each

  /// (1,0,0), (0,1,0), (0,0,1).
  static const std::array<MultiDegree, 3>& linear_degrees();
  /// (2,0,0), (0,2,0), (0,0,2), (1,1,0), (1,0,1), (0,1,1).
  static const std::array<MultiDegree, 6>& quadric_degrees();

  /// All pieces zero.
  static GradedDecomposition zero(const F& field, std::size_t nvars);
  /// Splits arbitrary a, b, c, d into column components.  Throws
  /// std::invalid_argument unless the matrix has three columns, a and c are
  /// zero or linear and b and d are zero or quadrics.
  static GradedDecomposition split(const GenericMatrix& m, const Polynomial<F>& a, const Polynomial<F>& b,
                                   const Polynomial<F>& c, const Polynomial<F>& d);

  Polynomial<F> a_total() const;
  Polynomial<F> b_total() const;
  Polynomial<F> c_total() const;
  Polynomial<F> d_total() const;
  /// ab + cd.
  Polynomial<F> product() const;
  /// a100 b011 + a010 b101 + a001 b110 + c100 d011 + c010 d101 + c001 d110.
  Polynomial<F> balanced_part() const;
};

template <class F>
struct ConstraintViolation {
  MultiDegree degree;
  std::optional<int> equation;  // 1..9 for the nine off-balance column degrees
  Polynomial<F> component;
};

template <class F>
struct ConstraintReport {
  bool holds = false;        // ab + cd lives in column degree (1,1,1) only
  bool zero_product = false;  // ab + cd == 0
  std::vector<ConstraintViolation<F>> violations;
};

/// Equation number of an off-balance cubic column degree, or nullopt.
std::optional<int> constraint_equation(const MultiDegree& d);

template <class F>
ConstraintReport<F> grading_constraint_check(const GradedDecomposition<F>& dec, const GenericMatrix& m);

// ---------------------------------------------------------------------------
// Exclusion matrices

/// A coordinate ideal <x_{r1,c1}, x_{r2,c2}> (zero-based positions).
struct RepresentativeIdeal {
  std::string name;
  std::pair<std::size_t, std::size_t> first, second;

  template <class F>
  Ideal<F> ideal(const GenericMatrix& m, const F& field) const {
    return Ideal<F>(field, m.nvars(),
                    {m.entry(field, first.first, first.second), m.entry(field, second.first, second.second)});
  }
};

/// <x11,x12>, <x11,x21>, <x11,x22>: one per LinearPairTag, in the order
/// ParallelRows, SameColumn, Skew.
std::vector<RepresentativeIdeal> standard_classes();
/// <x11,x13>.
RepresentativeIdeal extra_class();
/// Every ideal generated by two distinct variables of the matrix.
std::vector<RepresentativeIdeal> all_coordinate_pairs(const GenericMatrix& m);

template <class F>
struct ExclusionReport {
  std::string ideal;
  std::vector<Monomial> monomials;  // matrix rows, descending degrevlex
  Matrix<F> matrix;                 // rows = monomials, columns = family members
  std::vector<std::vector<typename F::Element>> kernel;
  std::size_t kernel_dimension() const { return kernel.size(); }
  bool trivial() const { return kernel.empty(); }
};

/// Reduces every family member modulo the ideal and records the
/// coefficients of the surviving monomials.
template <class F>
ExclusionReport<F> exclusion_matrix(const std::vector<Polynomial<F>>& family, const Ideal<F>& ideal,
                                    const std::string& name = "");

template <class F>
struct ExclusionSummary {
  bool excluded = false;  // every kernel is trivial
  std::vector<ExclusionReport<F>> reports;
};

template <class F>
ExclusionSummary<F> strength_one_excluded(const std::vector<Polynomial<F>>& family, const GenericMatrix& m,
                                          const std::vector<RepresentativeIdeal>& classes);

// ---------------------------------------------------------------------------
// Brute-force strength of small quadrics

enum class SearchField { Base, QuadraticExtension };

/// Least s <= s_max with f a sum of s + 1 products of linear forms over F_p
/// (or over GF(p^2)); -1 for f = 0; nullopt beyond s_max.  Requires a
/// homogeneous quadric with n <= 4 and p in {3, 5}; throws
/// std::invalid_argument otherwise.  Product tables are cached per (p, n,
/// search field).
std::optional<int> strength_bruteforce_small(const Polynomial<PrimeField>& f, int s_max,
                                             SearchField where = SearchField::Base,
                                             kernels::Exec exec = kernels::Exec::Parallel);

// ---------------------------------------------------------------------------
// Certificates

using Json = nlohmann::ordered_json;

struct SubVerdict {
  enum class Kind { Machine, Cited };
  std::string name;
  Kind kind = Kind::Machine;
  bool passed = false;
  std::optional<Json> witness;
  std::string paper_ref;
};

struct Environment {
  std::string field;
  std::vector<std::uint32_t> primes;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  Json options = Json::object();
};

struct Certificate {
  std::string claim;
  bool passed = false;
  std::vector<SubVerdict> subverdicts;
  Environment environment;

  /// Recomputes passed from the sub-verdicts.
  void finalize();
};

Json to_json(const Certificate& c);
/// Throws std::invalid_argument on schema violations.
Certificate certificate_from_json(const Json& j);
std::string dump(const Certificate& c);

struct N32LowerOptions {
  std::uint32_t p = 5;
  bool tamper = false;  // replace f3 by x11^2
  kernels::Exec exec = kernels::Exec::Parallel;
};
Certificate certify_n32_lower(const N32LowerOptions& o = {});

struct N32UpperOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 12;
  std::uint32_t p = 101;
  kernels::Exec exec = kernels::Exec::Parallel;
};
Certificate certify_n32_upper_sample(const N32UpperOptions& o = {});

struct N33Options {
  std::uint32_t p = 32003;
  bool four_minor = true;    // also run the exclusions on (f1, f2, f3, f4)
  bool extra_class = false;  // add <x11, x13> to the classes
  bool exhaustive = false;   // every coordinate pair instead of the pivot x11
};
Certificate certify_n33(const N33Options& o = {});

struct SmallROptions {
  std::uint64_t seed = 1;
  std::size_t pairs = 100;
  std::uint32_t p = 32003;
};
Certificate certify_small_r(const SmallROptions& o = {});

struct RecheckResult {
  bool reproduced = false;  // recomputation is identical to the input
  bool passed = false;      // reproduced and the certificate claims a pass
  std::string message;
};

/// Re-runs the certificate described by the document's options and compares
/// the result exactly.
RecheckResult recheck(const std::string& text);

/// Certificate name of a document ("n32-lower", ...), read from its options.
std::string certificate_name(const Certificate& c);

}  // namespace colstr
