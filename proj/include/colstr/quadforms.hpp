#pragma once

// Quadratic forms as Gram matrices: rank, the rank-to-strength law, pencils,
// minrank (closed formula and finite-field scan), the Jacobian minor ideal of
// a diagonal pair with its coordinate primary decomposition, and the
// primality certificate built on it.

#include "colstr/groebner.hpp"
#include "colstr/kernels.hpp"
#include "colstr/linalg.hpp"
#include "colstr/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace colstr {

/// q(x) = x^T G x with G symmetric, so an off-diagonal coefficient c of
/// x_i x_j is stored as c/2 in both G(i,j) and G(j,i).
template <class F>
class QuadraticForm {
 public:
  using Element = typename F::Element;

  /// Throws DomainError in characteristic 2 or for a non-symmetric matrix.
  explicit QuadraticForm(Matrix<F> gram);
  /// Throws std::invalid_argument unless q is zero or homogeneous of degree 2.
  static QuadraticForm from_polynomial(const Polynomial<F>& q);
  static QuadraticForm diagonal(const F& field, const std::vector<Element>& coeffs);

  const F& field() const { return gram_.field(); }
  std::size_t nvars() const { return gram_.rows(); }
  const Matrix<F>& gram() const { return gram_; }

  Polynomial<F> to_polynomial() const;
  int rank() const { return static_cast<int>(gram_.rank()); }
  bool is_zero() const { return rank() == 0; }
  /// T^T G T.
  QuadraticForm transformed(const Matrix<F>& t) const;

  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b) { return a.gram_ == b.gram_; }

 private:
  Matrix<F> gram_;
};

/// Linear combination sum c_i q_i of forms in the same ring.
template <class F>
QuadraticForm<F> combine(const std::vector<QuadraticForm<F>>& forms, const std::vector<typename F::Element>& coeffs);

/// ceil(k/2) - 1; the zero form (k = 0) has strength -1.
int strength_from_rank(int k);

/// Row-major residues of the Gram matrix, for the scan kernels.
std::vector<std::uint32_t> gram_residues(const QuadraticForm<PrimeField>& q);

/// f1 = sum a_i x_i^2 and f2 = sum b_i x_i^2 over Q.  When some a_i is zero
/// the pair is normalized through f1' = f1 + shift * f2 so that every a'_i is
/// nonzero; alpha lists the distinct ratios b_i / a'_i in ascending order,
/// lambda their multiplicities and mu the partial sums of lambda.  Over an
/// algebraically closed field rescaling x_i by sqrt(a'_i) turns f1' into the
/// sum of squares and f2 into sum (b_i / a'_i) x_i^2, so the ratios are the
/// normalized coefficients.
struct DiagonalPair {
  std::vector<mpq_class> a, b;
  mpq_class shift;
  std::vector<mpq_class> alpha;
  std::vector<std::size_t> lambda, mu;
  std::vector<std::size_t> block;  // block index of each variable

  /// Throws DomainError when some variable occurs in neither form (drop it
  /// first) or the lengths differ.
  static DiagonalPair from_diagonals(std::vector<mpq_class> a, std::vector<mpq_class> b);

  std::size_t nvars() const { return a.size(); }
  std::size_t blocks() const { return alpha.size(); }
  mpq_class ratio(std::size_t i) const { return b[i] / (a[i] + shift * b[i]); }
  QuadraticForm<RationalField> f1() const;
  QuadraticForm<RationalField> f2() const;
};

struct Diagonalization {
  enum class Status { Ok, Unsupported, DegenerateF1 };
  Status status = Status::Unsupported;
  std::optional<DiagonalPair> pair;
  /// Columns are the new basis: T^T A T = diag(a), T^T B T = diag(b).
  std::optional<Matrix<RationalField>> transform;
  std::string message;
};

/// Simultaneous congruence diagonalization over Q.  Succeeds when the Gram
/// matrix A of f1 is invertible and A^{-1} B is diagonalizable with rational
/// eigenvalues; reports Unsupported otherwise and DegenerateF1 for singular A.
Diagonalization simultaneous_diagonalize(const QuadraticForm<RationalField>& f1,
                                         const QuadraticForm<RationalField>& f2);

enum class MinrankMethod { Formula, FiniteFieldScan };
std::string to_string(MinrankMethod m);

template <class F>
struct MinrankResult {
  int value = 0;
  std::vector<typename F::Element> witness;  // coefficients on (f1, f2)
  MinrankMethod method = MinrankMethod::Formula;
};

/// n - max lambda, witnessed by f2 - alpha_t f1' for a maximizing block t
/// (expressed on the original f1, f2).
MinrankResult<RationalField> minrank_formula(const DiagonalPair& dp);

/// Minimum Gram rank over the p + 1 points of the projective line of
/// combinations.  Throws DomainError for p = 2.
MinrankResult<PrimeField> minrank_bruteforce(const QuadraticForm<PrimeField>& f1, const QuadraticForm<PrimeField>& f2,
                                             kernels::Exec exec = kernels::Exec::Parallel);

/// Ideal of the 2x2 minors of the Jacobian of (f1, f2): the products
/// (a_i b_j - a_j b_i) x_i x_j with nonzero coefficient (the constant factor
/// 4 is dropped).
Ideal<RationalField> jacobian_minor_ideal(const DiagonalPair& dp);

/// One coordinate ideal per block t, generated by the variables outside t.
std::vector<Ideal<RationalField>> coordinate_primary_components(const DiagonalPair& dp);

struct JacobianIdentityReport {
  bool intersection_matches = false;  // J equals the intersection of the I_t
  int codim_j = 0;
  int formula = 0;     // n - max lambda
  int bruteforce = 0;  // minrank scan over F_p
  std::uint32_t prime = 0;
  bool passed = false;
};

JacobianIdentityReport verify_jacobian_identity(const DiagonalPair& dp, std::uint32_t p = 101);

enum class PrimeVerdict { CertifiedPrime, Inconclusive };
std::string to_string(PrimeVerdict v);

struct PrimeCertificate {
  PrimeVerdict verdict = PrimeVerdict::Inconclusive;
  int codim_j = 0;
};

/// CertifiedPrime iff codim of the Jacobian minor ideal exceeds 4.
PrimeCertificate prime_certificate(const DiagonalPair& dp);

struct CollectiveStrength {
  int strength = -1;
  int min_rank = 0;
  std::vector<std::uint32_t> witness;  // combination coefficients
  kernels::RankScan scan;
};

/// Minimum strength over all points of the projective space of
/// combinations of the forms over F_p.  -1 when some combination vanishes.
CollectiveStrength collective_strength_quadrics(const std::vector<QuadraticForm<PrimeField>>& forms,
                                                kernels::Exec exec = kernels::Exec::Parallel);

/// The implication chain for three quadrics, each step with its own value.
struct N32Report {
  std::uint32_t prime = 0;
  CollectiveStrength collective;          // finite-field evidence
  MinrankResult<PrimeField> minrank_scan;
  Diagonalization::Status diagonalization = Diagonalization::Status::Unsupported;
  std::string diagonalization_message;
  std::optional<int> minrank_formula;
  std::optional<int> codim_j;
  std::optional<PrimeVerdict> prime_verdict;
  bool meets_threshold_4 = false;  // minrank >= 4
  bool meets_threshold_5 = false;  // minrank >= 5, equivalent to strength >= 2
  bool regular = false;            // codimension test, independent of the chain
  bool consistent = false;         // no implication of the chain is violated
};

N32Report theorem_n32_report(const QuadraticForm<RationalField>& f1, const QuadraticForm<RationalField>& f2,
                             const QuadraticForm<RationalField>& f3, std::uint32_t p = 101,
                             kernels::Exec exec = kernels::Exec::Parallel);

/// Reduction of a rational form modulo p.
QuadraticForm<PrimeField> reduce_mod(const QuadraticForm<RationalField>& q, const PrimeField& field);

}  // namespace colstr
