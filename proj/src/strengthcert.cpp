#include "colstr/strengthcert.hpp"

#include "colstr/gcd.hpp"
#include "colstr/quadforms.hpp"
#include "colstr/text.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

namespace colstr {

// ---------------------------------------------------------------------------
// Linear pairs

template <class F>
GradedLinearForm<F>::GradedLinearForm(const Polynomial<F>& f, const GenericMatrix& m)
    : poly_(f), rows_(m.rows(), f.field().zero()) {
  if (f.nvars() != m.nvars()) throw std::invalid_argument("linear form does not live on the matrix ring");
  if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != 1)
    throw std::invalid_argument("expected a nonzero linear form");
  bool first = true;
  for (const auto& t : f.terms()) {
    std::size_t v = t.monomial.support().front().first;
    std::size_t col = v % m.cols();
    if (first) column_ = col;
    else if (col != column_) throw std::invalid_argument("linear form is not homogeneous in the column grading");
    first = false;
    rows_[v / m.cols()] = t.coeff;
  }
}

std::string to_string(LinearPairTag t) {
  switch (t) {
    case LinearPairTag::SameColumn: return "SameColumn";
    case LinearPairTag::ParallelRows: return "ParallelRows";
    case LinearPairTag::Skew: return "Skew";
  }
  return "?";
}

template <class F>
std::pair<Polynomial<F>, Polynomial<F>> representative_pair(LinearPairTag tag, const GenericMatrix& m, const F& field) {
  std::size_t r = tag == LinearPairTag::ParallelRows ? 0 : 1;
  std::size_t c = tag == LinearPairTag::SameColumn ? 0 : 1;
  if (r >= m.rows() || c >= m.cols()) throw std::invalid_argument("matrix too small for the representative pair");
  return {m.entry(field, 0, 0), m.entry(field, r, c)};
}

namespace {

// Inverse of the matrix whose leading columns are `vectors`, completed by
// standard basis vectors in index order.
template <class F>
Matrix<F> inverse_of_completion(const F& field, const std::vector<std::vector<typename F::Element>>& vectors,
                                std::size_t n) {
  std::vector<std::vector<typename F::Element>> cols = vectors;
  for (std::size_t k = 0; k < n && cols.size() < n; ++k) {
    std::vector<typename F::Element> e(n, field.zero());
    e[k] = field.one();
    auto trial = cols;
    trial.push_back(e);
    Matrix<F> t(field, n, trial.size());
    for (std::size_t j = 0; j < trial.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) t(i, j) = trial[j][i];
    if (t.rank() == trial.size()) cols = std::move(trial);
  }
  Matrix<F> w(field, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w(i, j) = cols[j][i];
  auto inv = w.inverse();
  if (!inv) throw std::logic_error("completion is not invertible");
  return *inv;
}

template <class F>
std::size_t vector_rank(const F& field, const std::vector<std::vector<typename F::Element>>& vs) {
  Matrix<F> t(field, vs.size(), vs.front().size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) t(i, j) = vs[i][j];
  return t.rank();
}

}  // namespace

template <class F>
LinearPairClass<F> classify_linear_pair(const GradedLinearForm<F>& l1, const GradedLinearForm<F>& l2,
                                        const GenericMatrix& m) {
  const F& field = l1.polynomial().field();
  const auto& u = l1.row_coefficients();
  const auto& v = l2.row_coefficients();
  const bool same = l1.column() == l2.column();
  const std::size_t rk = vector_rank(field, {u, v});

  LinearPairTag tag;
  if (same) {
    if (rk < 2) throw std::invalid_argument("linear forms are dependent");
    tag = LinearPairTag::SameColumn;
  } else {
    tag = rk == 1 ? LinearPairTag::ParallelRows : LinearPairTag::Skew;
  }
  representative_pair(tag, m, field);  // size check

  // A^T sends u to e_0 and, unless the rows are parallel, v to e_1.
  std::vector<std::vector<typename F::Element>> lead{u};
  if (tag != LinearPairTag::ParallelRows) lead.push_back(v);
  Matrix<F> row_action = inverse_of_completion(field, lead, m.rows()).transpose();

  // B maps column l1 to e_0 and column l2 to e_1, scaled by 1/c when v = c u.
  const std::size_t cols = m.cols();
  Matrix<F> column_action(field, cols, cols);
  column_action(0, l1.column()) = field.one();
  std::size_t next = 1;
  if (!same) {
    typename F::Element scale = field.one();
    if (tag == LinearPairTag::ParallelRows) {
      for (std::size_t i = 0; i < u.size(); ++i)
        if (!F::is_zero(u[i])) {
          scale = field.div(u[i], v[i]);
          break;
        }
    }
    column_action(1, l2.column()) = scale;
    next = 2;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (j == l1.column() || (!same && j == l2.column())) continue;
    column_action(next++, j) = field.one();
  }
  return {tag, std::move(row_action), std::move(column_action)};
}

template <class F>
Polynomial<F> apply_matrix_action(const Polynomial<F>& f, const GenericMatrix& m, const Matrix<F>& a,
                                  const Matrix<F>& b) {
  const F& field = f.field();
  std::vector<Polynomial<F>> images;
  images.reserve(m.nvars());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<typename Polynomial<F>::Term> terms;
      for (std::size_t k = 0; k < m.rows(); ++k)
        for (std::size_t l = 0; l < m.cols(); ++l) {
          auto c = field.mul(a(i, k), b(l, j));
          if (!F::is_zero(c)) terms.push_back({Monomial::variable(m.nvars(), m.variable(k, l)), c});
        }
      images.push_back(Polynomial<F>::from_terms(field, m.nvars(), std::move(terms)));
    }
  return f.substitute(images);
}

// ---------------------------------------------------------------------------
// Column-degree constraints

template <class F>
const std::array<MultiDegree, 3>& GradedDecomposition<F>::linear_degrees() {
  static const std::array<MultiDegree, 3> d{MultiDegree{1, 0, 0}, MultiDegree{0, 1, 0}, MultiDegree{0, 0, 1}};
  return d;
}

template <class F>
const std::array<MultiDegree, 6>& GradedDecomposition<F>::quadric_degrees() {
  static const std::array<MultiDegree, 6> d{MultiDegree{2, 0, 0}, MultiDegree{0, 2, 0}, MultiDegree{0, 0, 2},
                                            MultiDegree{1, 1, 0}, MultiDegree{1, 0, 1}, MultiDegree{0, 1, 1}};
  return d;
}

template <class F>
GradedDecomposition<F> GradedDecomposition<F>::zero(const F& field, std::size_t nvars) {
  Polynomial<F> z(field, nvars);
  return {std::vector<Polynomial<F>>(3, z), std::vector<Polynomial<F>>(3, z), std::vector<Polynomial<F>>(6, z),
          std::vector<Polynomial<F>>(6, z)};
}

namespace {

template <class F, std::size_t N>
std::vector<Polynomial<F>> split_pieces(const Polynomial<F>& f, const GradingSpec& g,
                                        const std::array<MultiDegree, N>& degrees, const char* what) {
  std::vector<Polynomial<F>> pieces;
  Polynomial<F> sum(f.field(), f.nvars());
  for (const auto& d : degrees) {
    pieces.push_back(component(f, g, d));
    sum += pieces.back();
  }
  if (!(sum == f)) throw std::invalid_argument(std::string(what) + " has terms outside the expected degrees");
  return pieces;
}

template <class F>
Polynomial<F> sum_of(const std::vector<Polynomial<F>>& ps) {
  Polynomial<F> s(ps.front().field(), ps.front().nvars());
  for (const auto& p : ps) s += p;
  return s;
}

}  // namespace

template <class F>
GradedDecomposition<F> GradedDecomposition<F>::split(const GenericMatrix& m, const Polynomial<F>& a,
                                                     const Polynomial<F>& b, const Polynomial<F>& c,
                                                     const Polynomial<F>& d) {
  if (m.cols() != 3) throw std::invalid_argument("the constraint system is stated for three columns");
  auto g = m.column_grading();
  GradedDecomposition out;
  out.a = split_pieces(a, g, linear_degrees(), "a");
  out.c = split_pieces(c, g, linear_degrees(), "c");
  out.b = split_pieces(b, g, quadric_degrees(), "b");
  out.d = split_pieces(d, g, quadric_degrees(), "d");
  return out;
}

template <class F>
Polynomial<F> GradedDecomposition<F>::a_total() const { return sum_of(a); }
template <class F>
Polynomial<F> GradedDecomposition<F>::b_total() const { return sum_of(b); }
template <class F>
Polynomial<F> GradedDecomposition<F>::c_total() const { return sum_of(c); }
template <class F>
Polynomial<F> GradedDecomposition<F>::d_total() const { return sum_of(d); }

template <class F>
Polynomial<F> GradedDecomposition<F>::product() const {
  return a_total() * b_total() + c_total() * d_total();
}

template <class F>
Polynomial<F> GradedDecomposition<F>::balanced_part() const {
  // linear piece k pairs with the quadric piece completing it to (1,1,1)
  static constexpr std::size_t partner[3] = {5, 4, 3};
  Polynomial<F> s(a.front().field(), a.front().nvars());
  for (std::size_t k = 0; k < 3; ++k) s += a[k] * b[partner[k]] + c[k] * d[partner[k]];
  return s;
}

std::optional<int> constraint_equation(const MultiDegree& d) {
  static const std::map<MultiDegree, int> eq{{{3, 0, 0}, 1}, {{1, 2, 0}, 2}, {{1, 0, 2}, 3},
                                             {{2, 1, 0}, 4}, {{0, 3, 0}, 5}, {{0, 1, 2}, 6},
                                             {{2, 0, 1}, 7}, {{0, 0, 3}, 8}, {{0, 2, 1}, 9}};
  auto it = eq.find(d);
  if (it == eq.end()) return std::nullopt;
  return it->second;
}

template <class F>
ConstraintReport<F> grading_constraint_check(const GradedDecomposition<F>& dec, const GenericMatrix& m) {
  using D = GradedDecomposition<F>;
  if (m.cols() != 3 || dec.a.size() != 3 || dec.c.size() != 3 || dec.b.size() != 6 || dec.d.size() != 6)
    throw std::invalid_argument("malformed graded decomposition");
  auto g = m.column_grading();
  auto typed = [&](const Polynomial<F>& p, const MultiDegree& d) {
    auto r = multidegree(p, g);
    return r.kind == DegreeResult::Kind::Undefined || (r.homogeneous() && r.degree == d);
  };
  for (std::size_t k = 0; k < 3; ++k)
    if (!typed(dec.a[k], D::linear_degrees()[k]) || !typed(dec.c[k], D::linear_degrees()[k]))
      throw std::invalid_argument("linear piece has the wrong column degree");
  for (std::size_t k = 0; k < 6; ++k)
    if (!typed(dec.b[k], D::quadric_degrees()[k]) || !typed(dec.d[k], D::quadric_degrees()[k]))
      throw std::invalid_argument("quadric piece has the wrong column degree");

  ConstraintReport<F> r;
  auto prod = dec.product();
  r.zero_product = prod.is_zero();
  const MultiDegree balanced{1, 1, 1};
  for (auto& [deg, part] : components(prod, g))
    if (deg != balanced) r.violations.push_back({deg, constraint_equation(deg), part});
  r.holds = r.violations.empty();
  return r;
}

// ---------------------------------------------------------------------------
// Exclusion matrices

namespace {

std::string entry_name(std::size_t r, std::size_t c) {
  return "x" + std::to_string(r + 1) + (r < 9 && c < 9 ? "" : "_") + std::to_string(c + 1);
}

RepresentativeIdeal coordinate_ideal(std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
  return {"<" + entry_name(a.first, a.second) + "," + entry_name(b.first, b.second) + ">", a, b};
}

}  // namespace

std::vector<RepresentativeIdeal> standard_classes() {
  return {coordinate_ideal({0, 0}, {0, 1}), coordinate_ideal({0, 0}, {1, 0}), coordinate_ideal({0, 0}, {1, 1})};
}

RepresentativeIdeal extra_class() { return coordinate_ideal({0, 0}, {0, 2}); }

std::vector<RepresentativeIdeal> all_coordinate_pairs(const GenericMatrix& m) {
  std::vector<RepresentativeIdeal> out;
  for (std::size_t p = 0; p < m.nvars(); ++p)
    for (std::size_t q = p + 1; q < m.nvars(); ++q)
      out.push_back(coordinate_ideal({p / m.cols(), p % m.cols()}, {q / m.cols(), q % m.cols()}));
  return out;
}

template <class F>
ExclusionReport<F> exclusion_matrix(const std::vector<Polynomial<F>>& family, const Ideal<F>& ideal,
                                    const std::string& name) {
  if (family.empty()) throw std::invalid_argument("empty family");
  const F& field = ideal.field();
  auto basis = buchberger(ideal);
  std::vector<Polynomial<F>> reduced;
  static const MonomialOrder drl = MonomialOrder::degrevlex();
  auto desc = [](const Monomial& x, const Monomial& y) { return drl.greater(x, y); };
  std::set<Monomial, decltype(desc)> seen(desc);
  for (const auto& f : family) {
    reduced.push_back(basis.normal_form(f));
    for (const auto& t : reduced.back().terms()) seen.insert(t.monomial);
  }
  ExclusionReport<F> r{name, {seen.begin(), seen.end()}, Matrix<F>(field, seen.size(), family.size()), {}};
  std::map<Monomial, std::size_t> row;
  for (std::size_t i = 0; i < r.monomials.size(); ++i) row[r.monomials[i]] = i;
  for (std::size_t j = 0; j < reduced.size(); ++j)
    for (const auto& t : reduced[j].terms()) r.matrix(row.at(t.monomial), j) = t.coeff;
  r.kernel = r.matrix.kernel();
  return r;
}

template <class F>
ExclusionSummary<F> strength_one_excluded(const std::vector<Polynomial<F>>& family, const GenericMatrix& m,
                                          const std::vector<RepresentativeIdeal>& classes) {
  ExclusionSummary<F> s;
  s.excluded = true;
  for (const auto& cls : classes) {
    s.reports.push_back(exclusion_matrix(family, cls.ideal(m, family.front().field()), cls.name));
    s.excluded = s.excluded && s.reports.back().trivial();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Brute-force strength of small quadrics

std::optional<int> strength_bruteforce_small(const Polynomial<PrimeField>& f, int s_max, SearchField where,
                                             kernels::Exec exec) {
  const std::uint32_t p = f.field().modulus();
  const std::size_t n = f.nvars();
  if (p != 3 && p != 5) throw std::invalid_argument("brute-force strength supports p = 3 or 5");
  if (n == 0 || n > 4) throw std::invalid_argument("brute-force strength supports 1 to 4 variables");
  if (!f.is_zero() && (!f.is_homogeneous() || f.total_degree() != 2))
    throw std::invalid_argument("brute-force strength is limited to quadrics");
  if (s_max < 0) throw std::invalid_argument("s_max must be non-negative");

  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::size_t, bool>, std::unique_ptr<kernels::QuadricProducts>> cache;
  const bool ext = where == SearchField::QuadraticExtension;
  const kernels::QuadricProducts* table;
  {
    std::lock_guard lock(mutex);
    auto& slot = cache[{p, n, ext}];
    if (!slot)
      slot = std::make_unique<kernels::QuadricProducts>(
          ext ? SmallField::quadratic_extension(p) : SmallField::prime(p), n);
    table = slot.get();
  }

  std::vector<std::uint8_t> coeffs(table->coefficient_count(), 0);
  for (const auto& t : f.terms()) {
    auto s = t.monomial.support();
    std::size_t i = s[0].first, j = s.size() == 2 ? s[1].first : i;
    std::size_t k = i * n - i * (i - 1) / 2 + (j - i);
    coeffs[k] = table->field().from_base(t.coeff);
  }
  return kernels::quadric_strength(*table, coeffs, s_max, exec);
}

// ---------------------------------------------------------------------------
// Certificates

void Certificate::finalize() {
  passed = !subverdicts.empty() &&
           std::all_of(subverdicts.begin(), subverdicts.end(), [](const SubVerdict& s) { return s.passed; });
}

Json to_json(const Certificate& c) {
  Json j;
  j["claim"] = c.claim;
  j["passed"] = c.passed;
  j["subverdicts"] = Json::array();
  for (const auto& s : c.subverdicts) {
    Json v;
    v["name"] = s.name;
    v["kind"] = s.kind == SubVerdict::Kind::Machine ? "machine" : "cited";
    v["passed"] = s.passed;
    if (s.witness) v["witness"] = *s.witness;
    v["paper_ref"] = s.paper_ref;
    j["subverdicts"].push_back(std::move(v));
  }
  Json env;
  env["field"] = c.environment.field;
  env["primes"] = c.environment.primes;
  env["seed"] = c.environment.seed;
  env["version"] = c.environment.version;
  env["options"] = c.environment.options;
  j["environment"] = std::move(env);
  return j;
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.claim = j.at("claim").get<std::string>();
    c.passed = j.at("passed").get<bool>();
    for (const auto& v : j.at("subverdicts")) {
      SubVerdict s;
      s.name = v.at("name").get<std::string>();
      auto kind = v.at("kind").get<std::string>();
      if (kind != "machine" && kind != "cited") throw std::invalid_argument("unknown sub-verdict kind '" + kind + "'");
      s.kind = kind == "machine" ? SubVerdict::Kind::Machine : SubVerdict::Kind::Cited;
      s.passed = v.at("passed").get<bool>();
      if (v.contains("witness")) s.witness = v.at("witness");
      s.paper_ref = v.at("paper_ref").get<std::string>();
      c.subverdicts.push_back(std::move(s));
    }
    const auto& env = j.at("environment");
    c.environment.field = env.at("field").get<std::string>();
    c.environment.primes = env.at("primes").get<std::vector<std::uint32_t>>();
    c.environment.seed = env.at("seed").get<std::uint64_t>();
    c.environment.version = env.at("version").get<std::string>();
    c.environment.options = env.at("options");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }
}

std::string dump(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

std::string certificate_name(const Certificate& c) {
  const auto& o = c.environment.options;
  if (!o.is_object() || !o.contains("certificate") || !o["certificate"].is_string()) return "";
  return o["certificate"].get<std::string>();
}

namespace {

const RationalField Q;

SubVerdict machine(std::string name, bool passed, Json witness, std::string ref) {
  return {std::move(name), SubVerdict::Kind::Machine, passed, std::move(witness), std::move(ref)};
}

SubVerdict cited(std::string name, std::string ref) {
  return {std::move(name), SubVerdict::Kind::Cited, true, std::nullopt, std::move(ref)};
}

template <class F>
std::string show(const Polynomial<F>& f, const VariableNaming& naming) {
  return format_poly(f, naming);
}

template <class F>
Json products_json(const LaplaceBound<F>& b, const VariableNaming& naming) {
  Json out = Json::array();
  for (const auto& [g, h] : b.products) out.push_back(Json::array({show(g, naming), show(h, naming)}));
  return out;
}

/// Laplace bounds for every minor: passed iff each equals cols - 1 and the
/// products reconstruct the minor.
template <class F>
SubVerdict laplace_verdict(const MinorFamily<F>& fam, const F& field) {
  const auto& g = fam.source;
  Json bounds = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < fam.minors.size(); ++i) {
    auto b = laplace_strength_bound(fam, i);
    bounds.push_back(b.bound ? Json(*b.bound) : Json(nullptr));
    ok = ok && b.bound == static_cast<int>(g.cols()) - 1 && b.reconstruct(field, g.nvars()) == fam.minors[i];
  }
  Json w;
  w["bounds"] = bounds;
  w["first_minor_products"] = products_json(laplace_strength_bound(fam, 0), g.naming());
  return machine("cofactor expansion bounds the strength of every minor by " + std::to_string(g.cols() - 1), ok,
                 std::move(w), "maximal minors of an (n+1) x n generic matrix have strength at most n - 1");
}

}  // namespace

Certificate certify_n32_lower(const N32LowerOptions& o) {
  Certificate c;
  c.claim = "N(3,2) >= 2";
  c.environment.field = "q";
  c.environment.primes = {o.p};
  c.environment.options = {{"certificate", "n32-lower"}, {"p", o.p}, {"tamper", o.tamper}};

  GenericMatrix g(3, 2);
  auto fam = maximal_minors(g, Q);
  auto family = fam.minors;
  if (o.tamper) family[2] = g.entry(Q, 0, 0) * g.entry(Q, 0, 0);
  Json gens = Json::array();
  for (const auto& f : family) gens.push_back(show(f, g.naming()));

  int codim = codimension(Ideal<RationalField>(Q, g.nvars(), family));
  c.subverdicts.push_back(machine("the three forms generate an ideal of codimension 2, so they are not a regular sequence",
                                  codim == 2, {{"codim", codim}, {"generators", gens}},
                                  "the 2 x 2 minors of a generic 3 x 2 matrix do not form a regular sequence"));

  PrimeField fp(o.p);
  std::vector<std::vector<std::uint32_t>> grams;
  for (const auto& f : family) grams.push_back(gram_residues(reduce_mod(QuadraticForm<RationalField>::from_polynomial(f), fp)));
  auto scan = kernels::rank_scan(grams, g.nvars(), o.p, kernels::PointSet::AllNonzero, o.exec);
  const std::uint64_t expected = static_cast<std::uint64_t>(o.p) * o.p * o.p - 1;
  bool exact4 = scan.points == expected && scan.min_rank == 4 && scan.max_rank == 4;
  Json sw;
  sw["field"] = fp.describe();
  sw["points"] = scan.points;
  sw["min_rank"] = scan.min_rank;
  sw["max_rank"] = scan.max_rank;
  Json hist = Json::object();
  for (std::size_t k = 0; k < scan.histogram.size(); ++k)
    if (scan.histogram[k]) hist[std::to_string(k)] = scan.histogram[k];
  sw["histogram"] = hist;
  if (!exact4) sw["point"] = scan.witness;
  c.subverdicts.push_back(machine("every nonzero combination has Gram rank exactly 4", exact4, std::move(sw),
                                  "every nontrivial combination of the 2 x 2 minors has rank at least 4"));

  c.subverdicts.push_back(laplace_verdict(fam, Q));
  c.subverdicts.push_back(cited("a quadric of rank k has strength ceil(k/2) - 1 over an algebraically closed field",
                                "rank determines the strength of a quadric"));

  bool collective_one = exact4 && c.subverdicts[2].passed && strength_from_rank(4) == 1;
  c.subverdicts.push_back(machine("the collective strength is exactly 1", collective_one,
                                  {{"collective_strength", collective_one ? Json(1) : Json(nullptr)}},
                                  "three quadrics of collective strength 1 that are not a regular sequence"));
  c.finalize();
  return c;
}

namespace {

QuadraticForm<RationalField> random_symmetric(std::mt19937_64& rng, std::size_t n, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  Matrix<RationalField> m(Q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = mpq_class(d(rng));
  return QuadraticForm<RationalField>(m);
}

Json n32_sample_json(std::size_t index, const N32Report& r) {
  Json s;
  s["sample"] = index;
  s["collective_strength"] = r.collective.strength;
  s["minrank_scan"] = r.minrank_scan.value;
  s["minrank_formula"] = r.minrank_formula ? Json(*r.minrank_formula) : Json(nullptr);
  s["codim_jacobian"] = r.codim_j ? Json(*r.codim_j) : Json(nullptr);
  s["prime"] = r.prime_verdict ? Json(to_string(*r.prime_verdict)) : Json(nullptr);
  s["minrank_at_least_4"] = r.meets_threshold_4;
  s["minrank_at_least_5"] = r.meets_threshold_5;
  s["regular"] = r.regular;
  s["consistent"] = r.consistent;
  return s;
}

}  // namespace

Certificate certify_n32_upper_sample(const N32UpperOptions& o) {
  Certificate c;
  c.claim = "N(3,2) <= 2 (sampled)";
  c.environment.field = "q";
  c.environment.primes = {o.p};
  c.environment.seed = o.seed;
  c.environment.options = {{"certificate", "n32-upper"}, {"seed", o.seed}, {"samples", o.samples}, {"p", o.p}};

  const std::size_t n = 6;
  std::mt19937_64 rng(o.seed);
  Json samples = Json::array();
  bool consistent = true;
  std::size_t strong = 0, strong_regular = 0, at4 = 0, at5 = 0;
  Json counter = nullptr;
  for (std::size_t s = 0; s < o.samples; ++s) {
    std::vector<int> pool;
    for (int v = -9; v <= 9; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<RationalField::Element> ones(n, mpq_class(1)), b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(mpq_class(pool[i]));
    auto f1 = QuadraticForm<RationalField>::diagonal(Q, ones);
    auto f2 = QuadraticForm<RationalField>::diagonal(Q, b);
    auto f3 = random_symmetric(rng, n, 3);
    auto r = theorem_n32_report(f1, f2, f3, o.p, o.exec);
    samples.push_back(n32_sample_json(s, r));
    consistent = consistent && r.consistent;
    at4 += r.meets_threshold_4;
    at5 += r.meets_threshold_5;
    if (r.collective.strength >= 2) {
      ++strong;
      if (r.regular) ++strong_regular;
      else if (counter.is_null()) counter = {{"sample", s}, {"f3", show(f3.to_polynomial(), VariableNaming::flat(n))}};
    }
  }

  Json cw;
  cw["samples"] = samples;
  cw["minrank_at_least_4"] = at4;
  cw["minrank_at_least_5"] = at5;
  c.subverdicts.push_back(machine("collective strength, minrank, Jacobian codimension and primality agree on every sample",
                                  consistent, std::move(cw),
                                  "codimension of the Jacobian minor ideal equals the minrank of a diagonal pencil"));

  Json rw{{"samples_with_strength_2", strong}, {"regular", strong_regular}};
  if (!counter.is_null()) rw["counterexample"] = counter;
  c.subverdicts.push_back(machine("every sampled triple of collective strength at least 2 is a regular sequence",
                                  strong > 0 && strong == strong_regular, std::move(rw),
                                  "three quadrics of collective strength at least 2 form a regular sequence"));

  GenericMatrix g(3, 2);
  auto fam = maximal_minors(g, Q);
  auto m = theorem_n32_report(QuadraticForm<RationalField>::from_polynomial(fam.minors[0]),
                              QuadraticForm<RationalField>::from_polynomial(fam.minors[1]),
                              QuadraticForm<RationalField>::from_polynomial(fam.minors[2]), o.p, o.exec);
  c.subverdicts.push_back(machine("the 2 x 2 minors have collective strength 1 and are not regular",
                                  m.collective.strength == 1 && !m.regular,
                                  {{"collective_strength", m.collective.strength}, {"regular", m.regular}},
                                  "three quadrics of collective strength 1 that are not a regular sequence"));

  c.subverdicts.push_back(cited("two quadrics with f1 nondegenerate are simultaneously diagonalizable over an algebraically closed field",
                                "simultaneous diagonalization of a generic pencil of quadrics"));
  c.subverdicts.push_back(cited("two forms whose Jacobian minor ideal has codimension above 4 generate a prime ideal",
                                "primality criterion for a complete intersection via its singular locus"));
  c.finalize();
  return c;
}

Certificate certify_n33(const N33Options& o) {
  Certificate c;
  c.claim = "N(3,3) > 2";
  c.environment.field = "q";
  c.environment.primes = {o.p};
  c.environment.options = {{"certificate", "n33"},         {"p", o.p},
                           {"four_minor", o.four_minor},  {"extra_class", o.extra_class},
                           {"exhaustive", o.exhaustive}};

  GenericMatrix g(4, 3);
  PrimeField fp(o.p);
  auto famP = maximal_minors(g, fp);
  auto famQ = maximal_minors(g, Q);

  auto nr = not_regular_by_containment(famP, 0, 1, 2);
  c.subverdicts.push_back(machine("codim <f1, f2, f3> = 2, so the three minors are not a regular sequence",
                                  nr.codim == 2, {{"codim", nr.codim}, {"field", fp.describe()}},
                                  "maximal minors of a generic 4 x 3 matrix do not form a regular sequence"));

  c.subverdicts.push_back(laplace_verdict(famQ, Q));
  const bool laplace_ok = c.subverdicts.back().passed;

  // Every pair of distinct variables is a pair of column-homogeneous linear
  // forms; the witness action must send it to its representative exactly.
  std::map<LinearPairTag, std::size_t> counts;
  bool classified = true;
  Json bad = nullptr;
  for (std::size_t p = 0; p < g.nvars() && classified; ++p)
    for (std::size_t q = p + 1; q < g.nvars(); ++q) {
      auto x = Polynomial<RationalField>::variable(Q, g.nvars(), p);
      auto y = Polynomial<RationalField>::variable(Q, g.nvars(), q);
      auto cls = classify_linear_pair(GradedLinearForm<RationalField>(x, g), GradedLinearForm<RationalField>(y, g), g);
      auto rep = representative_pair(cls.tag, g, Q);
      if (!(apply_matrix_action(x, g, cls.row_action, cls.column_action) == rep.first) ||
          !(apply_matrix_action(y, g, cls.row_action, cls.column_action) == rep.second)) {
        classified = false;
        bad = Json::array({show(x, g.naming()), show(y, g.naming())});
        break;
      }
      ++counts[cls.tag];
    }
  Json cw;
  for (auto t : {LinearPairTag::SameColumn, LinearPairTag::ParallelRows, LinearPairTag::Skew})
    cw[to_string(t)] = counts[t];
  if (!bad.is_null()) cw["failed_pair"] = bad;
  c.subverdicts.push_back(machine("every pair of matrix entries is carried to one of the three representative pairs",
                                  classified, std::move(cw),
                                  "linear pairs homogeneous in the column grading reduce to (x11,x21), (x11,x12) or (x11,x22)"));

  c.subverdicts.push_back(cited("a strength-one decomposition of a form of column degree (1,1,1) may be taken column-homogeneous",
                                "column-homogeneous strength-one decompositions"));
  c.subverdicts.push_back(cited("every pair of column-homogeneous linear forms is equivalent to one of the three representatives",
                                "normal forms of column-homogeneous linear pairs"));

  auto classes = standard_classes();
  if (o.extra_class) classes.push_back(extra_class());

  auto exclusion = [&](const std::vector<Polynomial<RationalField>>& family, const std::string& label) {
    bool all = true;
    if (o.exhaustive) {
      auto pairs = all_coordinate_pairs(g);
      auto s = strength_one_excluded(family, g, pairs);
      std::size_t lo = SIZE_MAX, hi = 0;
      Json nontrivial = Json::array();
      for (const auto& r : s.reports) {
        lo = std::min(lo, r.monomials.size());
        hi = std::max(hi, r.monomials.size());
        if (!r.trivial()) nontrivial.push_back(r.ideal);
      }
      c.subverdicts.push_back(machine(label + " has a trivial exclusion kernel modulo every pair of variables",
                                      s.excluded,
                                      {{"pairs", pairs.size()}, {"min_rows", lo}, {"max_rows", hi}, {"nontrivial", nontrivial}},
                                      "no nontrivial combination of the minors lies in a representative ideal"));
      all = s.excluded;
    }
    auto s = strength_one_excluded(family, g, classes);
    for (const auto& r : s.reports) {
      Json w{{"rows", r.monomials.size()}, {"columns", family.size()}, {"kernel_dimension", r.kernel_dimension()}};
      if (!r.trivial()) {
        Json k = Json::array();
        for (const auto& e : r.kernel.front()) k.push_back(e.get_str());
        w["kernel_vector"] = k;
      }
      c.subverdicts.push_back(machine(label + " modulo " + r.ideal + " has a trivial exclusion kernel", r.trivial(),
                                      std::move(w),
                                      "no nontrivial combination of the minors lies in a representative ideal"));
    }
    return all && s.excluded;
  };

  std::vector<Polynomial<RationalField>> three(famQ.minors.begin(), famQ.minors.begin() + 3);
  bool excluded3 = exclusion(three, "(f1, f2, f3)");
  if (o.four_minor) exclusion(famQ.minors, "(f1, f2, f3, f4)");

  bool two = laplace_ok && excluded3 && classified;
  c.subverdicts.push_back(machine("the collective strength of (f1, f2, f3) is exactly 2", two,
                                  {{"collective_strength", two ? Json(2) : Json(nullptr)}},
                                  "three cubics of collective strength 2 that are not a regular sequence"));
  c.finalize();
  return c;
}

namespace {

Polynomial<PrimeField> random_form(std::mt19937_64& rng, const PrimeField& f, std::size_t n, unsigned degree,
                                   std::size_t max_terms) {
  std::uniform_int_distribution<std::uint32_t> coeff(1, static_cast<std::uint32_t>(f.modulus() - 1));
  std::uniform_int_distribution<std::size_t> var(0, n - 1), count(1, max_terms);
  for (;;) {
    std::vector<Polynomial<PrimeField>::Term> terms;
    std::size_t k = count(rng);
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<unsigned> e(n, 0);
      for (unsigned d = 0; d < degree; ++d) ++e[var(rng)];
      terms.push_back({Monomial(e), coeff(rng)});
    }
    auto p = Polynomial<PrimeField>::from_terms(f, n, std::move(terms));
    if (!p.is_zero()) return p;
  }
}

}  // namespace

Certificate certify_small_r(const SmallROptions& o) {
  Certificate c;
  c.claim = "N(1,d) = 0 and N(2,d) = 1";
  PrimeField f(o.p);
  c.environment.field = f.describe();
  c.environment.primes = {o.p};
  c.environment.seed = o.seed;
  c.environment.options = {{"certificate", "small-r"}, {"seed", o.seed}, {"pairs", o.pairs}, {"p", o.p}};

  const std::size_t n = 3;
  const auto naming = VariableNaming::flat(n);
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<unsigned> deg(1, 3), small(1, 2);

  bool singles = true;
  Json single_fail = nullptr;
  for (std::size_t i = 0; i < o.pairs; ++i) {
    auto g = random_form(rng, f, n, deg(rng) + (i % 2), 4);
    int cd = codimension(Ideal<PrimeField>(f, n, {g}));
    if (cd != 1 && singles) {
      singles = false;
      single_fail = {{"form", show(g, naming)}, {"codim", cd}};
    }
  }
  Json sw{{"samples", o.pairs}};
  if (!single_fail.is_null()) sw["counterexample"] = single_fail;
  c.subverdicts.push_back(machine("every sampled nonzero form generates an ideal of codimension 1", singles,
                                  std::move(sw), "a single nonzero form is a regular sequence"));

  bool agree = true, shared_ok = true, coprime_ok = true;
  Json witness_agree = nullptr, witness_shared = nullptr, witness_coprime = nullptr;
  auto record = [&](const Polynomial<PrimeField>& a, const Polynomial<PrimeField>& b) {
    return Json{{"f1", show(a, naming)}, {"f2", show(b, naming)}};
  };

  for (std::size_t i = 0; i < o.pairs; ++i) {
    auto g = random_form(rng, f, n, small(rng), 3);
    auto h1 = random_form(rng, f, n, small(rng), 3);
    auto h2 = random_form(rng, f, n, small(rng), 3);
    auto a = g * h1, b = g * h2;
    auto r = regular_pair_gcd_check(a, b);
    if (r.gcd_regular || r.codim_regular) {
      if (shared_ok) witness_shared = record(a, b);
      shared_ok = false;
    }
    if (!r.agree) {
      if (agree) witness_agree = record(a, b);
      agree = false;
    }
  }

  std::size_t resampled = 0;
  for (std::size_t i = 0; i < o.pairs; ++i) {
    Polynomial<PrimeField> a(f, n), b(f, n);
    if (i < 5) {
      auto d = static_cast<unsigned>(i + 1);
      a = Polynomial<PrimeField>::variable(f, n, 0).pow(d);
      b = Polynomial<PrimeField>::variable(f, n, 1).pow(d);
    } else {
      for (;;) {
        a = random_form(rng, f, n, deg(rng), 4);
        b = random_form(rng, f, n, deg(rng), 4);
        if (gcd(a, b).is_constant()) break;
        ++resampled;
      }
    }
    auto r = regular_pair_gcd_check(a, b);
    if (!r.gcd_regular || !r.codim_regular) {
      if (coprime_ok) witness_coprime = record(a, b);
      coprime_ok = false;
    }
    if (!r.agree) {
      if (agree) witness_agree = record(a, b);
      agree = false;
    }
  }

  Json w1{{"pairs", o.pairs}};
  if (!witness_shared.is_null()) w1["counterexample"] = witness_shared;
  c.subverdicts.push_back(machine("pairs with a common factor are not regular", shared_ok, std::move(w1),
                                  "two forms with a common factor are not a regular sequence"));
  Json w2{{"pairs", o.pairs}, {"resampled", resampled}};
  if (!witness_coprime.is_null()) w2["counterexample"] = witness_coprime;
  c.subverdicts.push_back(machine("coprime pairs are regular", coprime_ok, std::move(w2),
                                  "two coprime forms are a regular sequence"));
  Json w3{{"pairs", 2 * o.pairs}};
  if (!witness_agree.is_null()) w3["counterexample"] = witness_agree;
  c.subverdicts.push_back(machine("the gcd verdict and the codimension verdict agree on every pair", agree,
                                  std::move(w3), "a pair of forms is regular iff its gcd is 1"));
  c.subverdicts.push_back(cited("a reducible form has strength 0, so collective strength at least 1 forces coprime forms",
                                "collective strength one forces a regular pair"));
  c.finalize();
  return c;
}

RecheckResult recheck(const std::string& text) {
  RecheckResult r;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    r.message = std::string("not valid JSON: ") + e.what();
    return r;
  }
  Certificate stated;
  try {
    stated = certificate_from_json(j);
  } catch (const std::invalid_argument& e) {
    r.message = e.what();
    return r;
  }
  const auto& o = stated.environment.options;
  Certificate fresh;
  try {
    auto name = certificate_name(stated);
    if (name == "n32-lower") {
      fresh = certify_n32_lower({o.at("p").get<std::uint32_t>(), o.at("tamper").get<bool>()});
    } else if (name == "n32-upper") {
      fresh = certify_n32_upper_sample(
          {o.at("seed").get<std::uint64_t>(), o.at("samples").get<std::size_t>(), o.at("p").get<std::uint32_t>()});
    } else if (name == "n33") {
      fresh = certify_n33({o.at("p").get<std::uint32_t>(), o.at("four_minor").get<bool>(),
                           o.at("extra_class").get<bool>(), o.at("exhaustive").get<bool>()});
    } else if (name == "small-r") {
      fresh = certify_small_r(
          {o.at("seed").get<std::uint64_t>(), o.at("pairs").get<std::size_t>(), o.at("p").get<std::uint32_t>()});
    } else {
      r.message = "unknown certificate '" + name + "'";
      return r;
    }
  } catch (const nlohmann::json::exception& e) {
    r.message = std::string("malformed options: ") + e.what();
    return r;
  } catch (const std::exception& e) {
    r.message = std::string("recomputation failed: ") + e.what();
    return r;
  }
  r.reproduced = to_json(fresh).dump() == j.dump();
  r.passed = r.reproduced && fresh.passed;
  if (!r.reproduced) r.message = "recomputed certificate differs from the input";
  else if (!fresh.passed) r.message = "certificate reproduced, but its claim does not pass";
  else r.message = "certificate reproduced and passes";
  return r;
}

#define COLSTR_INSTANTIATE(F)                                                                                      \
  template class GradedLinearForm<F>;                                                                             \
  template std::pair<Polynomial<F>, Polynomial<F>> representative_pair(LinearPairTag, const GenericMatrix&,       \
                                                                       const F&);                                 \
  template LinearPairClass<F> classify_linear_pair(const GradedLinearForm<F>&, const GradedLinearForm<F>&,         \
                                                   const GenericMatrix&);                                         \
  template Polynomial<F> apply_matrix_action(const Polynomial<F>&, const GenericMatrix&, const Matrix<F>&,        \
                                             const Matrix<F>&);                                                   \
  template struct GradedDecomposition<F>;                                                                         \
  template ConstraintReport<F> grading_constraint_check(const GradedDecomposition<F>&, const GenericMatrix&);      \
  template ExclusionReport<F> exclusion_matrix(const std::vector<Polynomial<F>>&, const Ideal<F>&,                \
                                               const std::string&);                                               \
  template ExclusionSummary<F> strength_one_excluded(const std::vector<Polynomial<F>>&, const GenericMatrix&,     \
                                                     const std::vector<RepresentativeIdeal>&);

COLSTR_INSTANTIATE(RationalField)
COLSTR_INSTANTIATE(PrimeField)

}  // namespace colstr
