#include "colstr/cli.hpp"

#include "colstr/determinantal.hpp"
#include "colstr/groebner.hpp"
#include "colstr/io.hpp"
#include "colstr/quadforms.hpp"
#include "colstr/strengthcert.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace colstr::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string field = "q";
  std::string order = "degrevlex";
  bool json = false;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string in;
  std::string matrix;
  std::string diag;
  std::optional<std::uint32_t> p;
  std::string ring;

  bool field_given = false;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw UsageError("missing --in <file>");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

MonomialOrder parse_order(const std::string& name) {
  if (name == "degrevlex") return MonomialOrder::degrevlex();
  if (name == "lex") return MonomialOrder::lex();
  throw UsageError("unknown order '" + name + "' (expected lex or degrevlex)");
}

std::pair<std::size_t, std::size_t> parse_shape(const std::string& s) {
  auto h = parse_ring_header("matrix=" + s);
  return *h.matrix;
}

IdealText load_ideal(const Globals& g, const std::string& path) {
  std::optional<RingHeader> header;
  if (!g.ring.empty()) header = parse_ring_header(g.ring);
  auto text = read_ideal_text(read_file(path), header);
  if (g.field_given) {
    parse_field(g.field);
    text.ring.field = g.field;
  }
  return text;
}

AnyField chosen_field(const Globals& g) { return parse_field(g.field); }

Json base_json(const Globals& g, const std::string& command) {
  Json j;
  j["command"] = command;
  j["seed"] = g.seed;
  return j;
}

template <class F>
Json poly_list(const std::vector<Polynomial<F>>& ps, const VariableNaming& naming) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(format_poly(p, naming));
  return a;
}

// ---------------------------------------------------------------------------
// regseq

int cmd_regseq(const Globals& g, const std::string& method, std::ostream& out) {
  auto text = load_ideal(g, g.in);
  return std::visit(
      [&](const auto& field) {
        auto gens = parse_generators(text, field);
        if (gens.empty()) throw UsageError("no generators in input");
        using F = std::decay_t<decltype(field)>;
        int codim = codimension(Ideal<F>(field, text.ring.nvars, gens));
        std::optional<bool> by_codim, by_direct;
        if (method == "codim" || method == "both") by_codim = is_regular_sequence_codim(gens);
        if (method == "direct" || method == "both") by_direct = is_regular_sequence_direct(gens);
        bool regular = by_codim.value_or(by_direct.value_or(false));
        bool agree = !(by_codim && by_direct) || *by_codim == *by_direct;
        if (g.json) {
          auto j = base_json(g, "regseq");
          j["field"] = field.describe();
          j["generators"] = gens.size();
          j["codim"] = codim;
          if (by_codim) j["regular_codim"] = *by_codim;
          if (by_direct) j["regular_direct"] = *by_direct;
          j["regular"] = regular && agree;
          out << j.dump(2) << "\n";
        } else {
          out << (regular ? "regular" : "not regular") << " (" << gens.size() << " generators, codim " << codim
              << ")\n";
          if (!agree) out << "codimension and quotient tests disagree\n";
        }
        return regular && agree ? kPass : kFail;
      },
      text.ring.coefficient_field());
}

// ---------------------------------------------------------------------------
// quadric

template <class F>
std::vector<QuadraticForm<F>> load_forms(const Globals& g, const std::string& gram, const F& field,
                                         VariableNaming& naming) {
  std::vector<QuadraticForm<F>> forms;
  int sources = !gram.empty() + !g.diag.empty() + !g.in.empty();
  if (sources != 1) throw UsageError("give exactly one of --in, --gram or --diag");
  if (!gram.empty()) {
    forms.emplace_back(parse_numeric_matrix(read_file(gram), field));
  } else if (!g.diag.empty()) {
    std::vector<typename F::Element> coeffs;
    for (const auto& [num, den] : read_numeric_list(g.diag)) coeffs.push_back(field.from_string(num, den));
    forms.push_back(QuadraticForm<F>::diagonal(field, coeffs));
  } else {
    auto text = load_ideal(g, g.in);
    if (parse_field(text.ring.field).index() != AnyField(field).index())
      throw UsageError("input field does not match --field");
    for (const auto& f : parse_generators(text, field)) forms.push_back(QuadraticForm<F>::from_polynomial(f));
    naming = text.ring.naming();
  }
  if (forms.empty()) throw UsageError("no forms in input");
  naming = forms.front().nvars() == naming.nvars() ? naming : VariableNaming::flat(forms.front().nvars());
  return forms;
}

std::string field_of_input(const Globals& g) {
  if (g.field_given || g.in.empty()) return g.field;
  return load_ideal(g, g.in).ring.field;
}

int cmd_quadric_rank(const Globals& g, const std::string& gram, bool strength, bool exhaustive, std::ostream& out) {
  return std::visit(
      [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        VariableNaming naming = VariableNaming::flat(0);
        auto forms = load_forms(g, gram, field, naming);
        auto j = base_json(g, strength ? "quadric strength" : "quadric rank");
        j["field"] = field.describe();
        j["forms"] = Json::array();
        for (const auto& q : forms) {
          Json e;
          e["form"] = format_poly(q.to_polynomial(), naming);
          e["rank"] = q.rank();
          std::optional<int> brute;
          if (strength) {
            e["strength"] = strength_from_rank(q.rank());
            if (exhaustive) {
              if constexpr (std::is_same_v<F, PrimeField>) {
                brute = strength_bruteforce_small(q.to_polynomial(), 4);
                e["strength_base_field"] = brute ? Json(*brute) : Json(nullptr);
              } else {
                throw UsageError("--exhaustive needs --field fp:3 or fp:5");
              }
            }
          }
          if (!g.json) {
            out << e["form"].template get<std::string>() << ": rank " << q.rank();
            if (strength) {
              out << ", strength " << strength_from_rank(q.rank()) << " over the algebraic closure";
              if (exhaustive) out << ", " << (brute ? std::to_string(*brute) : std::string("> 4")) << " over " << field.describe();
            }
            out << "\n";
          }
          j["forms"].push_back(std::move(e));
        }
        if (g.json) out << j.dump(2) << "\n";
        return kPass;
      },
      parse_field(field_of_input(g)));
}

template <class Elem>
Json element_list(const std::vector<Elem>& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if constexpr (std::is_same_v<Elem, mpq_class>) a.push_back(x.get_str());
    else a.push_back(x);
  }
  return a;
}

int cmd_quadric_minrank(const Globals& g, const std::string& diag1, std::ostream& out) {
  const std::uint32_t p = g.p.value_or(101);
  PrimeField fp(p);
  const RationalField Q;
  auto j = base_json(g, "quadric minrank");
  std::optional<MinrankResult<RationalField>> formula;
  std::optional<QuadraticForm<RationalField>> f1, f2;
  std::string note;

  if (!g.diag.empty()) {
    std::vector<mpq_class> b;
    for (const auto& [num, den] : read_numeric_list(g.diag)) b.push_back(Q.from_string(num, den));
    std::vector<mpq_class> a(b.size(), mpq_class(1));
    if (!diag1.empty()) {
      a.clear();
      for (const auto& [num, den] : read_numeric_list(diag1)) a.push_back(Q.from_string(num, den));
    }
    auto dp = DiagonalPair::from_diagonals(a, b);
    formula = minrank_formula(dp);
    f1 = dp.f1();
    f2 = dp.f2();
  } else {
    auto text = load_ideal(g, g.in);
    if (text.ring.field != "q") throw UsageError("quadric minrank --in expects rational forms (field=q)");
    auto gens = parse_generators(text, Q);
    if (gens.size() != 2) throw UsageError("quadric minrank needs exactly two forms");
    f1 = QuadraticForm<RationalField>::from_polynomial(gens[0]);
    f2 = QuadraticForm<RationalField>::from_polynomial(gens[1]);
    auto d = simultaneous_diagonalize(*f1, *f2);
    if (d.status == Diagonalization::Status::Ok) formula = minrank_formula(*d.pair);
    else note = d.message;
  }
  auto scan = minrank_bruteforce(reduce_mod(*f1, fp), reduce_mod(*f2, fp));
  int value = formula ? formula->value : scan.value;
  bool agree = !formula || formula->value == scan.value;
  j["minrank"] = value;
  j["method"] = to_string(formula ? MinrankMethod::Formula : MinrankMethod::FiniteFieldScan);
  j["witness"] = formula ? element_list(formula->witness) : element_list(scan.witness);
  j["scan"] = {{"prime", p}, {"minrank", scan.value}, {"witness", element_list(scan.witness)}};
  if (!note.empty()) j["note"] = note;
  j["agree"] = agree;
  if (g.json) {
    out << j.dump(2) << "\n";
  } else {
    auto plain = [](const Json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    const auto& w = j["witness"];
    out << "minrank " << value << " (" << j["method"].get<std::string>() << "), witness (" << plain(w[0]) << ")*f1 + ("
        << plain(w[1]) << ")*f2\n";
    out << "scan over " << fp.describe() << ": " << scan.value << "\n";
    if (!note.empty()) out << "note: " << note << "\n";
    if (!agree) out << "formula and scan disagree\n";
  }
  return agree ? kPass : kFail;
}

int cmd_quadric_collective(const Globals& g, std::ostream& out) {
  auto text = load_ideal(g, g.in);
  auto spec = parse_field(text.ring.field);
  std::vector<QuadraticForm<PrimeField>> forms;
  PrimeField fp(g.p.value_or(101));
  if (auto* pf = std::get_if<PrimeField>(&spec)) {
    fp = *pf;
    for (const auto& f : parse_generators(text, fp)) forms.push_back(QuadraticForm<PrimeField>::from_polynomial(f));
  } else {
    for (const auto& f : parse_generators(text, RationalField{}))
      forms.push_back(reduce_mod(QuadraticForm<RationalField>::from_polynomial(f), fp));
  }
  if (forms.empty()) throw UsageError("no forms in input");
  auto c = collective_strength_quadrics(forms);
  if (g.json) {
    auto j = base_json(g, "quadric collective");
    j["field"] = fp.describe();
    j["collective_strength"] = c.strength;
    j["min_rank"] = c.min_rank;
    j["witness"] = c.witness;
    j["points"] = c.scan.points;
    out << j.dump(2) << "\n";
  } else {
    out << "collective strength " << c.strength << " over " << fp.describe() << " (min rank " << c.min_rank
        << ", witness";
    for (auto x : c.witness) out << " " << fp.to_string(x);
    out << ")\n";
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// minors

int cmd_minors(const Globals& g, bool with_codim, std::ostream& out) {
  if (g.matrix.empty()) throw UsageError("minors needs --matrix RxC");
  auto [rows, cols] = parse_shape(g.matrix);
  GenericMatrix m(rows, cols);
  if (rows != cols + 1) throw UsageError("minors needs a (n+1) x n shape");
  return std::visit(
      [&](const auto& field) {
        auto fam = maximal_minors(m, field);
        std::optional<int> codim;
        if (with_codim) codim = hilbert_burch_codim_check(fam).codim;
        if (g.json) {
          auto j = base_json(g, "minors");
          j["matrix"] = g.matrix;
          j["field"] = field.describe();
          j["minors"] = poly_list(fam.minors, m.naming());
          j["multidegrees"] = fam.multidegrees;
          Json bounds = Json::array();
          for (std::size_t i = 0; i < fam.minors.size(); ++i) {
            auto b = laplace_strength_bound(fam, i).bound;
            bounds.push_back(b ? Json(*b) : Json(nullptr));
          }
          j["strength_bounds"] = bounds;
          if (codim) j["codim"] = *codim;
          out << j.dump(2) << "\n";
        } else {
          out << export_family(fam, field);
          if (codim) out << "# codim " << *codim << "\n";
        }
        return kPass;
      },
      chosen_field(g));
}

// ---------------------------------------------------------------------------
// gb

int cmd_gb(const Globals& g, const std::string& action, const std::string& with, const std::string& by,
           std::ostream& out) {
  auto text = load_ideal(g, g.in);
  auto order = parse_order(g.order);
  auto naming = text.ring.naming();
  return std::visit(
      [&](const auto& field) {
        using F = std::decay_t<decltype(field)>;
        Ideal<F> ideal(field, text.ring.nvars, parse_generators(text, field));
        auto j = base_json(g, "gb " + action);
        j["field"] = field.describe();
        j["order"] = order.name();
        auto emit_gens = [&](const std::vector<Polynomial<F>>& gens, const char* key) {
          if (g.json) {
            j[key] = poly_list(gens, naming);
            out << j.dump(2) << "\n";
          } else {
            out << write_ideal_text(text.ring, gens);
          }
        };
        auto emit_int = [&](int v, const char* key) {
          if (g.json) {
            j[key] = v;
            out << j.dump(2) << "\n";
          } else {
            out << v << "\n";
          }
        };
        if (action == "basis") {
          auto gb = buchberger(ideal, order);
          emit_gens(gb.elements(), "basis");
        } else if (action == "dim") {
          emit_int(dimension(ideal), "dim");
        } else if (action == "codim") {
          emit_int(codimension(ideal, false), "codim");
        } else if (action == "intersect") {
          if (with.empty()) throw UsageError("gb intersect needs --with <file>");
          auto body = read_file(with);
          IdealText other;
          try {
            other = read_ideal_text(body, std::nullopt);
          } catch (const ParseError&) {
            other = read_ideal_text(body, text.ring);  // headerless: inherit the first ring
          }
          if (other.ring.nvars != text.ring.nvars || other.ring.field != text.ring.field)
            throw UsageError("--with ideal lives in a different ring (" + format_ring_header(other.ring) + ")");
          Ideal<F> second(field, text.ring.nvars, parse_generators(other, field));
          auto meet = buchberger(ideal_intersection(ideal, second), order);
          emit_gens(meet.elements(), "intersection");
        } else {
          if (by.empty()) throw UsageError("gb quotient needs --by <polynomial>");
          auto f = parse_poly(by, field, naming);
          if (f.is_zero()) throw UsageError("quotient by the zero polynomial");
          auto q = buchberger(ideal_quotient(ideal, f), order);
          emit_gens(q.elements(), "quotient");
        }
        return kPass;
      },
      text.ring.coefficient_field());
}

// ---------------------------------------------------------------------------
// certify / recheck

void print_certificate(const Certificate& c, std::ostream& out) {
  out << c.claim << ": " << (c.passed ? "PASS" : "FAIL") << "\n";
  for (const auto& s : c.subverdicts) {
    out << "  [" << (s.passed ? "pass" : "FAIL") << "] " << (s.kind == SubVerdict::Kind::Machine ? "machine " : "cited   ")
        << s.name << "\n";
    if (!s.passed && s.witness) out << "         witness: " << s.witness->dump() << "\n";
  }
}

struct CertifyFlags {
  bool tamper = false;
  bool three_only = false;
  bool extra_class = false;
  bool exhaustive = false;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> pairs;
};

Certificate make_certificate(const std::string& name, const Globals& g, const CertifyFlags& f) {
  if (name == "n32-lower") {
    N32LowerOptions o;
    o.p = g.p.value_or(o.p);
    o.tamper = f.tamper;
    return certify_n32_lower(o);
  }
  if (name == "n32-upper") {
    N32UpperOptions o;
    o.p = g.p.value_or(o.p);
    o.seed = g.seed;
    o.samples = f.samples.value_or(o.samples);
    return certify_n32_upper_sample(o);
  }
  if (name == "n33") {
    N33Options o;
    o.p = g.p.value_or(o.p);
    o.four_minor = !f.three_only;
    o.extra_class = f.extra_class;
    o.exhaustive = f.exhaustive;
    return certify_n33(o);
  }
  SmallROptions o;
  o.p = g.p.value_or(o.p);
  o.seed = g.seed;
  o.pairs = f.pairs.value_or(o.pairs);
  return certify_small_r(o);
}

int cmd_certify(const std::string& name, const Globals& g, const CertifyFlags& f, std::ostream& out) {
  std::vector<std::string> names{name};
  if (name == "all") {
    if (g.p) throw UsageError("--p cannot be combined with certify all");
    names = {"n32-lower", "n32-upper", "n33", "small-r"};
  }
  std::vector<Certificate> certs;
  for (const auto& n : names) certs.push_back(make_certificate(n, g, f));
  bool ok = std::all_of(certs.begin(), certs.end(), [](const Certificate& c) { return c.passed; });
  if (g.json) {
    if (certs.size() == 1) {
      out << dump(certs.front());
    } else {
      Json a = Json::array();
      for (const auto& c : certs) a.push_back(to_json(c));
      out << a.dump(2) << "\n";
    }
  } else {
    for (const auto& c : certs) print_certificate(c, out);
  }
  return ok ? kPass : kFail;
}

int cmd_recheck(const Globals& g, const std::string& path, std::ostream& out) {
  auto r = recheck(read_file(path));
  if (g.json) {
    auto j = base_json(g, "recheck");
    j["file"] = path;
    j["reproduced"] = r.reproduced;
    j["passed"] = r.passed;
    j["message"] = r.message;
    out << j.dump(2) << "\n";
  } else {
    out << (r.passed ? "PASS" : "FAIL") << ": " << r.message << "\n";
  }
  return r.passed ? kPass : kFail;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  CLI::App app{"Exact algebra for strength and regular sequences of homogeneous forms", "colstr"};
  app.fallthrough();
  app.require_subcommand(1);
  auto* field_opt = app.add_option("--field", g.field, "Coefficient field: q or fp:<p>");
  app.add_option("--order", g.order, "Monomial order: lex or degrevlex");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--threads", g.threads, "Worker threads for the scan kernels (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--in", g.in, "Input ideal file");
  app.add_option("--matrix", g.matrix, "Generic matrix shape RxC");
  app.add_option("--diag", g.diag, "Diagonal coefficients a1,...,an");
  app.add_option("--p", g.p, "Prime for finite-field scans or computations");
  app.add_option("--ring", g.ring, "Ring header such as \"n=3 field=q\"");

  std::string method = "codim";
  auto* regseq = app.add_subcommand("regseq", "Test whether the input forms are a regular sequence");
  regseq->add_option("--method", method, "codim, direct or both")->check(CLI::IsMember({"codim", "direct", "both"}));

  auto* quadric = app.add_subcommand("quadric", "Quadratic form queries");
  quadric->require_subcommand(1);
  std::string gram, diag1;
  bool exhaustive_strength = false;
  auto* q_rank = quadric->add_subcommand("rank", "Gram rank of each form");
  auto* q_strength = quadric->add_subcommand("strength", "Strength from rank, optionally by exhaustive search");
  auto* q_minrank = quadric->add_subcommand("minrank", "Minimum rank in the pencil of two forms");
  auto* q_collective = quadric->add_subcommand("collective", "Collective strength by finite-field scan");
  for (auto* s : {q_rank, q_strength}) s->add_option("--gram", gram, "Symmetric matrix file, one row per line");
  q_strength->add_flag("--exhaustive", exhaustive_strength, "Also search decompositions over F_3 or F_5");
  q_minrank->add_option("--diag1", diag1, "Diagonal of f1 (default all ones)");

  bool with_codim = false;
  auto* minors = app.add_subcommand("minors", "Export the maximal minors of a generic matrix");
  minors->add_flag("--codim", with_codim, "Also report the codimension of the minor ideal");

  std::string with, by;
  auto* gb = app.add_subcommand("gb", "Groebner basis queries");
  gb->require_subcommand(1);
  std::vector<CLI::App*> gb_actions;
  for (const char* a : {"basis", "dim", "codim", "intersect", "quotient"}) gb_actions.push_back(gb->add_subcommand(a));
  gb_actions[0]->description("Reduced Groebner basis");
  gb_actions[1]->description("Krull dimension of the quotient ring");
  gb_actions[2]->description("Codimension of the ideal");
  gb_actions[3]->description("Intersection with a second ideal")->add_option("--with", with, "Second ideal file");
  gb_actions[4]->description("Ideal quotient by a polynomial")->add_option("--by", by, "Polynomial");

  CertifyFlags flags;
  auto* certify = app.add_subcommand("certify", "Build a certificate");
  certify->require_subcommand(1);
  std::vector<CLI::App*> cert_cmds;
  for (const char* c : {"n32-lower", "n32-upper", "n33", "small-r", "all"}) cert_cmds.push_back(certify->add_subcommand(c));
  cert_cmds[0]->description("N(3,2) >= 2 from the 2 x 2 minors of a 3 x 2 matrix");
  cert_cmds[0]->add_flag("--tamper", flags.tamper, "Replace f3 by x11^2");
  cert_cmds[1]->description("Sampled evidence for N(3,2) <= 2");
  cert_cmds[1]->add_option("--samples", flags.samples, "Number of sampled triples");
  cert_cmds[2]->description("N(3,3) > 2 from the 3 x 3 minors of a 4 x 3 matrix");
  cert_cmds[2]->add_flag("--three-only", flags.three_only, "Skip the four-minor exclusion run");
  cert_cmds[2]->add_flag("--extra-class", flags.extra_class, "Add <x11,x13> to the exclusion classes");
  cert_cmds[2]->add_flag("--exhaustive", flags.exhaustive, "Exclude modulo every pair of variables");
  cert_cmds[3]->description("N(1,d) = 0 and N(2,d) = 1 on sampled pairs");
  cert_cmds[3]->add_option("--pairs", flags.pairs, "Number of pairs per branch");
  cert_cmds[4]->description("All certificates");

  std::string recheck_file;
  auto* rc = app.add_subcommand("recheck", "Re-verify a certificate file");
  rc->add_option("file", recheck_file, "Certificate JSON")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* inner : sub->get_subcommands({})) inner->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  g.field_given = field_opt->count() > 0;
  if (g.threads > 0) omp_set_num_threads(g.threads);

  try {
    if (regseq->parsed()) return cmd_regseq(g, method, out);
    if (q_rank->parsed()) return cmd_quadric_rank(g, gram, false, false, out);
    if (q_strength->parsed()) return cmd_quadric_rank(g, gram, true, exhaustive_strength, out);
    if (q_minrank->parsed()) return cmd_quadric_minrank(g, diag1, out);
    if (q_collective->parsed()) return cmd_quadric_collective(g, out);
    if (minors->parsed()) return cmd_minors(g, with_codim, out);
    for (auto* a : gb_actions)
      if (a->parsed()) return cmd_gb(g, a->get_name(), with, by, out);
    for (auto* c : cert_cmds)
      if (c->parsed()) return cmd_certify(c->get_name(), g, flags, out);
    if (rc->parsed()) return cmd_recheck(g, recheck_file, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace colstr::cli
