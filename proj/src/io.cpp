#include "colstr/io.hpp"

#include <charconv>
#include <sstream>

namespace colstr {

namespace {

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'", 0);
  return v;
}

// "a" or "a/b" with optional sign; b nonzero.
std::pair<std::string, std::string> parse_number(const std::string& tok, std::size_t line) {
  auto slash = tok.find('/');
  std::string num = tok.substr(0, slash), den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
  auto digits = [](const std::string& s, bool sign) {
    std::size_t i = sign && !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    return i < s.size() && s.find_first_not_of("0123456789", i) == std::string::npos;
  };
  if (!digits(num, true) || !digits(den, false) || den.find_first_not_of('0') == std::string::npos)
    throw ParseError("line " + std::to_string(line) + ": invalid number '" + tok + "'", 0);
  if (num[0] == '+') num.erase(0, 1);
  return {num, den};
}

std::vector<std::pair<std::string, std::string>> split_numbers(std::string line, std::size_t lineno) {
  for (auto& ch : line)
    if (ch == ',') ch = ' ';
  std::istringstream in(line);
  std::vector<std::pair<std::string, std::string>> row;
  std::string tok;
  while (in >> tok) row.push_back(parse_number(tok, lineno));
  return row;
}

}  // namespace

std::vector<std::vector<std::pair<std::string, std::string>>> read_numeric_rows(std::string_view text) {
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto row = split_numbers(line, lineno);
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("line " + std::to_string(lineno) + ": row length differs from the first row", 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> read_numeric_list(std::string_view text) {
  auto row = split_numbers(std::string(text), 1);
  if (row.empty()) throw ParseError("empty number list", 0);
  return row;
}

AnyField parse_field(std::string_view spec) {
  if (spec == "q") return RationalField{};
  if (spec.substr(0, 3) == "fp:") {
    auto p = parse_size(spec.substr(3), "prime");
    if (p > 0x7fffffffu) throw ParseError("prime too large", 3);
    try {
      return PrimeField(static_cast<std::uint32_t>(p));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), 3);
    }
  }
  throw ParseError("unknown field '" + std::string(spec) + "' (expected q or fp:<p>)", 0);
}

std::string describe(const AnyField& f) {
  return std::visit([](const auto& x) { return x.describe(); }, f);
}

VariableNaming RingHeader::naming() const {
  if (matrix) return VariableNaming::matrix(matrix->first, matrix->second);
  return VariableNaming::flat(nvars);
}

RingHeader parse_ring_header(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string word;
  RingHeader h;
  bool have_n = false;
  while (in >> word) {
    if (word == "ring") continue;
    auto eq = word.find('=');
    if (eq == std::string::npos) throw ParseError("ring header entry '" + word + "' is not key=value", 0);
    std::string key = word.substr(0, eq), value = word.substr(eq + 1);
    if (key == "n") {
      h.nvars = parse_size(value, "variable count");
      have_n = true;
    } else if (key == "field") {
      parse_field(value);
      h.field = value;
    } else if (key == "matrix") {
      auto x = value.find('x');
      if (x == std::string::npos) throw ParseError("matrix shape must be RxC", 0);
      h.matrix = std::make_pair(parse_size(value.substr(0, x), "row count"), parse_size(value.substr(x + 1), "column count"));
    } else {
      throw ParseError("unknown ring header key '" + key + "'", 0);
    }
  }
  if (h.matrix) {
    std::size_t mn = h.matrix->first * h.matrix->second;
    if (have_n && h.nvars != mn) throw ParseError("n does not match the matrix shape", 0);
    h.nvars = mn;
    have_n = true;
  }
  if (!have_n) throw ParseError("ring header needs n=<vars>", 0);
  return h;
}

std::string format_ring_header(const RingHeader& h) {
  std::string s = "ring n=" + std::to_string(h.nvars) + " field=" + h.field;
  if (h.matrix) s += " matrix=" + std::to_string(h.matrix->first) + "x" + std::to_string(h.matrix->second);
  return s;
}

IdealText read_ideal_text(std::string_view text, const std::optional<RingHeader>& header) {
  IdealText out;
  bool have_header = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line.rfind("ring", 0) == 0 && (line.size() == 4 || line[4] == ' ' || line[4] == '\t')) {
      if (have_header) throw ParseError("line " + std::to_string(lineno) + ": duplicate ring header", 0);
      out.ring = parse_ring_header(line);
      have_header = true;
      continue;
    }
    out.lines.emplace_back(lineno, line);
  }
  if (header) {
    out.ring = *header;
    have_header = true;
  }
  if (!have_header) throw ParseError("missing ring header (ring n=<vars> field=q|fp:<p>)", 0);
  return out;
}

}  // namespace colstr
