#include "colstr/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <stdexcept>

namespace colstr::kernels {

namespace {

bool independent(std::uint64_t set, std::span<const std::uint64_t> masks) {
  for (auto m : masks)
    if ((m & ~set) == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / b) throw std::overflow_error("point count overflows");
    r *= b;
  }
  return r;
}

}  // namespace

int max_independent_set(std::span<const std::uint64_t> masks, std::size_t nvars, Exec exec) {
  if (nvars > 30) throw std::invalid_argument("independent-set search limited to 30 variables");
  for (auto m : masks)
    if (m == 0) return -1;
  const std::int64_t total = std::int64_t{1} << nvars;
  int best = 0;
  if (exec == Exec::Serial) {
    for (std::int64_t s = 0; s < total; ++s) {
      int pc = std::popcount(static_cast<std::uint64_t>(s));
      if (pc > best && independent(static_cast<std::uint64_t>(s), masks)) best = pc;
    }
    return best;
  }
#pragma omp parallel for reduction(max : best) schedule(dynamic, 256)
  for (std::int64_t s = 0; s < total; ++s) {
    int pc = std::popcount(static_cast<std::uint64_t>(s));
    if (pc > best && independent(static_cast<std::uint64_t>(s), masks)) best = pc;
  }
  return best;
}

int rank_mod_p(std::span<std::uint32_t> m, std::size_t rows, std::size_t cols, std::uint32_t p) {
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return m[i * cols + j]; };
  auto inv = [p](std::uint32_t a) {
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    std::uint64_t iv = inv(at(r, c));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (at(i, c) == 0) continue;
      std::uint64_t f = at(i, c) * iv % p;
      for (std::size_t j = c; j < cols; ++j)
        at(i, j) = static_cast<std::uint32_t>((at(i, j) + (p - f) * at(r, j)) % p);
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::uint64_t point_count(std::size_t dim, std::uint32_t p, PointSet set) {
  if (dim == 0) return 0;
  std::uint64_t all = ipow(p, dim) - 1;
  return set == PointSet::AllNonzero ? all : all / (p - 1);
}

void point_at(std::uint64_t index, std::size_t dim, std::uint32_t p, PointSet set, std::uint32_t* out) {
  if (set == PointSet::AllNonzero) {
    std::uint64_t v = index + 1;
    for (std::size_t i = dim; i-- > 0;) {
      out[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    return;
  }
  // Block j: coordinates before j are 0, coordinate j is 1, the rest free.
  for (std::size_t j = 0; j < dim; ++j) {
    std::uint64_t block = ipow(p, dim - 1 - j);
    if (index < block) {
      for (std::size_t i = 0; i < j; ++i) out[i] = 0;
      out[j] = 1;
      for (std::size_t i = dim; i-- > j + 1;) {
        out[i] = static_cast<std::uint32_t>(index % p);
        index /= p;
      }
      return;
    }
    index -= block;
  }
  throw std::out_of_range("point index out of range");
}

namespace {

struct LocalScan {
  int min_rank = std::numeric_limits<int>::max();
  int max_rank = -1;
  std::uint64_t min_index = 0;
  std::vector<std::uint64_t> histogram;
};

void scan_range(const std::vector<std::vector<std::uint32_t>>& grams, std::size_t n, std::uint32_t p, PointSet set,
                std::uint64_t begin, std::uint64_t end, LocalScan& local) {
  const std::size_t r = grams.size();
  std::vector<std::uint32_t> point(r), combo(n * n);
  local.histogram.assign(n + 1, 0);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    point_at(idx, r, p, set, point.data());
    std::fill(combo.begin(), combo.end(), 0);
    for (std::size_t k = 0; k < r; ++k) {
      if (!point[k]) continue;
      for (std::size_t e = 0; e < n * n; ++e)
        combo[e] = static_cast<std::uint32_t>((combo[e] + std::uint64_t{point[k]} * grams[k][e]) % p);
    }
    int rk = rank_mod_p(combo, n, n, p);
    ++local.histogram[rk];
    local.max_rank = std::max(local.max_rank, rk);
    if (rk < local.min_rank) {
      local.min_rank = rk;
      local.min_index = idx;
    }
  }
}

}  // namespace

RankScan rank_scan(const std::vector<std::vector<std::uint32_t>>& grams, std::size_t n, std::uint32_t p, PointSet set,
                   Exec exec) {
  if (grams.empty()) throw std::invalid_argument("rank scan needs at least one matrix");
  for (const auto& g : grams)
    if (g.size() != n * n) throw std::invalid_argument("gram matrix has wrong size");
  const std::uint64_t total = point_count(grams.size(), p, set);

  LocalScan merged;
  merged.histogram.assign(n + 1, 0);
  auto merge = [&](const LocalScan& l) {
    for (std::size_t k = 0; k <= n; ++k) merged.histogram[k] += l.histogram[k];
    merged.max_rank = std::max(merged.max_rank, l.max_rank);
    if (l.min_rank < merged.min_rank || (l.min_rank == merged.min_rank && l.min_index < merged.min_index)) {
      merged.min_rank = l.min_rank;
      merged.min_index = l.min_index;
    }
  };

  if (exec == Exec::Serial) {
    LocalScan l;
    scan_range(grams, n, p, set, 0, total, l);
    merge(l);
  } else {
#pragma omp parallel
    {
      const std::uint64_t nt = static_cast<std::uint64_t>(omp_get_num_threads());
      const std::uint64_t t = static_cast<std::uint64_t>(omp_get_thread_num());
      LocalScan l;
      scan_range(grams, n, p, set, total * t / nt, total * (t + 1) / nt, l);
#pragma omp critical
      merge(l);
    }
  }

  RankScan out;
  out.points = total;
  out.min_rank = merged.min_rank;
  out.max_rank = merged.max_rank;
  out.histogram = std::move(merged.histogram);
  out.witness.resize(grams.size());
  if (total) point_at(merged.min_index, grams.size(), p, set, out.witness.data());
  return out;
}

QuadricProducts::QuadricProducts(SmallField field, std::size_t n)
    : field_(std::move(field)), n_(n), width_(n * (n + 1) / 2) {
  const std::uint32_t q = field_.size();
  if (n == 0) throw std::invalid_argument("need at least one variable");
  long double space = 1;
  for (std::size_t i = 0; i < width_; ++i) space *= q;
  if (space > 1.8e19L) throw std::invalid_argument("quadric space too large for 64-bit keys");
  const std::uint64_t vectors = ipow(q, n) - 1;
  const std::uint64_t lines = vectors / (q - 1);
  if (static_cast<long double>(lines) * vectors > 6e7L) throw std::invalid_argument("product enumeration too large");

  auto vec = [&](std::uint64_t index, PointSet set, std::vector<std::uint8_t>& out) {
    std::vector<std::uint32_t> tmp(n);
    point_at(index, n, q, set, tmp.data());
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(tmp[i]);
  };
  std::vector<std::uint8_t> u(n), v(n), c(width_);
  std::vector<std::uint64_t> all;
  all.reserve(lines * vectors);
  for (std::uint64_t a = 0; a < lines; ++a) {
    vec(a, PointSet::Projective, u);
    for (std::uint64_t b = 0; b < vectors; ++b) {
      vec(b, PointSet::AllNonzero, v);
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++k)
          c[k] = i == j ? field_.mul(u[i], v[i]) : field_.add(field_.mul(u[i], v[j]), field_.mul(u[j], v[i]));
      all.push_back(key(c));
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  keys_ = std::move(all);

  digits_.resize(keys_.size() * width_);
  for (std::size_t idx = 0; idx < keys_.size(); ++idx) {
    std::uint64_t k = keys_[idx];
    for (std::size_t i = 0; i < width_; ++i) {
      digits_[idx * width_ + i] = static_cast<std::uint8_t>(k % q);
      k /= q;
    }
  }
  std::size_t cap = 16;
  while (cap < keys_.size() * 2) cap <<= 1;
  table_.assign(cap, 0);
  for (auto k : keys_) {
    std::size_t h = (k * 0x9E3779B97F4A7C15ull) >> 7 & (cap - 1);
    while (table_[h]) h = (h + 1) & (cap - 1);
    table_[h] = k + 1;
  }
}

std::uint64_t QuadricProducts::key(std::span<const std::uint8_t> coeffs) const {
  std::uint64_t k = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) k = k * field_.size() + coeffs[i];
  return k;
}

bool QuadricProducts::contains(std::uint64_t k) const {
  const std::size_t mask = table_.size() - 1;
  std::size_t h = (k * 0x9E3779B97F4A7C15ull) >> 7 & mask;
  while (table_[h]) {
    if (table_[h] == k + 1) return true;
    h = (h + 1) & mask;
  }
  return false;
}

namespace {

bool within(const QuadricProducts& P, std::span<const std::uint8_t> f, int s, std::vector<std::uint8_t>& scratch,
            std::size_t depth) {
  if (s == 0) return P.contains(P.key(f));
  const std::size_t w = P.coefficient_count();
  std::uint8_t* g = scratch.data() + depth * w;
  for (std::size_t idx = 0; idx < P.size(); ++idx) {
    auto p = P.product(idx);
    bool zero = true;
    for (std::size_t i = 0; i < w; ++i) {
      g[i] = P.field().sub(f[i], p[i]);
      zero = zero && g[i] == 0;
    }
    if (zero) return true;
    if (within(P, {g, w}, s - 1, scratch, depth + 1)) return true;
  }
  return false;
}

bool within_parallel(const QuadricProducts& P, std::span<const std::uint8_t> f, int s) {
  if (s == 0) return P.contains(P.key(f));
  const std::size_t w = P.coefficient_count();
  std::atomic<bool> found{false};
  const std::int64_t total = static_cast<std::int64_t>(P.size());
#pragma omp parallel
  {
    std::vector<std::uint8_t> scratch(w * static_cast<std::size_t>(s + 1));
#pragma omp for schedule(dynamic, 1024)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      if (found.load(std::memory_order_relaxed)) continue;
      auto p = P.product(static_cast<std::size_t>(idx));
      std::uint8_t* g = scratch.data();
      bool zero = true;
      for (std::size_t i = 0; i < w; ++i) {
        g[i] = P.field().sub(f[i], p[i]);
        zero = zero && g[i] == 0;
      }
      if (zero || within(P, {g, w}, s - 1, scratch, 1)) found.store(true, std::memory_order_relaxed);
    }
  }
  return found.load();
}

}  // namespace

std::optional<int> quadric_strength(const QuadricProducts& products, std::span<const std::uint8_t> coeffs, int s_max,
                                    Exec exec) {
  if (coeffs.size() != products.coefficient_count()) throw std::invalid_argument("quadric has wrong coefficient count");
  if (std::all_of(coeffs.begin(), coeffs.end(), [](std::uint8_t c) { return c == 0; })) return -1;
  std::vector<std::uint8_t> scratch(coeffs.size() * static_cast<std::size_t>(s_max + 2));
  for (int s = 0; s <= s_max; ++s) {
    bool ok = exec == Exec::Serial ? within(products, coeffs, s, scratch, 0) : within_parallel(products, coeffs, s);
    if (ok) return s;
  }
  return std::nullopt;
}

}  // namespace colstr::kernels
