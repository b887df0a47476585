#include "psbent/boolfun.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>

namespace psbent {

namespace {

constexpr std::array<std::uint64_t, 6> kLowHalfMasks = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

void check_vars(int n) {
  if (n < TruthTable::kMinVars || n > TruthTable::kMaxVars) {
    throw std::invalid_argument("variable count must be in [1, 24], got " + std::to_string(n));
  }
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint64_t hex_digits_for(int n) { return n < 2 ? 1 : std::uint64_t{1} << (n - 2); }

// In-place binary Moebius butterfly on the packed words.
void moebius_inplace(TruthTable& t) {
  const int n = t.num_vars();
  auto w = t.words();
  for (int s = 0; s < n && s < 6; ++s) {
    const int shift = 1 << s;
    for (auto& word : w) word ^= (word & kLowHalfMasks[static_cast<std::size_t>(s)]) << shift;
  }
  for (std::size_t step = 1; step < w.size(); step <<= 1) {
    for (std::size_t base = 0; base < w.size(); base += 2 * step) {
      for (std::size_t i = base; i < base + step; ++i) w[i + step] ^= w[i];
    }
  }
}

}  // namespace

TruthTable::TruthTable(int n) : n_(n) {
  check_vars(n);
  words_.assign(n >= 6 ? (std::size_t{1} << (n - 6)) : 1, 0);
}

TruthTable TruthTable::constant(int n, bool value) {
  TruthTable t(n);
  if (value) {
    for (auto& w : t.words_) w = ~std::uint64_t{0};
    t.clear_padding();
  }
  return t;
}

void TruthTable::clear_padding() {
  if (n_ < 6) words_[0] &= (std::uint64_t{1} << (1u << n_)) - 1;
}

TruthTable& TruthTable::operator^=(const TruthTable& other) {
  if (other.n_ != n_) throw std::invalid_argument("truth tables differ in variable count");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

TruthTable TruthTable::complement() const {
  TruthTable t = *this;
  for (auto& w : t.words_) w = ~w;
  t.clear_padding();
  return t;
}

std::string TruthTable::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::uint64_t digits = hex_digits_for(n_);
  std::string out(digits, '0');
  for (std::uint64_t d = 0; d < digits; ++d) {
    const std::uint64_t nib = (words_[(4 * d) >> 6] >> ((4 * d) & 63)) & 0xF;
    out[digits - 1 - d] = kDigits[nib];
  }
  return out;
}

TruthTable TruthTable::from_hex(std::string_view hex, int n) {
  check_vars(n);
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  const std::uint64_t digits = hex_digits_for(n);
  if (hex.size() != digits) {
    throw std::invalid_argument("hex truth table for n = " + std::to_string(n) + " needs " +
                                std::to_string(digits) + " digits, got " +
                                std::to_string(hex.size()));
  }
  TruthTable t(n);
  for (std::uint64_t d = 0; d < digits; ++d) {
    const int v = hex_digit(hex[digits - 1 - d]);
    if (v < 0) throw std::invalid_argument("malformed hex digit in truth table");
    t.words_[(4 * d) >> 6] |= static_cast<std::uint64_t>(v) << ((4 * d) & 63);
  }
  const std::uint64_t before = t.words_[0];
  t.clear_padding();
  if (before != t.words_[0]) {
    throw std::invalid_argument("hex truth table sets bits beyond 2^n points");
  }
  return t;
}

TruthTable TruthTable::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  const std::uint64_t len = hex.size();
  if (len == 0 || !std::has_single_bit(len)) {
    throw std::invalid_argument("hex truth table length must be a power of two");
  }
  const int n = std::countr_zero(len) + 2;
  return from_hex(hex, n);
}

std::uint64_t tt_weight(const TruthTable& f) {
  std::uint64_t w = 0;
  for (auto word : f.words()) w += static_cast<std::uint64_t>(std::popcount(word));
  return w;
}

bool tt_is_balanced(const TruthTable& f) { return tt_weight(f) * 2 == f.size(); }

AnfPoly tt_to_anf(const TruthTable& f) {
  AnfPoly p{f};
  moebius_inplace(p.coeffs);
  return p;
}

TruthTable anf_to_tt(const AnfPoly& p) {
  TruthTable t = p.coeffs;
  moebius_inplace(t);
  return t;
}

AnfDegree anf_degree(const AnfPoly& p) {
  AnfDegree d{0, true};
  for (Point a = 0; a < p.coeffs.size(); ++a) {
    if (p.coeffs(a)) {
      d.zero_function = false;
      d.degree = std::max(d.degree, std::popcount(a));
    }
  }
  return d;
}

TruthTable tt_derivative(const TruthTable& f, Point u) {
  if (u >= f.size()) throw std::invalid_argument("derivative direction out of range");
  return TruthTable::from_function(f.num_vars(), [&](Point x) { return f(x) != f(x ^ u); });
}

int gf2_rank(std::span<const Point> vectors) {
  std::vector<Point> rows(vectors.begin(), vectors.end());
  int rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const Point b = Point{1} << bit;
    auto it = std::find_if(rows.begin() + rank, rows.end(), [&](Point r) { return r & b; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && (rows[r] & b)) {
        rows[r] ^= rows[static_cast<std::size_t>(rank)];
      }
    }
    ++rank;
  }
  return rank;
}

std::vector<Point> span_points(std::span<const Point> basis) {
  std::vector<Point> pts{0};
  pts.reserve(std::size_t{1} << basis.size());
  for (Point b : basis) {
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) pts.push_back(pts[i] ^ b);
  }
  return pts;
}

TruthTable subspace_indicator(int n, std::span<const Point> basis) {
  TruthTable t(n);
  for (Point b : basis) {
    if (b >= t.size()) throw std::invalid_argument("basis vector does not fit in n bits");
  }
  if (gf2_rank(basis) != static_cast<int>(basis.size())) {
    throw std::invalid_argument("subspace basis is linearly dependent");
  }
  for (Point x : span_points(basis)) t.set(x, true);
  return t;
}

TruthTable symmetric_bent(int n, int eps1, int eps2) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("symmetric bent functions need even n >= 4");
  }
  return TruthTable::from_function(n, [&](Point x) {
    const int w = std::popcount(x);
    return ((w * (w - 1) / 2) + (eps1 & 1) * w + (eps2 & 1)) & 1;
  });
}

std::vector<int> symmetric_value_vector(const TruthTable& f) {
  const int n = f.num_vars();
  std::vector<int> c(static_cast<std::size_t>(n) + 1, -1);
  for (Point x = 0; x < f.size(); ++x) {
    const auto w = static_cast<std::size_t>(std::popcount(x));
    const int v = f(x) ? 1 : 0;
    if (c[w] < 0) {
      c[w] = v;
    } else if (c[w] != v) {
      throw std::invalid_argument("function is not symmetric");
    }
  }
  return c;
}

namespace {

std::vector<std::uint32_t> checked_inverse(std::span<const std::uint32_t> pi, int k) {
  const std::size_t size = std::size_t{1} << k;
  if (pi.size() != size) throw std::invalid_argument("permutation must have 2^k entries");
  std::vector<std::uint32_t> inv(size, 0);
  std::vector<bool> seen(size, false);
  for (std::size_t y = 0; y < size; ++y) {
    const std::uint32_t v = pi[y];
    if (v >= size || seen[v]) throw std::invalid_argument("pi is not a bijection");
    seen[v] = true;
    inv[v] = static_cast<std::uint32_t>(y);
  }
  return inv;
}

}  // namespace

TruthTable mm_bent(std::span<const std::uint32_t> pi, const TruthTable& g) {
  const int k = g.num_vars();
  checked_inverse(pi, k);
  const Point mask = (Point{1} << k) - 1;
  return TruthTable::from_function(2 * k, [&](Point idx) {
    const Point x = idx & mask;
    const Point y = idx >> k;
    return ((std::popcount(x & pi[y]) & 1) != 0) != g(y);
  });
}

TruthTable mm_dual(std::span<const std::uint32_t> pi, const TruthTable& g) {
  const int k = g.num_vars();
  const auto inv = checked_inverse(pi, k);
  const Point mask = (Point{1} << k) - 1;
  return TruthTable::from_function(2 * k, [&](Point idx) {
    const Point x = idx & mask;
    const Point y = idx >> k;
    const Point pre = inv[x];
    return ((std::popcount(y & pre) & 1) != 0) != g(pre);
  });
}

}  // namespace psbent
