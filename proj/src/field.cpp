#include "psbent/field.hpp"

#include <bit>
#include <stdexcept>

namespace psbent {

namespace {

// Remainder of a modulo b over F_2[x].
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
    a ^= b << (da - db);
  }
  return a;
}

// Smallest nontrivial factor of p, or 0 if p is irreducible.
std::uint32_t find_factor(std::uint32_t p) {
  const int d = poly_degree(p);
  const std::uint32_t limit = 1u << (d / 2 + 1);
  for (std::uint32_t q = 2; q < limit; ++q) {
    if (poly_mod(p, q) == 0) return q;
  }
  return 0;
}

// Inverse of a k x k matrix over F_2 given as row masks.
std::array<std::uint32_t, FieldCtx::kMaxDegree> invert_rows(
    const std::array<std::uint32_t, FieldCtx::kMaxDegree>& rows, int k) {
  std::array<std::uint32_t, FieldCtx::kMaxDegree> a = rows;
  std::array<std::uint32_t, FieldCtx::kMaxDegree> inv{};
  for (int i = 0; i < k; ++i) inv[static_cast<std::size_t>(i)] = 1u << i;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r) {
      if ((a[static_cast<std::size_t>(r)] >> col) & 1u) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw std::logic_error("trace form Gram matrix is singular");
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
    std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < k; ++r) {
      if (r != col && ((a[static_cast<std::size_t>(r)] >> col) & 1u)) {
        a[static_cast<std::size_t>(r)] ^= a[static_cast<std::size_t>(col)];
        inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(col)];
      }
    }
  }
  return inv;
}

std::uint32_t apply_rows(const std::array<std::uint32_t, FieldCtx::kMaxDegree>& rows, int k,
                         std::uint32_t v) {
  std::uint32_t out = 0;
  for (int i = 0; i < k; ++i) {
    out |= static_cast<std::uint32_t>(std::popcount(rows[static_cast<std::size_t>(i)] & v) & 1)
           << i;
  }
  return out;
}

}  // namespace

int poly_degree(std::uint32_t mask) {
  return mask == 0 ? -1 : 31 - std::countl_zero(mask);
}

std::string poly_to_string(std::uint32_t mask) {
  if (mask == 0) return "0";
  std::string out;
  for (int d = poly_degree(mask); d >= 0; --d) {
    if (!((mask >> d) & 1u)) continue;
    if (!out.empty()) out += "+";
    if (d == 0) {
      out += "1";
    } else if (d == 1) {
      out += "x";
    } else {
      out += "x^" + std::to_string(d);
    }
  }
  return out;
}

std::optional<std::uint32_t> default_poly(int k) {
  switch (k) {
    case 1: return 0x3;
    case 2: return 0x7;
    case 3: return 0xB;
    case 4: return 0x13;
    case 5: return 0x25;
    case 6: return 0x43;
    case 7: return 0x83;
    case 8: return 0x11B;
    default: return std::nullopt;
  }
}

FieldCtx::FieldCtx(int k, std::optional<std::uint32_t> reduction_poly) : k_(k), poly_(0) {
  if (k < 1 || k > kMaxDegree) {
    throw std::invalid_argument("field degree must be in [1, 16], got " + std::to_string(k));
  }
  if (reduction_poly) {
    poly_ = *reduction_poly;
  } else if (auto p = default_poly(k)) {
    poly_ = *p;
  } else {
    throw std::invalid_argument("no default reduction polynomial for k = " + std::to_string(k) +
                                "; supply one explicitly");
  }
  if (poly_degree(poly_) != k) {
    throw std::invalid_argument("reduction polynomial " + poly_to_string(poly_) +
                                " does not have degree " + std::to_string(k));
  }
  if (std::uint32_t f = find_factor(poly_); f != 0) {
    throw std::invalid_argument("reduction polynomial " + poly_to_string(poly_) +
                                " is reducible: factor " + poly_to_string(f));
  }

  for (int i = 0; i < k_; ++i) {
    trace_mask_ |= static_cast<std::uint32_t>(trace_by_frobenius(GFElem{1u << i})) << i;
  }
  // Tr(x^i x^j) = Tr(x^{i+j}); the product is reduced before tracing.
  for (int i = 0; i < k_; ++i) {
    std::uint32_t row = 0;
    for (int j = 0; j < k_; ++j) {
      row |= static_cast<std::uint32_t>(trace(mul(GFElem{1u << i}, GFElem{1u << j}))) << j;
    }
    gram_[static_cast<std::size_t>(i)] = row;
  }
  gram_inv_ = invert_rows(gram_, k_);
}

GFElem FieldCtx::mul(GFElem a, GFElem b) const {
  std::uint32_t x = a.bits;
  std::uint32_t y = b.bits;
  std::uint32_t acc = 0;
  const std::uint32_t top = 1u << k_;
  while (y != 0) {
    if (y & 1u) acc ^= x;
    y >>= 1;
    x <<= 1;
    if (x & top) x ^= poly_;
  }
  return GFElem{acc};
}

GFElem FieldCtx::pow(GFElem a, std::uint64_t e) const {
  GFElem result{1};
  while (e != 0) {
    if (e & 1u) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

GFElem FieldCtx::inv(GFElem a) const {
  if (a.bits == 0) throw std::domain_error("zero has no multiplicative inverse");
  // a^(2^k - 2) = a^-1 in the multiplicative group of order 2^k - 1.
  return pow(a, (std::uint64_t{1} << k_) - 2);
}

GFElem FieldCtx::div_conv(GFElem x, GFElem y) const {
  if (y.bits == 0) return GFElem{0};
  return mul(x, inv(y));
}

int FieldCtx::trace(GFElem a) const {
  return std::popcount(a.bits & trace_mask_) & 1;
}

int FieldCtx::trace_by_frobenius(GFElem a) const {
  GFElem conj = a;
  std::uint32_t sum = a.bits;
  for (int i = 1; i < k_; ++i) {
    conj = mul(conj, conj);
    sum ^= conj.bits;
  }
  if (sum > 1) throw std::logic_error("trace left the prime field");
  return static_cast<int>(sum);
}

int FieldCtx::trace_pairing(GFElem x, GFElem y, GFElem xp, GFElem yp) const {
  return trace(mul(x, xp)) ^ trace(mul(y, yp));
}

std::uint32_t FieldCtx::gram_apply(std::uint32_t v) const {
  return apply_rows(gram_, k_, v);
}

std::uint32_t FieldCtx::gram_inverse_apply(std::uint32_t v) const {
  return apply_rows(gram_inv_, k_, v);
}

std::uint64_t FieldCtx::gram_index_map(std::uint64_t u) const {
  const std::uint64_t mask = (std::uint64_t{1} << k_) - 1;
  const auto lo = static_cast<std::uint32_t>(u & mask);
  const auto hi = static_cast<std::uint32_t>((u >> k_) & mask);
  return std::uint64_t{gram_apply(lo)} | (std::uint64_t{gram_apply(hi)} << k_);
}

std::uint64_t FieldCtx::gram_index_map_inverse(std::uint64_t u) const {
  const std::uint64_t mask = (std::uint64_t{1} << k_) - 1;
  const auto lo = static_cast<std::uint32_t>(u & mask);
  const auto hi = static_cast<std::uint32_t>((u >> k_) & mask);
  return std::uint64_t{gram_inverse_apply(lo)} | (std::uint64_t{gram_inverse_apply(hi)} << k_);
}

}  // namespace psbent
