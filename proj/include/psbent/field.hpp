#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace psbent {

/// Element of GF(2^k) in the polynomial basis: bit i is the coefficient of x^i.
struct GFElem {
  std::uint32_t bits = 0;

  constexpr GFElem() = default;
  constexpr explicit GFElem(std::uint32_t b) : bits(b) {}
  friend constexpr auto operator<=>(const GFElem&, const GFElem&) = default;
};

/// Renders a polynomial mask as "x^4+x+1".
std::string poly_to_string(std::uint32_t mask);

/// Degree of a nonzero polynomial mask, -1 for zero.
int poly_degree(std::uint32_t mask);

/// Documented default reduction polynomial for 1 <= k <= 8.
std::optional<std::uint32_t> default_poly(int k);

/// Arithmetic context for GF(2^k), 1 <= k <= 16.
///
/// Holds the reduction polynomial, the trace of every basis element and the
/// trace-form Gram matrix gram[i][j] = Tr(x^i x^j). Immutable after
/// construction.
class FieldCtx {
 public:
  static constexpr int kMaxDegree = 16;

  /// Throws std::invalid_argument for k out of range, a polynomial of the
  /// wrong degree, or a reducible polynomial (the message names a factor).
  explicit FieldCtx(int k, std::optional<std::uint32_t> reduction_poly = std::nullopt);

  int degree() const { return k_; }
  std::uint32_t reduction_poly() const { return poly_; }
  std::uint32_t order() const { return 1u << k_; }

  GFElem mul(GFElem a, GFElem b) const;
  GFElem square(GFElem a) const { return mul(a, a); }
  GFElem pow(GFElem a, std::uint64_t e) const;
  /// Throws std::domain_error for a = 0.
  GFElem inv(GFElem a) const;
  /// x / y with the convention x / 0 = 0.
  GFElem div_conv(GFElem x, GFElem y) const;
  /// Absolute trace Tr(a) = a + a^2 + ... + a^(2^(k-1)), returned as 0 or 1.
  int trace(GFElem a) const;
  /// Tr(a) computed by summing Frobenius conjugates; independent of the
  /// cached basis traces.
  int trace_by_frobenius(GFElem a) const;

  /// Tr(x x') + Tr(y y').
  int trace_pairing(GFElem x, GFElem y, GFElem xp, GFElem yp) const;

  /// Row i of the Gram matrix as a k-bit mask (bit j = Tr(x^{i+j})).
  std::uint32_t gram_row(int i) const { return gram_[static_cast<std::size_t>(i)]; }
  /// G * v for a k-bit coordinate vector v.
  std::uint32_t gram_apply(std::uint32_t v) const;
  std::uint32_t gram_inverse_apply(std::uint32_t v) const;

  /// diag(G, G) applied to a 2k-bit vector laid out as bits(x) + 2^k bits(y).
  std::uint64_t gram_index_map(std::uint64_t u) const;
  std::uint64_t gram_index_map_inverse(std::uint64_t u) const;

 private:
  int k_;
  std::uint32_t poly_;
  std::uint32_t trace_mask_ = 0;
  std::array<std::uint32_t, kMaxDegree> gram_{};
  std::array<std::uint32_t, kMaxDegree> gram_inv_{};
};

}  // namespace psbent
