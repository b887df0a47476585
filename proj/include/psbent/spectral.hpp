#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psbent/boolfun.hpp"
#include "psbent/field.hpp"

namespace psbent {

/// Inner product used to index a Walsh spectrum: the standard dot product on
/// F_2^n, or the trace form Tr(x x') + Tr(y y') on GF(2^k) x GF(2^k).
class Pairing {
 public:
  enum class Kind { Standard, TraceForm };

  static Pairing standard() { return Pairing{}; }
  static Pairing trace_form(const FieldCtx& ctx) { return Pairing{ctx}; }

  Kind kind() const { return field_ ? Kind::TraceForm : Kind::Standard; }
  const FieldCtx* field() const { return field_ ? &*field_ : nullptr; }
  std::string name() const { return field_ ? "trace" : "standard"; }

  /// The point v with <u, x> = u' . x for all x; identity for Standard.
  Point to_standard(Point u) const { return field_ ? field_->gram_index_map(u) : u; }
  /// <u, x> as 0/1.
  int apply(Point u, Point x) const;

  /// Throws std::invalid_argument if this pairing cannot act on n variables.
  void check_vars(int n) const;

 private:
  Pairing() = default;
  explicit Pairing(const FieldCtx& ctx) : field_(ctx) {}

  std::optional<FieldCtx> field_;
};

/// In-place unnormalised Walsh-Hadamard butterfly over 2^n entries.
template <typename Scalar>
void fwht_inplace(std::span<Scalar> v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1) {
    for (std::size_t i = 0; i < v.size(); i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const Scalar a = v[j];
        const Scalar b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

struct WalshSpectrum {
  int n = 0;
  std::vector<std::int64_t> values;
  Pairing pairing = Pairing::standard();

  std::int64_t operator[](Point u) const { return values[u]; }
  /// Sum of squares; equals 2^(2n) for any Boolean function.
  std::int64_t energy() const;
};

enum class Subset { EvenWeight, OddWeight };

/// Thrown when an operation that requires a bent function gets a non-bent one.
class NotBentError : public std::domain_error {
 public:
  NotBentError(const std::string& what, Point witness)
      : std::domain_error(what), witness_(witness) {}
  Point witness() const { return witness_; }

 private:
  Point witness_;
};

WalshSpectrum wht(const TruthTable& f, const Pairing& pairing = Pairing::standard());
/// Direct O(2^n) evaluation of a single coefficient.
std::int64_t wht_at(const TruthTable& f, Point u, const Pairing& pairing = Pairing::standard());
std::int64_t wht_restricted(const TruthTable& f, Point u, Subset subset);

std::int64_t nonlinearity(const TruthTable& f);
bool is_bent(const TruthTable& f);
bool is_flat(const WalshSpectrum& s);

TruthTable dual(const TruthTable& f, const Pairing& pairing = Pairing::standard());
TruthTable dual_from_spectrum(const WalshSpectrum& s);

struct RayleighQuotient {
  std::int64_t s = 0;
  std::optional<std::int64_t> normalized;  // N_f, bent functions only
};

/// S_f = sum_x (-1)^f(x) W_f(x); N_f = S_f / 2^(n/2) when f is bent.
RayleighQuotient rayleigh(const TruthTable& f, const Pairing& pairing = Pairing::standard());
/// N_f; throws NotBentError for non-bent f.
std::int64_t normalized_rayleigh(const TruthTable& f,
                                 const Pairing& pairing = Pairing::standard());

std::uint64_t dist(const TruthTable& f, const TruthTable& g);

enum class CheckMode { Fast, Verify };

/// Distance from f to its dual via 2^(n-1) - N_f / 2. In Verify mode the
/// direct Hamming comparison is also computed and must agree.
std::uint64_t dist_to_dual(const TruthTable& f, const Pairing& pairing = Pairing::standard(),
                           CheckMode mode = CheckMode::Verify);

struct DualityClass {
  enum class Tag { SelfDual, AntiSelfDual, Neither };
  Tag tag = Tag::Neither;
  std::uint64_t dist_to_dual = 0;
};

std::string to_string(DualityClass::Tag tag);
DualityClass duality_class(const TruthTable& f, const Pairing& pairing = Pairing::standard());

/// n x n binary matrix, row i stored as a bitmask (bit j = A[i][j]).
struct BitMatrix {
  int n = 0;
  std::vector<std::uint32_t> rows;

  static BitMatrix identity(int n);
  /// From row strings written A[i][1] A[i][2] ... left to right, e.g. "1110".
  static BitMatrix from_rows(std::span<const std::string> rows);
  /// Permutation matrix sending coordinate i to coordinate perm[i].
  static BitMatrix permutation(std::span<const int> perm);

  bool at(int i, int j) const { return (rows[static_cast<std::size_t>(i)] >> j) & 1u; }
  BitMatrix transpose() const;
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
  /// Row vector times matrix: x A.
  Point apply_row(Point x) const;
  int rank() const;
};

bool is_orthogonal(const BitMatrix& a);
/// g(x) = f(x A + b). Throws std::invalid_argument for singular A.
TruthTable orthogonal_transform(const TruthTable& f, const BitMatrix& a, Point b = 0);

}  // namespace psbent
