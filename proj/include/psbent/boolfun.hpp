#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psbent {

/// Index of a point x = (x_1, ..., x_n) is sum x_i 2^(i-1); x_1 is the LSB.
using Point = std::uint64_t;

/// Bit-packed truth table of a Boolean function on n variables.
class TruthTable {
 public:
  static constexpr int kMinVars = 1;
  static constexpr int kMaxVars = 24;

  TruthTable() = default;
  /// All-zero function on n variables.
  explicit TruthTable(int n);

  static TruthTable constant(int n, bool value);
  /// Builds a table by evaluating fn(x) for every point.
  template <typename Fn>
  static TruthTable from_function(int n, Fn&& fn) {
    TruthTable t(n);
    for (Point x = 0; x < t.size(); ++x) {
      if (fn(x)) t.set(x, true);
    }
    return t;
  }

  int num_vars() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  bool operator()(Point x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  bool get(Point x) const { return (*this)(x); }
  void set(Point x, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (v) {
      words_[x >> 6] |= bit;
    } else {
      words_[x >> 6] &= ~bit;
    }
  }
  void flip(Point x) { words_[x >> 6] ^= std::uint64_t{1} << (x & 63); }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  TruthTable& operator^=(const TruthTable& other);
  friend TruthTable operator^(TruthTable a, const TruthTable& b) { return a ^= b; }
  TruthTable complement() const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  /// Lowercase hex, index 0 in the least significant nibble; 2^n / 4 digits
  /// (one digit when n < 2).
  std::string to_hex() const;
  /// Parses the format produced by to_hex. The digit count must match n.
  static TruthTable from_hex(std::string_view hex, int n);
  /// Infers n from the digit count (a power of two).
  static TruthTable from_hex(std::string_view hex);

 private:
  void clear_padding();

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Algebraic normal form coefficients; coefficient of prod_{i in a} x_i sits
/// at index a.
struct AnfPoly {
  TruthTable coeffs;
  int num_vars() const { return coeffs.num_vars(); }
};

struct AnfDegree {
  int degree = 0;
  bool zero_function = false;
};

std::uint64_t tt_weight(const TruthTable& f);
bool tt_is_balanced(const TruthTable& f);

AnfPoly tt_to_anf(const TruthTable& f);
/// The Moebius transform is an involution, so this is the same butterfly.
TruthTable anf_to_tt(const AnfPoly& p);
AnfDegree anf_degree(const AnfPoly& p);

/// D_u f(x) = f(x) xor f(x xor u).
TruthTable tt_derivative(const TruthTable& f, Point u);

/// Indicator of span(basis). Throws std::invalid_argument if the basis is
/// linearly dependent or a vector does not fit in n bits.
TruthTable subspace_indicator(int n, std::span<const Point> basis);

/// Points of span(basis), in enumeration order of the basis coefficients.
std::vector<Point> span_points(std::span<const Point> basis);

/// Rank over F_2 of a list of vectors.
int gf2_rank(std::span<const Point> vectors);

/// sum_{i<j} x_i x_j + eps1 * sum x_i + eps2. Requires even n >= 4.
TruthTable symmetric_bent(int n, int eps1, int eps2);

/// Value c_w of a symmetric function on inputs of weight w (f must be symmetric).
std::vector<int> symmetric_value_vector(const TruthTable& f);

/// Maiorana-McFarland f(x, y) = x . pi(y) + g(y) on 2k variables, point index
/// bits(x) + 2^k bits(y). pi has 2^k entries; g has k variables.
TruthTable mm_bent(std::span<const std::uint32_t> pi, const TruthTable& g);
/// Spectral dual of mm_bent(pi, g): y . pi^-1(x) + g(pi^-1(x)).
TruthTable mm_dual(std::span<const std::uint32_t> pi, const TruthTable& g);

}  // namespace psbent
