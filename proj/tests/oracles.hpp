#pragma once

// Slow, direct implementations used as independent references in tests.

#include <cstdint>
#include <stdexcept>
#include <functional>
#include <random>
#include <vector>

#include "psbent/boolfun.hpp"
#include "psbent/field.hpp"

namespace oracle {

using psbent::Point;
using psbent::TruthTable;

// Schoolbook product followed by long division.
inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, int k) {
  std::uint64_t prod = 0;
  for (int i = 0; i < k; ++i) {
    if ((b >> i) & 1u) prod ^= std::uint64_t{a} << i;
  }
  for (int d = 2 * k - 2; d >= k; --d) {
    if ((prod >> d) & 1u) prod ^= std::uint64_t{poly} << (d - k);
  }
  return static_cast<std::uint32_t>(prod);
}

inline std::uint32_t gf_inv(std::uint32_t a, std::uint32_t poly, int k) {
  for (std::uint32_t b = 1; b < (1u << k); ++b) {
    if (gf_mul(a, b, poly, k) == 1) return b;
  }
  return 0;
}

inline int gf_trace(std::uint32_t a, std::uint32_t poly, int k) {
  std::uint32_t sum = 0;
  std::uint32_t conj = a;
  for (int i = 0; i < k; ++i) {
    sum ^= conj;
    conj = gf_mul(conj, conj, poly, k);
  }
  return static_cast<int>(sum & 1u);
}

// Tr(x x') + Tr(y y') on indices bits(x) + 2^k bits(y).
inline int trace_pairing(Point u, Point v, std::uint32_t poly, int k) {
  const std::uint32_t mask = (1u << k) - 1;
  const auto x = static_cast<std::uint32_t>(u) & mask, y = static_cast<std::uint32_t>(u >> k);
  const auto xp = static_cast<std::uint32_t>(v) & mask, yp = static_cast<std::uint32_t>(v >> k);
  return gf_trace(gf_mul(x, xp, poly, k), poly, k) ^ gf_trace(gf_mul(y, yp, poly, k), poly, k);
}

inline int dot(Point a, Point b) { return __builtin_popcountll(a & b) & 1; }

using PairingFn = std::function<int(Point, Point)>;

inline std::int64_t wht_at(const TruthTable& f, Point u, const PairingFn& pair = dot) {
  std::int64_t s = 0;
  for (Point x = 0; x < f.size(); ++x) s += ((f(x) ^ pair(u, x)) & 1) ? -1 : 1;
  return s;
}

inline std::vector<std::int64_t> wht(const TruthTable& f, const PairingFn& pair = dot) {
  std::vector<std::int64_t> w(f.size());
  for (Point u = 0; u < f.size(); ++u) w[u] = wht_at(f, u, pair);
  return w;
}

inline TruthTable dual(const TruthTable& f, const PairingFn& pair = dot) {
  const auto w = wht(f, pair);
  return TruthTable::from_function(f.num_vars(), [&](Point u) { return w[u] < 0; });
}

inline std::uint64_t hamming(const TruthTable& f, const TruthTable& g) {
  std::uint64_t d = 0;
  for (Point x = 0; x < f.size(); ++x) d += f(x) != g(x);
  return d;
}

// Minimum distance to the 2^(n+1) affine functions.
inline std::uint64_t nonlinearity(const TruthTable& f) {
  std::uint64_t best = f.size();
  for (Point a = 0; a < f.size(); ++a) {
    for (int c = 0; c < 2; ++c) {
      std::uint64_t d = 0;
      for (Point x = 0; x < f.size(); ++x) d += f(x) != static_cast<bool>(dot(a, x) ^ c);
      best = std::min(best, d);
    }
  }
  return best;
}

// f(x) = XOR of coefficients of monomials dividing x.
inline bool anf_eval(const TruthTable& coeffs, Point x) {
  bool v = false;
  for (Point m = 0; m < coeffs.size(); ++m) {
    if ((m & ~x) == 0 && coeffs(m)) v = !v;
  }
  return v;
}

// Points annihilated by every point of S under the given pairing.
inline std::vector<Point> complement(int n, const std::vector<Point>& s, const PairingFn& pair) {
  std::vector<Point> out;
  for (Point v = 0; v < (Point{1} << n); ++v) {
    bool ok = true;
    for (Point p : s) ok = ok && pair(p, v) == 0;
    if (ok) out.push_back(v);
  }
  return out;
}

inline TruthTable random_tt(std::mt19937_64& rng, int n) {
  TruthTable t(n);
  for (Point x = 0; x < t.size(); ++x) t.set(x, rng() & 1u);
  return t;
}

inline std::vector<std::uint32_t> random_perm(std::mt19937_64& rng, std::uint32_t size) {
  std::vector<std::uint32_t> p(size);
  for (std::uint32_t i = 0; i < size; ++i) p[i] = i;
  for (std::uint32_t i = size - 1; i > 0; --i) std::swap(p[i], p[rng() % (i + 1)]);
  return p;
}

}  // namespace oracle
