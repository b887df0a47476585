#include "psbent/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace psbent {

namespace {

std::int64_t half_power(int n) { return std::int64_t{1} << (n / 2); }

// First point whose coefficient is not +-2^(n/2), or nullopt if the spectrum is flat.
std::optional<Point> non_flat_witness(const WalshSpectrum& s) {
  if (s.n % 2 != 0) return Point{0};
  const std::int64_t h = half_power(s.n);
  for (Point u = 0; u < s.values.size(); ++u) {
    if (std::llabs(s.values[u]) != h) return u;
  }
  return std::nullopt;
}

void require_bent(const WalshSpectrum& s) {
  if (auto w = non_flat_witness(s)) {
    throw NotBentError("function is not bent: |W(" + std::to_string(*w) + ")| != 2^(n/2)", *w);
  }
}

void require_same_size(const TruthTable& f, const TruthTable& g) {
  if (f.num_vars() != g.num_vars()) {
    throw std::invalid_argument("functions differ in variable count");
  }
}

}  // namespace

int Pairing::apply(Point u, Point x) const { return std::popcount(to_standard(u) & x) & 1; }

void Pairing::check_vars(int n) const {
  if (field_ && n != 2 * field_->degree()) {
    throw std::invalid_argument("trace-form pairing over GF(2^" + std::to_string(field_->degree()) +
                                ") needs n = " + std::to_string(2 * field_->degree()) +
                                ", got " + std::to_string(n));
  }
}

std::int64_t WalshSpectrum::energy() const {
  std::int64_t e = 0;
  for (auto v : values) e += v * v;
  return e;
}

WalshSpectrum wht(const TruthTable& f, const Pairing& pairing) {
  pairing.check_vars(f.num_vars());
  WalshSpectrum s;
  s.n = f.num_vars();
  s.pairing = pairing;
  s.values.resize(f.size());
  for (Point x = 0; x < f.size(); ++x) s.values[x] = f(x) ? -1 : 1;
  fwht_inplace(std::span<std::int64_t>(s.values));
  if (pairing.kind() == Pairing::Kind::TraceForm) {
    std::vector<std::int64_t> remapped(s.values.size());
    for (Point u = 0; u < remapped.size(); ++u) remapped[u] = s.values[pairing.to_standard(u)];
    s.values = std::move(remapped);
  }
  return s;
}

std::int64_t wht_at(const TruthTable& f, Point u, const Pairing& pairing) {
  pairing.check_vars(f.num_vars());
  std::int64_t sum = 0;
  for (Point x = 0; x < f.size(); ++x) {
    sum += (static_cast<int>(f(x)) ^ pairing.apply(u, x)) ? -1 : 1;
  }
  return sum;
}

std::int64_t wht_restricted(const TruthTable& f, Point u, Subset subset) {
  const int want = subset == Subset::OddWeight ? 1 : 0;
  std::int64_t sum = 0;
  for (Point x = 0; x < f.size(); ++x) {
    if ((std::popcount(x) & 1) != want) continue;
    sum += (static_cast<int>(f(x)) ^ (std::popcount(u & x) & 1)) ? -1 : 1;
  }
  return sum;
}

std::int64_t nonlinearity(const TruthTable& f) {
  const auto s = wht(f);
  std::int64_t peak = 0;
  for (auto v : s.values) peak = std::max(peak, v < 0 ? -v : v);
  return (std::int64_t{1} << (f.num_vars() - 1)) - peak / 2;
}

bool is_flat(const WalshSpectrum& s) { return !non_flat_witness(s).has_value(); }

bool is_bent(const TruthTable& f) {
  if (f.num_vars() % 2 != 0) return false;
  return is_flat(wht(f));
}

TruthTable dual_from_spectrum(const WalshSpectrum& s) {
  require_bent(s);
  return TruthTable::from_function(s.n, [&](Point u) { return s.values[u] < 0; });
}

TruthTable dual(const TruthTable& f, const Pairing& pairing) {
  return dual_from_spectrum(wht(f, pairing));
}

RayleighQuotient rayleigh(const TruthTable& f, const Pairing& pairing) {
  const auto s = wht(f, pairing);
  RayleighQuotient r;
  for (Point x = 0; x < f.size(); ++x) r.s += f(x) ? -s.values[x] : s.values[x];
  if (is_flat(s)) r.normalized = r.s / half_power(f.num_vars());
  return r;
}

std::int64_t normalized_rayleigh(const TruthTable& f, const Pairing& pairing) {
  const auto s = wht(f, pairing);
  require_bent(s);
  std::int64_t total = 0;
  for (Point x = 0; x < f.size(); ++x) total += f(x) ? -s.values[x] : s.values[x];
  return total / half_power(f.num_vars());
}

std::uint64_t dist(const TruthTable& f, const TruthTable& g) {
  require_same_size(f, g);
  std::uint64_t d = 0;
  auto a = f.words();
  auto b = g.words();
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
  }
  return d;
}

std::uint64_t dist_to_dual(const TruthTable& f, const Pairing& pairing, CheckMode mode) {
  const auto s = wht(f, pairing);
  require_bent(s);
  std::int64_t total = 0;
  for (Point x = 0; x < f.size(); ++x) total += f(x) ? -s.values[x] : s.values[x];
  const std::int64_t nf = total / half_power(f.num_vars());
  const std::int64_t spectral = (std::int64_t{1} << (f.num_vars() - 1)) - nf / 2;
  if (mode == CheckMode::Verify) {
    const auto direct = dist(f, dual_from_spectrum(s));
    if (static_cast<std::int64_t>(direct) != spectral) {
      throw std::logic_error("dist_to_dual: spectral route " + std::to_string(spectral) +
                             " disagrees with direct count " + std::to_string(direct));
    }
  }
  return static_cast<std::uint64_t>(spectral);
}

std::string to_string(DualityClass::Tag tag) {
  switch (tag) {
    case DualityClass::Tag::SelfDual: return "self-dual";
    case DualityClass::Tag::AntiSelfDual: return "anti-self-dual";
    case DualityClass::Tag::Neither: return "neither";
  }
  return "neither";
}

DualityClass duality_class(const TruthTable& f, const Pairing& pairing) {
  DualityClass c;
  c.dist_to_dual = dist_to_dual(f, pairing);
  if (c.dist_to_dual == 0) {
    c.tag = DualityClass::Tag::SelfDual;
  } else if (c.dist_to_dual == f.size()) {
    c.tag = DualityClass::Tag::AntiSelfDual;
  }
  return c;
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m{n, std::vector<std::uint32_t>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) m.rows[static_cast<std::size_t>(i)] = 1u << i;
  return m;
}

BitMatrix BitMatrix::from_rows(std::span<const std::string> rows) {
  BitMatrix m{static_cast<int>(rows.size()), {}};
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw std::invalid_argument("matrix must be square");
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == '1') {
        mask |= 1u << j;
      } else if (r[j] != '0') {
        throw std::invalid_argument("matrix entries must be 0 or 1");
      }
    }
    m.rows.push_back(mask);
  }
  return m;
}

BitMatrix BitMatrix::permutation(std::span<const int> perm) {
  BitMatrix m{static_cast<int>(perm.size()), std::vector<std::uint32_t>(perm.size())};
  for (std::size_t i = 0; i < perm.size(); ++i) m.rows[i] = 1u << perm[i];
  if (m.rank() != m.n) throw std::invalid_argument("not a permutation");
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t{n, std::vector<std::uint32_t>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (at(i, j)) t.rows[static_cast<std::size_t>(j)] |= 1u << i;
    }
  }
  return t;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.n != b.n) throw std::invalid_argument("matrix size mismatch");
  BitMatrix c{a.n, std::vector<std::uint32_t>(static_cast<std::size_t>(a.n))};
  for (int i = 0; i < a.n; ++i) {
    c.rows[static_cast<std::size_t>(i)] =
        static_cast<std::uint32_t>(b.apply_row(a.rows[static_cast<std::size_t>(i)]));
  }
  return c;
}

Point BitMatrix::apply_row(Point x) const {
  Point out = 0;
  for (int i = 0; i < n; ++i) {
    if ((x >> i) & 1u) out ^= rows[static_cast<std::size_t>(i)];
  }
  return out;
}

int BitMatrix::rank() const {
  std::vector<Point> v(rows.begin(), rows.end());
  return gf2_rank(v);
}

bool is_orthogonal(const BitMatrix& a) { return a * a.transpose() == BitMatrix::identity(a.n); }

TruthTable orthogonal_transform(const TruthTable& f, const BitMatrix& a, Point b) {
  if (a.n != f.num_vars()) throw std::invalid_argument("matrix order must equal n");
  if (a.rank() != a.n) throw std::invalid_argument("transform matrix is singular over F_2");
  if (b >= f.size()) throw std::invalid_argument("translation vector out of range");
  return TruthTable::from_function(f.num_vars(), [&](Point x) { return f(a.apply_row(x) ^ b); });
}

}  // namespace psbent
