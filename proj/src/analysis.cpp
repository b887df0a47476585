#include "psbent/analysis.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <thread>

namespace psbent {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0) {
    throw std::logic_error(std::string(what) + " is not an integer: " + std::to_string(num) +
                           " / " + std::to_string(den));
  }
  return num / den;
}

// Number of points of `pts` (skipping the origin if asked) in supp(f).
std::int64_t support_hits(const TruthTable& f, std::span<const Point> pts, bool skip_origin) {
  std::int64_t c = 0;
  for (Point p : pts) {
    if (skip_origin && p == 0) continue;
    if (f(p)) ++c;
  }
  return c;
}

void require_census_k(int k, const CensusMode& mode) {
  if (mode.kind == CensusMode::Kind::Exhaustive) {
    if (k < 2 || k > kMaxExhaustiveCensusK) {
      throw std::invalid_argument("exhaustive census supports 2 <= k <= 3, got k = " +
                                  std::to_string(k));
    }
  } else {
    if (k < 2 || k > kMaxSampleCensusK) {
      throw std::invalid_argument("sampled census supports 2 <= k <= 7, got k = " +
                                  std::to_string(k));
    }
    if (mode.samples == 0) throw std::invalid_argument("sampled census needs at least one sample");
  }
}

// Unbiased draw in [0, bound) from raw 64-bit Mersenne Twister output.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

struct SelectionOutcome {
  std::int64_t formula_dist = 0;
  std::int64_t nf = 0;
  bool mismatch = false;
  bool criterion_mismatch = false;
  bool spectral_checked = false;
};

SelectionOutcome evaluate_selection(const SpreadSelection& sel, bool spectral) {
  const int k = sel.field().degree();
  SelectionOutcome out;
  out.nf = nf_formula(sel);
  out.formula_dist = dist_from_nf(2 * k, out.nf);
  if (dist_formula_ps_minus(sel) != out.formula_dist) out.mismatch = true;
  if (spectral) {
    out.spectral_checked = true;
    const auto f = ps_minus(sel);
    const auto trace = Pairing::trace_form(sel.field());
    if (static_cast<std::int64_t>(dist_to_dual(f, trace, CheckMode::Verify)) != out.formula_dist ||
        normalized_rayleigh(f, trace) != out.nf) {
      out.mismatch = true;
    }
  }
  if (is_selfdual_selection(sel) != (out.formula_dist == 0)) out.criterion_mismatch = true;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

MetricIdentities metric_identity_check(const TruthTable& f, const Pairing& pairing) {
  const int n = f.num_vars();
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("metric identities need even n >= 4");
  const int k = n / 2;
  const auto spec = wht(f, pairing);
  const auto fd = dual_from_spectrum(spec);
  const std::int64_t sign0 = f(0) ? -1 : 1;

  std::int64_t supp_sum = 0;
  for (Point u = 0; u < f.size(); ++u) {
    if (f(u)) supp_sum += spec[u];
  }

  // sum_u W_{D_u f}(u) over all x and over {x : <x, x> = 1}.
  std::vector<std::uint8_t> self_odd(f.size());
  for (Point x = 0; x < f.size(); ++x) {
    self_odd[x] = static_cast<std::uint8_t>(pairing.apply(x, x));
  }
  std::int64_t deriv_sum = 0;
  std::int64_t deriv_odd_sum = 0;
  for (Point u = 0; u < f.size(); ++u) {
    const Point v = pairing.to_standard(u);
    for (Point x = 0; x < f.size(); ++x) {
      const int e = static_cast<int>(f(x)) ^ static_cast<int>(f(x ^ u)) ^ (std::popcount(v & x) & 1);
      const std::int64_t term = e ? -1 : 1;
      deriv_sum += term;
      if (self_odd[x]) deriv_odd_sum += term;
    }
  }

  MetricIdentities m;
  m.direct = static_cast<std::int64_t>(dist(f, fd));
  m.form1 = exact_div(pow2(n - 1 + k) - pow2(2 * k - 1) * sign0 + supp_sum, pow2(k),
                      "support-sum form");
  m.form2 = exact_div(pow2(n + k) - deriv_sum + 2 * deriv_odd_sum, pow2(k + 1),
                      "derivative form");
  m.residual = 2 * supp_sum + deriv_sum - 2 * deriv_odd_sum - pow2(n) * sign0;
  return m;
}

// ---------------------------------------------------------------------------

std::int64_t dist_formula_ps_minus(const SpreadSelection& sel) {
  const FieldCtx& ctx = sel.field();
  const int k = ctx.degree();
  const auto f = ps_minus(sel);
  std::int64_t hits = 0;
  for (const auto& line : sel.lines()) {
    hits += support_hits(f, line_points(ctx, line_dual(ctx, line)), false);
  }
  return pow2(2 * k) - pow2(k) - 2 * hits;
}

std::int64_t dist_formula_ps_plus(const SpreadSelection& sel) {
  const FieldCtx& ctx = sel.field();
  const int k = ctx.degree();
  const auto f = ps_plus(sel);
  std::int64_t hits = 0;
  for (const auto& line : sel.lines()) {
    hits += support_hits(f, line_points(ctx, line_dual(ctx, line)), true);
  }
  return pow2(2 * k) + pow2(k) - 2 - 2 * hits;
}

std::int64_t dist_formula_ps_general(int n, std::span<const std::vector<Point>> bases) {
  const auto f = ps_general(n, bases);
  const auto subs = make_partial_spread(n, bases);
  const int k = n / 2;
  const bool plus = subs.size() == (std::size_t{1} << (k - 1)) + 1;
  std::int64_t hits = 0;
  for (const auto& s : subs) {
    hits += support_hits(f, orthogonal_complement(n, s.points), plus);
  }
  return plus ? pow2(n) + pow2(k) - 2 - 2 * hits : pow2(n) - pow2(k) - 2 * hits;
}

IntersectionIndex intersection_index(const SpreadSelection& sel) {
  IntersectionIndex idx;
  idx.has_e1 = sel.contains(SpreadLine::finite(1u));
  for (const auto& line : sel.lines()) {
    if (sel.contains(line_dual(sel.field(), line))) ++idx.i;
  }
  return idx;
}

std::int64_t nf_from_index(int k, const IntersectionIndex& idx) {
  const std::int64_t n_points = pow2(2 * k);
  const std::int64_t line_nonzero = pow2(k) - 1;
  if (!idx.has_e1) return n_points - 4 * (pow2(k - 1) - idx.i) * line_nonzero;
  const std::int64_t j = idx.i - 1;
  return n_points - 4 * (pow2(k - 1) - j - 1) * line_nonzero;
}

std::int64_t nf_formula(const SpreadSelection& sel) {
  return nf_from_index(sel.field().degree(), intersection_index(sel));
}

std::int64_t dist_from_nf(int n, std::int64_t nf) { return pow2(n - 1) - nf / 2; }

// ---------------------------------------------------------------------------

std::vector<std::int64_t> CensusReport::predicted_dists() const {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 0; m <= pow2(k - 1); ++m) out.push_back((pow2(k + 1) - 2) * m);
  return out;
}

std::vector<SpreadSelection> all_selections(const FieldCtx& ctx, std::size_t r) {
  const auto spread = desarguesian(ctx);
  const std::size_t m = spread.size();
  std::vector<SpreadSelection> out;
  if (r > m) return out;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    std::vector<SpreadLine> lines;
    lines.reserve(r);
    for (auto i : idx) lines.push_back(spread[i]);
    out.emplace_back(ctx, std::move(lines));
    std::size_t pos = r;
    while (pos > 0 && idx[pos - 1] == m - r + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
  return out;
}

std::vector<SpreadSelection> sample_selections(const FieldCtx& ctx, std::size_t r,
                                               std::uint64_t count, std::uint64_t seed) {
  const auto spread = desarguesian(ctx);
  if (r > spread.size()) throw std::invalid_argument("selection larger than the spread");
  std::mt19937_64 rng(seed);
  std::vector<SpreadSelection> out;
  out.reserve(count);
  std::vector<std::size_t> perm(spread.size());
  for (std::uint64_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::vector<SpreadLine> lines;
    lines.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
      const auto j = i + static_cast<std::size_t>(uniform_below(rng, perm.size() - i));
      std::swap(perm[i], perm[j]);
      lines.push_back(spread[perm[i]]);
    }
    out.emplace_back(ctx, std::move(lines));
  }
  return out;
}

CensusReport census(const FieldCtx& ctx, const CensusMode& mode, unsigned threads) {
  const int k = ctx.degree();
  require_census_k(k, mode);
  const std::size_t r = std::size_t{1} << (k - 1);
  const bool exhaustive = mode.kind == CensusMode::Kind::Exhaustive;
  const auto selections =
      exhaustive ? all_selections(ctx, r) : sample_selections(ctx, r, mode.samples, mode.seed);
  // Sampled runs check the spectrum on a fixed prefix of the samples.
  constexpr std::size_t kSpotChecks = 32;

  std::vector<SelectionOutcome> outcomes(selections.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, selections.size()));
  const std::size_t chunk = (selections.size() + threads - 1) / threads;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(selections.size(), lo + chunk);
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) {
          outcomes[i] = evaluate_selection(selections[i], exhaustive || i < kSpotChecks);
        }
      });
    }
  }

  CensusReport rep;
  rep.k = k;
  rep.mode = mode;
  rep.total_selections = selections.size();
  for (std::size_t i = 0; i < selections.size(); ++i) {
    const auto& o = outcomes[i];
    ++rep.class_sizes[o.formula_dist];
    rep.witnesses.try_emplace(o.formula_dist, selections[i].lines());
    rep.nf_values.insert(o.nf);
    if (o.formula_dist == 0) ++rep.selfdual_count;
    if (o.formula_dist != 0 && (!rep.min_nonzero_dist || o.formula_dist < *rep.min_nonzero_dist)) {
      rep.min_nonzero_dist = o.formula_dist;
    }
    if (o.mismatch) ++rep.formula_mismatches;
    if (o.criterion_mismatch) ++rep.selfdual_criterion_mismatches;
    if (o.spectral_checked) ++rep.spectral_checks;
  }
  return rep;
}

bool anti_selfdual_check(const CensusReport& report) {
  const std::int64_t full = pow2(2 * report.k);
  return !report.nf_values.contains(-full) && !report.class_sizes.contains(full);
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::int64_t, std::int64_t>> DistributionRow::pairs() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto d : dist_values) out.emplace_back(pow2(n) - 2 * d, d);
  return out;
}

DistributionRow distribution_table(int n) {
  if (n < 4 || n > 24 || n % 2 != 0) {
    throw std::invalid_argument("distribution table needs even n in [4, 24], got " +
                                std::to_string(n));
  }
  const int k = n / 2;
  DistributionRow row;
  row.n = n;
  for (std::int64_t i = 0; i <= pow2(k - 1); ++i) {
    row.nf_values.push_back(nf_from_index(k, IntersectionIndex{false, static_cast<int>(i)}));
    row.dist_values.push_back((pow2(k + 1) - 2) * (pow2(k - 1) - i));
  }
  std::sort(row.nf_values.begin(), row.nf_values.end());
  std::sort(row.dist_values.begin(), row.dist_values.end());
  if (n <= 2 * kMaxExhaustiveCensusK) {
    const auto rep = census(FieldCtx(k), CensusMode::exhaustive(), 1);
    std::vector<std::int64_t> dists;
    for (const auto& [d, count] : rep.class_sizes) dists.push_back(d);
    const std::vector<std::int64_t> nfs(rep.nf_values.begin(), rep.nf_values.end());
    row.census_cross_checked = dists == row.dist_values && nfs == row.nf_values &&
                               rep.formula_mismatches == 0;
  }
  return row;
}

bool anti_selfdual_check(const DistributionRow& row) {
  const std::int64_t full = pow2(row.n);
  return std::find(row.nf_values.begin(), row.nf_values.end(), -full) == row.nf_values.end() &&
         std::find(row.dist_values.begin(), row.dist_values.end(), full) == row.dist_values.end();
}

// ---------------------------------------------------------------------------

BigInt binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

std::vector<TruthTable> psap_generators(int k) {
  if (k < 2 || k > 4) throw std::invalid_argument("generator enumeration supports 2 <= k <= 4");
  const std::uint32_t q = 1u << k;
  std::vector<TruthTable> out;
  // Supports are half-size subsets of the nonzero elements.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
    if ((mask & 1u) || std::popcount(mask) != static_cast<int>(q / 2)) continue;
    out.push_back(TruthTable::from_function(k, [&](Point u) { return (mask >> u) & 1u; }));
  }
  return out;
}

SelfDualCounts selfdual_counts(int k) {
  if (k < 2 || k > 16) throw std::invalid_argument("self-dual counts need 2 <= k <= 16");
  SelfDualCounts c;
  const std::uint64_t half = std::uint64_t{1} << (k - 1);
  const std::uint64_t quarter = std::uint64_t{1} << (k - 2);
  c.spread_form = binomial(half, quarter);
  c.g_form = binomial(half - 1, quarter);
  if (k <= kMaxExhaustiveCensusK) {
    const FieldCtx ctx(k);
    const auto trace = Pairing::trace_form(ctx);
    std::uint64_t spread = 0;
    for (const auto& sel : all_selections(ctx, half)) {
      if (dist_to_dual(ps_minus(sel), trace) == 0) ++spread;
    }
    std::uint64_t g_self = 0;
    std::uint64_t g_cond = 0;
    for (const auto& g : psap_generators(k)) {
      if (dist_to_dual(psap_from_g(ctx, g), trace) == 0) ++g_self;
      bool cond = !g(1);
      for (std::uint32_t u = 1; u < ctx.order() && cond; ++u) {
        cond = g(u) == g(ctx.inv(GFElem{u}).bits);
      }
      if (cond) ++g_cond;
    }
    c.spread_enumerated = spread;
    c.g_enumerated = g_self;
    c.g_condition_count = g_cond;
  }
  return c;
}

// ---------------------------------------------------------------------------

CharSumReport kloosterman_sum(const FieldCtx& ctx, const TruthTable& g) {
  if (g.num_vars() != ctx.degree()) {
    throw std::invalid_argument("g must have k = " + std::to_string(ctx.degree()) + " variables");
  }
  CharSumReport r;
  for (std::uint32_t u = 1; u < ctx.order(); ++u) {
    r.k_nonzero += g(u) == g(ctx.inv(GFElem{u}).bits) ? 1 : -1;
  }
  // u = 0 contributes (-1)^(g(0) + g(0)) = 1.
  r.k_withzero = r.k_nonzero + 1;
  return r;
}

CharSumReport rayleigh_vs_charsum(const FieldCtx& ctx, const TruthTable& g) {
  CharSumReport r = kloosterman_sum(ctx, g);
  const int k = ctx.degree();
  const auto f = psap_from_g(ctx, g);
  r.nf_actual = normalized_rayleigh(f, Pairing::trace_form(ctx));
  r.stated_value_nonzero = pow2(k) + pow2(k - 1) * r.k_nonzero;
  r.stated_value_withzero = pow2(k) + pow2(k - 1) * r.k_withzero;
  const std::int64_t q1 = pow2(k) - 1;
  r.derived_value = pow2(2 * k) - q1 * q1 + q1 * r.k_nonzero;
  return r;
}

// ---------------------------------------------------------------------------

int symmetric_dual_prediction(int n, const std::vector<int>& c, int weight) {
  if ((n / 2) % 2 == 0) return (weight + c[static_cast<std::size_t>(weight)] + n / 4) & 1;
  if (weight <= n - 1) return (weight + c[static_cast<std::size_t>(weight) + 1] + n / 4) & 1;
  return (n + 1 + c[1] + n / 4) & 1;
}

std::int64_t symmetric_nf_prediction(int n, int c0, int c1) {
  if ((n / 2) % 2 == 0) return 0;
  const bool q_even = (n / 4) % 2 == 0;
  const bool same = c0 == c1;
  return (q_even == same) ? pow2(n) : -pow2(n);
}

std::vector<SymmetricRecord> symmetric_report(int n) {
  if (n < 4 || n > 24 || n % 2 != 0) {
    throw std::invalid_argument("symmetric report needs even n in [4, 24]");
  }
  std::vector<SymmetricRecord> out;
  for (int e1 = 0; e1 <= 1; ++e1) {
    for (int e2 = 0; e2 <= 1; ++e2) {
      const auto f = symmetric_bent(n, e1, e2);
      const auto c = symmetric_value_vector(f);
      const auto fd = dual(f);
      SymmetricRecord rec;
      rec.eps1 = e1;
      rec.eps2 = e2;
      rec.c0 = c[0];
      rec.c1 = c[1];
      for (Point x = 0; x < f.size(); ++x) {
        if (symmetric_dual_prediction(n, c, std::popcount(x)) != static_cast<int>(fd(x))) {
          ++rec.dual_mismatches;
          if (!rec.first_dual_mismatch) rec.first_dual_mismatch = x;
        }
      }
      rec.dual_formula_ok = rec.dual_mismatches == 0;
      rec.nf_actual = normalized_rayleigh(f);
      rec.nf_predicted = symmetric_nf_prediction(n, rec.c0, rec.c1);
      rec.nf_prediction_ok = rec.nf_actual == rec.nf_predicted;
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace psbent
