#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "psbent/boolfun.hpp"
#include "psbent/field.hpp"
#include "psbent/spectral.hpp"
#include "psbent/spreads.hpp"

namespace psbent {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Distance-to-dual identities for a single bent function

/// Four evaluations of dist(f, dual f): the direct Hamming count, the
/// support-sum form, the derivative form, and the residual of the identity
/// that equates the last two (which must vanish).
///
/// For a non-standard pairing B the odd-weight set is replaced by
/// {x : B(x, x) = 1}, which is what x . x reduces to for the dot product.
struct MetricIdentities {
  std::int64_t direct = 0;
  std::int64_t form1 = 0;
  std::int64_t form2 = 0;
  std::int64_t residual = 0;

  bool consistent() const {
    return direct == form1 && direct == form2 && residual == 0;
  }
};

MetricIdentities metric_identity_check(const TruthTable& f,
                                       const Pairing& pairing = Pairing::standard());

// ---------------------------------------------------------------------------
// Closed forms for partial-spread functions

/// 2^n - 2^k - 2 sum_i |{x in E_i^perp : f(x) = 1}| for f = ps_minus(sel).
std::int64_t dist_formula_ps_minus(const SpreadSelection& sel);
/// 2^n + 2^k - 2 - 2 sum_i |{x in E_i^perp \ {0} : f(x) = 1}| for f = ps_plus(sel).
std::int64_t dist_formula_ps_plus(const SpreadSelection& sel);
/// Same counting forms over bit-vector subspaces with dot-product complements.
/// PS- or PS+ is chosen by the subspace count.
std::int64_t dist_formula_ps_general(int n, std::span<const std::vector<Point>> bases);

struct IntersectionIndex {
  bool has_e1 = false;
  int i = 0;  // |C intersect C^perp|
};

IntersectionIndex intersection_index(const SpreadSelection& sel);
/// N_f of ps_minus(sel) from its intersection index.
std::int64_t nf_formula(const SpreadSelection& sel);
std::int64_t nf_from_index(int k, const IntersectionIndex& idx);
/// 2^(n-1) - N_f / 2.
std::int64_t dist_from_nf(int n, std::int64_t nf);

// ---------------------------------------------------------------------------
// Census over Desarguesian PS- selections

struct CensusMode {
  enum class Kind { Exhaustive, Sample };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static CensusMode exhaustive() { return {}; }
  static CensusMode sample(std::uint64_t count, std::uint64_t seed) {
    return {Kind::Sample, count, seed};
  }

  friend bool operator==(const CensusMode&, const CensusMode&) = default;
};

inline constexpr int kMaxExhaustiveCensusK = 3;
inline constexpr int kMaxSampleCensusK = 7;

struct CensusReport {
  int k = 0;
  CensusMode mode;
  std::uint64_t total_selections = 0;
  std::map<std::int64_t, std::uint64_t> class_sizes;     // dist -> count
  std::map<std::int64_t, std::vector<SpreadLine>> witnesses;  // first selection per dist
  std::set<std::int64_t> nf_values;
  std::uint64_t selfdual_count = 0;
  std::optional<std::int64_t> min_nonzero_dist;
  std::uint64_t formula_mismatches = 0;
  std::uint64_t selfdual_criterion_mismatches = 0;
  std::uint64_t spectral_checks = 0;

  /// Every class index the closed form allows: (2^(k+1) - 2) m, m = 0..2^(k-1).
  std::vector<std::int64_t> predicted_dists() const;

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// Enumerates (or samples) 2^(k-1)-line selections and compares the closed
/// form for N_f against the counting formula and, where checked, the
/// trace-form spectrum. threads = 0 picks the hardware concurrency; the
/// result does not depend on it.
CensusReport census(const FieldCtx& ctx, const CensusMode& mode, unsigned threads = 0);

/// Uniform random 2^(k-1)-subsets of the spread from a seeded 64-bit Mersenne
/// Twister; identical across platforms.
std::vector<SpreadSelection> sample_selections(const FieldCtx& ctx, std::size_t lines_per_selection,
                                               std::uint64_t count, std::uint64_t seed);

/// Every subset of the spread of the given size, in lexicographic order.
std::vector<SpreadSelection> all_selections(const FieldCtx& ctx, std::size_t lines_per_selection);

bool anti_selfdual_check(const CensusReport& report);

// ---------------------------------------------------------------------------
// Value distribution

struct DistributionRow {
  int n = 0;
  std::vector<std::int64_t> nf_values;    // ascending
  std::vector<std::int64_t> dist_values;  // ascending
  /// For n <= 6 the census realises exactly these sets; nullopt above that.
  std::optional<bool> census_cross_checked;

  /// (N_f, dist) pairs ordered by ascending dist.
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs() const;
};

DistributionRow distribution_table(int n);
bool anti_selfdual_check(const DistributionRow& row);

// ---------------------------------------------------------------------------
// Self-dual counts

struct SelfDualCounts {
  BigInt spread_form;  // C(2^(k-1), 2^(k-2))
  BigInt g_form;       // C(2^(k-1) - 1, 2^(k-2))
  std::optional<std::uint64_t> spread_enumerated;
  std::optional<std::uint64_t> g_enumerated;
  /// g satisfying g(1) = 0 and g(u) = g(1/u); k <= 3 only.
  std::optional<std::uint64_t> g_condition_count;
};

BigInt binomial(std::uint64_t n, std::uint64_t r);
SelfDualCounts selfdual_counts(int k);
/// All balanced g on k variables with g(0) = 0, ascending by truth table.
std::vector<TruthTable> psap_generators(int k);

// ---------------------------------------------------------------------------
// Character sums

struct CharSumReport {
  std::int64_t k_nonzero = 0;   // sum over u != 0
  std::int64_t k_withzero = 0;  // adds u = 0 with 1/0 = 0
  std::int64_t nf_actual = 0;
  std::int64_t stated_value_nonzero = 0;   // 2^k + 2^(k-1) K_nonzero
  std::int64_t stated_value_withzero = 0;  // 2^k + 2^(k-1) K_withzero
  std::int64_t derived_value = 0;         // 2^n - (2^k - 1)^2 + (2^k - 1) K_nonzero

  bool stated_matches_nonzero() const { return stated_value_nonzero == nf_actual; }
  bool stated_matches_withzero() const { return stated_value_withzero == nf_actual; }
  bool derived_matches() const { return derived_value == nf_actual; }
};

/// Fills only the two K fields.
CharSumReport kloosterman_sum(const FieldCtx& ctx, const TruthTable& g);
CharSumReport rayleigh_vs_charsum(const FieldCtx& ctx, const TruthTable& g);

// ---------------------------------------------------------------------------
// Symmetric bent functions

struct SymmetricRecord {
  int eps1 = 0;
  int eps2 = 0;
  int c0 = 0;
  int c1 = 0;
  bool dual_formula_ok = false;
  std::uint64_t dual_mismatches = 0;
  std::optional<Point> first_dual_mismatch;
  std::int64_t nf_actual = 0;
  std::int64_t nf_predicted = 0;
  bool nf_prediction_ok = false;
};

/// Closed-form dual of a symmetric bent function with value vector c.
int symmetric_dual_prediction(int n, const std::vector<int>& c, int weight);
std::int64_t symmetric_nf_prediction(int n, int c0, int c1);
std::vector<SymmetricRecord> symmetric_report(int n);

}  // namespace psbent
