#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "psbent/analysis.hpp"
#include "psbent/reference_table.hpp"

using namespace psbent;

namespace {

const GFElem kOmega{0b10};
const GFElem kOmega2{0b11};

// The identities written out with the direct oracles (dot-product pairing).
MetricIdentities metric_oracle(const TruthTable& f) {
  const int n = f.num_vars();
  const std::int64_t s = f(0) ? -1 : 1;
  const auto w = oracle::wht(f);
  const auto d = oracle::dual(f);
  std::int64_t supp = 0, deriv = 0, deriv_odd = 0;
  for (Point u = 0; u < f.size(); ++u) {
    if (f(u)) supp += w[u];
    const auto du = tt_derivative(f, u);
    deriv += oracle::wht_at(du, u);
    for (Point x = 0; x < f.size(); ++x) {
      if (oracle::dot(x, x)) deriv_odd += (du(x) ^ oracle::dot(u, x)) ? -1 : 1;
    }
  }
  const std::int64_t k = n / 2;
  MetricIdentities m;
  m.direct = static_cast<std::int64_t>(oracle::hamming(f, d));
  m.form1 = ((std::int64_t{1} << (n - 1 + k)) - (std::int64_t{1} << (2 * k - 1)) * s + supp) >> k;
  m.form2 = ((std::int64_t{1} << (n + k)) - deriv + 2 * deriv_odd) >> (k + 1);
  m.residual = 2 * supp + deriv - 2 * deriv_odd - (std::int64_t{1} << n) * s;
  return m;
}

}  // namespace

TEST_CASE("metric identities") {
  const auto f = TruthTable::from_function(
      4, [](Point x) { return (((x >> 0) & (x >> 2)) ^ ((x >> 1) & (x >> 3))) & 1u; });
  const auto m = metric_identity_check(f);
  CHECK(m.direct == 0);
  CHECK(m.form1 == 0);
  CHECK(m.form2 == 0);
  CHECK(m.residual == 0);
  CHECK_THROWS_AS(metric_identity_check(TruthTable(4)), NotBentError);

  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto h = mm_bent(oracle::random_perm(rng, 8), oracle::random_tt(rng, 3));
    const auto got = metric_identity_check(h);
    const auto want = metric_oracle(h);
    REQUIRE(got.consistent());
    REQUIRE(got.direct == want.direct);
    REQUIRE(got.form1 == want.form1);
    REQUIRE(got.form2 == want.form2);
    REQUIRE(want.residual == 0);
  }
  const FieldCtx ctx(3);
  for (const auto& sel : all_selections(ctx, 4)) {
    REQUIRE(metric_identity_check(ps_minus(sel), Pairing::trace_form(ctx)).consistent());
  }
}

TEST_CASE("closed forms for PS- and PS+") {
  const FieldCtx k2(2);
  const SpreadSelection sd(k2, {SpreadLine::finite(kOmega), SpreadLine::finite(kOmega2)});
  CHECK(dist_formula_ps_minus(sd) == 0);

  const std::vector<std::vector<Point>> f2{{3, 13}, {6, 9}};
  const std::vector<std::vector<Point>> g2{{1, 4}, {2, 8}, {3, 13}};
  const std::vector<std::vector<Point>> g3{{1, 4}, {3, 13}, {6, 9}};
  CHECK(dist_formula_ps_general(4, f2) == 6);
  CHECK(dist_formula_ps_general(4, g2) == 6);
  CHECK(dist_formula_ps_general(4, g3) == 12);

  for (int k = 2; k <= 5; ++k) {
    const FieldCtx ctx(k);
    const auto trace = Pairing::trace_form(ctx);
    const std::int64_t bound = (std::int64_t{1} << (2 * k)) - (std::int64_t{1} << k);
    const std::size_t half = std::size_t{1} << (k - 1);
    const auto minus = k <= 3 ? all_selections(ctx, half) : sample_selections(ctx, half, 200, 5);
    for (const auto& sel : minus) {
      const auto d = static_cast<std::int64_t>(dist_to_dual(ps_minus(sel), trace));
      REQUIRE(dist_formula_ps_minus(sel) == d);
      REQUIRE(dist_from_nf(2 * k, nf_formula(sel)) == d);
      REQUIRE(d <= bound);
    }
    if (k <= 4) {
      const auto plus = k == 2 ? all_selections(ctx, half + 1) : sample_selections(ctx, half + 1, 200, 6);
      if (k == 2) CHECK(plus.size() == 10);
      for (const auto& sel : plus) {
        const auto d = static_cast<std::int64_t>(dist_to_dual(ps_plus(sel), trace));
        REQUIRE(dist_formula_ps_plus(sel) == d);
        REQUIRE(d <= bound);
      }
    }
  }
  CHECK_THROWS_AS(dist_formula_ps_minus(SpreadSelection(k2, {SpreadLine::finite(0u)})),
                  std::invalid_argument);
}

TEST_CASE("intersection index and N_f") {
  const FieldCtx k2(2), k3(3);
  const auto a = intersection_index(SpreadSelection(k2, {SpreadLine::finite(0u), SpreadLine::finite(kOmega)}));
  CHECK_FALSE(a.has_e1);
  CHECK(a.i == 0);
  const SpreadSelection b(k2, {SpreadLine::finite(1u), SpreadLine::finite(0u)});
  CHECK(intersection_index(b).has_e1);
  CHECK(intersection_index(b).i == 1);
  const SpreadSelection sd(k2, {SpreadLine::finite(kOmega), SpreadLine::finite(kOmega2)});
  CHECK(intersection_index(sd).i == 2);
  CHECK(nf_formula(sd) == 16);
  CHECK(nf_formula(SpreadSelection(k2, {SpreadLine::finite(0u), SpreadLine::finite(kOmega)})) == -8);
  CHECK(nf_from_index(3, {false, 1}) == -20);
  CHECK(nf_from_index(3, {false, 4}) == 64);
  CHECK(dist_from_nf(6, -20) == 42);
  for (const auto& sel : all_selections(k3, 4)) {
    REQUIRE(nf_formula(sel) == normalized_rayleigh(ps_minus(sel), Pairing::trace_form(k3)));
  }
}

TEST_CASE("census k = 2") {
  const auto r = census(FieldCtx(2), CensusMode::exhaustive());
  CHECK(r.total_selections == 10);
  CHECK(r.selfdual_count == 2);
  CHECK(r.class_sizes == std::map<std::int64_t, std::uint64_t>{{0, 2}, {6, 4}, {12, 4}});
  CHECK(r.min_nonzero_dist == 6);
  CHECK(r.formula_mismatches == 0);
  CHECK(r.nf_values == std::set<std::int64_t>{-8, 4, 16});
  CHECK(anti_selfdual_check(r));
  CHECK(r.predicted_dists() == std::vector<std::int64_t>{0, 6, 12});
}

TEST_CASE("census k = 3 and invariants") {
  const auto r = census(FieldCtx(3), CensusMode::exhaustive());
  CHECK(r.total_selections == 126);
  CHECK(r.selfdual_count == 6);
  CHECK(r.formula_mismatches == 0);
  CHECK(r.selfdual_criterion_mismatches == 0);
  CHECK(r.spectral_checks == 126);
  std::set<std::int64_t> keys;
  std::uint64_t total = 0;
  for (const auto& [d, c] : r.class_sizes) {
    keys.insert(d);
    total += c;
    CHECK(d % 14 == 0);
  }
  CHECK(keys == std::set<std::int64_t>{0, 14, 28, 42, 56});
  CHECK(total == r.total_selections);
  CHECK(r.class_sizes.at(0) == r.selfdual_count);
  CHECK(*r.min_nonzero_dist >= 8);
}

TEST_CASE("census is independent of the thread count") {
  for (int k = 2; k <= 3; ++k) {
    const FieldCtx ctx(k);
    CHECK(census(ctx, CensusMode::exhaustive(), 1) == census(ctx, CensusMode::exhaustive(), 4));
  }
  const FieldCtx k5(5);
  const auto a = census(k5, CensusMode::sample(300, 42), 1);
  const auto b = census(k5, CensusMode::sample(300, 42), 3);
  CHECK(a == b);
  CHECK(a.total_selections == 300);
  CHECK(a.formula_mismatches == 0);
  CHECK(a.spectral_checks == 32);
  for (const auto& [d, c] : a.class_sizes) CHECK(d % 62 == 0);
  CHECK(census(k5, CensusMode::sample(300, 43), 1) != a);
  CHECK_THROWS_AS(census(FieldCtx(4), CensusMode::exhaustive()), std::invalid_argument);
  CHECK_THROWS_AS(census(FieldCtx(8), CensusMode::sample(10, 1)), std::invalid_argument);
}

TEST_CASE("sampling is reproducible and uniform in shape") {
  const FieldCtx ctx(4);
  const auto a = sample_selections(ctx, 8, 50, 7);
  const auto b = sample_selections(ctx, 8, 50, 7);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].lines() == b[i].lines());
    REQUIRE(a[i].size() == 8);
  }
  CHECK(all_selections(FieldCtx(2), 2).size() == 10);
  CHECK(all_selections(FieldCtx(3), 4).size() == 126);
}

TEST_CASE("distribution rows") {
  const auto r4 = distribution_table(4);
  CHECK(r4.dist_values == std::vector<std::int64_t>{0, 6, 12});
  CHECK(r4.nf_values == std::vector<std::int64_t>{-8, 4, 16});
  CHECK(r4.census_cross_checked == true);
  CHECK(distribution_table(8).nf_values ==
        std::vector<std::int64_t>{-224, -164, -104, -44, 16, 76, 136, 196, 256});
  const auto r14 = distribution_table(14);
  CHECK(r14.dist_values.size() == 65);
  CHECK(r14.dist_values.back() == 16256);
  CHECK(r14.dist_values[1] == 254);
  CHECK(r14.nf_values.front() == -16128);
  CHECK_FALSE(r14.census_cross_checked);
  CHECK(anti_selfdual_check(r14));
  CHECK_THROWS_AS(distribution_table(5), std::invalid_argument);
  CHECK_THROWS_AS(distribution_table(26), std::invalid_argument);

  for (int n = 4; n <= 24; n += 2) {
    const auto row = distribution_table(n);
    const int k = n / 2;
    REQUIRE(row.nf_values.size() == (std::size_t{1} << (k - 1)) + 1);
    REQUIRE(row.dist_values.size() == row.nf_values.size());
    REQUIRE(anti_selfdual_check(row));
    for (const auto& [nf, d] : row.pairs()) {
      REQUIRE(d == (std::int64_t{1} << (n - 1)) - nf / 2);
      REQUIRE(d <= (std::int64_t{1} << n) - (std::int64_t{1} << k));
      if (d != 0) REQUIRE(d >= (std::int64_t{1} << k));
    }
  }
  for (const auto& [n, ref] : reference_rows()) {
    CHECK(distribution_table(n).nf_values == ref.nf_values);
    CHECK(distribution_table(n).dist_values == ref.dist_values);
  }
}

TEST_CASE("self-dual counts") {
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(7, 4) == 35);
  const auto c2 = selfdual_counts(2);
  CHECK(c2.spread_form == 2);
  CHECK(c2.g_form == 1);
  CHECK(c2.spread_enumerated == 2);
  CHECK(c2.g_enumerated == 1);
  const auto c3 = selfdual_counts(3);
  CHECK(c3.spread_form == 6);
  CHECK(c3.g_form == 3);
  CHECK(c3.spread_enumerated == 6);
  CHECK(c3.g_enumerated == 3);
  CHECK(c3.g_condition_count == 3);
  const auto c4 = selfdual_counts(4);
  CHECK(c4.spread_form == 70);
  CHECK(c4.g_form == 35);
  CHECK_FALSE(c4.spread_enumerated);
  CHECK(selfdual_counts(9).spread_form == binomial(256, 128));
  CHECK(selfdual_counts(9).spread_form > BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("character sums") {
  const FieldCtx k2(2), k3(3);
  CHECK(kloosterman_sum(k2, TruthTable(2)).k_nonzero == 3);
  CHECK(kloosterman_sum(k3, TruthTable(3)).k_nonzero == 7);
  CHECK(kloosterman_sum(k2, TruthTable::from_hex("c", 2)).k_nonzero == 3);
  // g = Tr on GF(8): direct 7-term sum
  const auto tr = TruthTable::from_function(3, [&](Point u) { return k3.trace(GFElem(static_cast<std::uint32_t>(u))) == 1; });
  std::int64_t direct = 0;
  for (std::uint32_t u = 1; u < 8; ++u) {
    direct += (tr(u) ^ tr(oracle::gf_inv(u, 0xB, 3))) ? -1 : 1;
  }
  CHECK(kloosterman_sum(k3, tr).k_nonzero == direct);

  const auto sd = rayleigh_vs_charsum(k2, TruthTable::from_hex("c", 2));
  CHECK(sd.nf_actual == 16);
  CHECK(sd.stated_value_nonzero == 10);
  CHECK_FALSE(sd.stated_matches_nonzero());
  CHECK(sd.derived_value == 16);
  CHECK(sd.derived_matches());
  const auto other = rayleigh_vs_charsum(k2, TruthTable::from_hex("6", 2));
  CHECK(other.k_nonzero == -1);
  CHECK(other.nf_actual == 4);
  CHECK(other.derived_matches());
  CHECK_THROWS_AS(rayleigh_vs_charsum(k2, TruthTable::from_hex("2", 2)), std::invalid_argument);

  for (int k = 2; k <= 3; ++k) {
    const FieldCtx ctx(k);
    for (const auto& g : psap_generators(k)) {
      const auto r = rayleigh_vs_charsum(ctx, g);
      REQUIRE(r.derived_matches());
      REQUIRE(r.k_withzero == r.k_nonzero + 1);
      REQUIRE(r.nf_actual == normalized_rayleigh(psap_from_g(ctx, g), Pairing::trace_form(ctx)));
    }
  }
}

TEST_CASE("symmetric bent dual and N_f formulas") {
  for (const auto& r : symmetric_report(4)) {
    CHECK(r.nf_actual == 0);
    CHECK(r.nf_prediction_ok);
    CHECK(r.dual_formula_ok);
  }
  for (const auto& r : symmetric_report(6)) {
    CHECK(r.nf_actual == (r.eps1 == 1 ? 64 : -64));
    CHECK(r.nf_prediction_ok);
    CHECK(r.dual_formula_ok);
  }
  for (const auto& r : symmetric_report(10)) {
    CHECK(r.nf_actual == (r.eps1 == 0 ? 1024 : -1024));
  }
  for (int n = 4; n <= 12; n += 2) {
    const auto rows = symmetric_report(n);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
      const auto f = symmetric_bent(n, r.eps1, r.eps2);
      REQUIRE(r.nf_actual == normalized_rayleigh(f));
      REQUIRE(r.dual_formula_ok);
      REQUIRE(r.dual_mismatches == 0);
      REQUIRE(r.nf_prediction_ok);
      const auto c = symmetric_value_vector(f);
      const auto d = oracle::dual(f);
      for (Point x = 0; x < f.size(); ++x) {
        REQUIRE(d(x) == (symmetric_dual_prediction(n, c, __builtin_popcountll(x)) == 1));
      }
    }
  }
  CHECK(symmetric_nf_prediction(8, 0, 1) == 0);
}
