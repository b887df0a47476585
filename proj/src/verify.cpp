#include <functional>
#include <random>
#include <set>

#include "psbent/cli.hpp"
#include "psbent/reference_table.hpp"

namespace psbent::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSuites = {"foundations", "examples", "metric",   "closed-forms",
                                          "census",      "symmetric", "charsum", "table"};

class Battery {
 public:
  void record(const std::string& suite, const std::string& name, bool ok, json detail = {},
              json witness = nullptr) {
    json c{{"suite", suite}, {"check", name}, {"passed", ok}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    if (!ok) {
      failures_.push_back({{"identity", name}, {"witness", witness}});
      c["witness"] = std::move(witness);
    }
    checks_.push_back(std::move(c));
  }

  json finish() const {
    return json{{"passed", failures_.empty()},
                {"checks_run", checks_.size()},
                {"checks", checks_},
                {"failures", failures_}};
  }

 private:
  json checks_ = json::array();
  json failures_ = json::array();
};

std::vector<std::uint32_t> random_perm(std::mt19937_64& rng, std::uint32_t size) {
  std::vector<std::uint32_t> p(size);
  for (std::uint32_t i = 0; i < size; ++i) p[i] = i;
  for (std::uint32_t i = size - 1; i > 0; --i) {
    std::swap(p[i], p[rng() % (i + 1)]);
  }
  return p;
}

TruthTable random_tt(std::mt19937_64& rng, int n) {
  TruthTable t(n);
  for (Point x = 0; x < (Point{1} << n); ++x) {
    if (rng() & 1u) t.set(x, true);
  }
  return t;
}

// Parseval, dual involution and bent/flat agreement for one function.
void foundation_checks(Battery& b, const std::string& label, const TruthTable& f,
                       const Pairing& pairing) {
  const auto s = wht(f, pairing);
  const std::int64_t full = std::int64_t{1} << (2 * s.n);
  b.record("foundations", "parseval/" + label, s.energy() == full, nullptr, f.to_hex());
  const bool bent = is_bent(f);
  b.record("foundations", "bent-iff-flat/" + label, bent == is_flat(s), nullptr, f.to_hex());
  if (bent) {
    const auto d = dual(f, pairing);
    b.record("foundations", "dual-involution/" + label, dual(d, pairing) == f, nullptr, f.to_hex());
  }
}

void suite_foundations(Battery& b) {
  int failures = 0;
  AnfPoly p{TruthTable(4)};
  for (Point w = 0; w < (Point{1} << 16); ++w) {
    TruthTable f(4);
    for (Point x = 0; x < 16; ++x) f.set(x, (w >> x) & 1u);
    if (tt_to_anf(anf_to_tt(AnfPoly{f})).coeffs != f) ++failures;
  }
  b.record("foundations", "moebius-involution/n=4", failures == 0, {{"functions", 1 << 16}},
           failures);

  const FieldCtx ctx2(2);
  for (const auto& g : psap_generators(2)) {
    foundation_checks(b, "psap/k=2/" + g.to_hex(), psap_from_g(ctx2, g), Pairing::trace_form(ctx2));
  }
  for (int n = 4; n <= 10; n += 2) {
    foundation_checks(b, "symmetric/n=" + std::to_string(n), symmetric_bent(n, 1, 0),
                      Pairing::standard());
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 4; ++i) {
    foundation_checks(b, "random/n=6/" + std::to_string(i), random_tt(rng, 6), Pairing::standard());
  }
}

void suite_examples(Battery& b) {
  // Lines of the n = 4 spread as 2-dimensional bases over bit-indexed points.
  const std::vector<Point> e1{1, 4}, e2{2, 8}, e3{3, 13}, e4{6, 9};
  struct Case {
    std::string name;
    std::vector<std::vector<Point>> bases;
    std::int64_t expected;
  };
  const std::vector<Case> cases = {
      {"f1", {e1, e2}, 0},     {"f2", {e3, e4}, 6},     {"f3", {e1, e3}, 12},
      {"g1", {e1, e2, e4}, 0}, {"g2", {e1, e2, e3}, 6}, {"g3", {e1, e3, e4}, 12},
  };
  for (const auto& c : cases) {
    const auto f = ps_general(4, c.bases);
    const auto d = static_cast<std::int64_t>(dist_to_dual(f, Pairing::standard(), CheckMode::Verify));
    const auto formula = dist_formula_ps_general(4, c.bases);
    b.record("examples", "n4-example/" + c.name, d == c.expected && formula == c.expected,
             {{"dist", d}, {"formula", formula}, {"expected", c.expected}}, f.to_hex());
  }

  const auto f = TruthTable::from_function(4, [](Point x) {
    return (((x >> 0) & (x >> 2)) ^ ((x >> 1) & (x >> 3))) & 1u;
  });
  const std::vector<std::string> a_rows{"1110", "1101", "1011", "0111"};
  const std::vector<std::string> ap_rows{"1000", "1100", "1110", "1111"};
  const auto a = BitMatrix::from_rows(a_rows);
  const auto ap = BitMatrix::from_rows(ap_rows);
  const auto gp = orthogonal_transform(f, ap);
  const auto h = orthogonal_transform(f, a, 0b1110);
  const auto g = orthogonal_transform(f, a);
  b.record("examples", "matrix-A-orthogonal", is_orthogonal(a) && !is_orthogonal(ap));
  b.record("examples", "n4-example/g-prime", dist_to_dual(gp) == 8, {{"dist", dist_to_dual(gp)}},
           gp.to_hex());
  b.record("examples", "n4-example/h", dist_to_dual(h) == 8, {{"dist", dist_to_dual(h)}}, h.to_hex());
  b.record("examples", "n4-example/orthogonal-preserves-selfdual",
           dist_to_dual(f) == 0 && dist_to_dual(g) == 0, nullptr, g.to_hex());
}

void metric_check(Battery& b, const std::string& label, const TruthTable& f, const Pairing& p) {
  const auto m = metric_identity_check(f, p);
  b.record("metric", label, m.consistent(), nullptr,
           json{{"truth_table", f.to_hex()},
                {"direct", m.direct},
                {"form1", m.form1},
                {"form2", m.form2},
                {"residual", m.residual}});
}

void suite_metric(Battery& b) {
  const FieldCtx ctx(3);
  const auto trace = Pairing::trace_form(ctx);
  int idx = 0;
  for (const auto& sel : all_selections(ctx, 4)) {
    metric_check(b, "ps-minus/k=3/" + std::to_string(idx++), ps_minus(sel), trace);
  }
  for (int n = 4; n <= 12; n += 2) {
    for (int e1 = 0; e1 < 2; ++e1) {
      for (int e2 = 0; e2 < 2; ++e2) {
        metric_check(b,
                     "symmetric/n=" + std::to_string(n) + "/eps=" + std::to_string(e1) +
                         std::to_string(e2),
                     symmetric_bent(n, e1, e2), Pairing::standard());
      }
    }
  }
  std::mt19937_64 rng(2024);
  for (int k : {3, 4}) {
    for (int i = 0; i < 50; ++i) {
      const auto pi = random_perm(rng, 1u << k);
      const auto g = random_tt(rng, k);
      metric_check(b, "mm/n=" + std::to_string(2 * k) + "/" + std::to_string(i), mm_bent(pi, g),
                   Pairing::standard());
    }
  }
}

void suite_closed_forms(Battery& b) {
  for (int k : {2, 3, 4}) {
    const FieldCtx ctx(k);
    const auto trace = Pairing::trace_form(ctx);
    const std::int64_t bound = (std::int64_t{1} << (2 * k)) - (std::int64_t{1} << k);
    const std::size_t half = std::size_t{1} << (k - 1);
    for (const std::size_t size : {half, half + 1}) {
      const bool minus = size == half;
      const auto sels = k == 2 ? all_selections(ctx, size) : sample_selections(ctx, size, 200, 99);
      std::uint64_t bad = 0;
      json witness = nullptr;
      for (const auto& sel : sels) {
        const auto f = minus ? ps_minus(sel) : ps_plus(sel);
        const auto formula = minus ? dist_formula_ps_minus(sel) : dist_formula_ps_plus(sel);
        const auto spectral = static_cast<std::int64_t>(dist_to_dual(f, trace));
        bool ok = formula == spectral && spectral <= bound;
        if (minus) ok = ok && spectral == dist_from_nf(2 * k, nf_formula(sel));
        if (!ok && bad++ == 0) {
          witness = {{"lines", [&] {
                        json arr = json::array();
                        for (const auto& l : sel.lines()) arr.push_back(to_string(l));
                        return arr;
                      }()},
                     {"formula", formula},
                     {"spectral", spectral}};
        }
      }
      b.record("closed-forms",
               std::string(minus ? "ps-minus" : "ps-plus") + "/k=" + std::to_string(k),
               bad == 0, {{"selections", sels.size()}, {"mismatches", bad}}, witness);
    }
  }
}

void suite_census(Battery& b) {
  const auto r2 = census(FieldCtx(2), CensusMode::exhaustive());
  const std::map<std::int64_t, std::uint64_t> sizes2{{0, 2}, {6, 4}, {12, 4}};
  b.record("census", "exhaustive/k=2",
           r2.total_selections == 10 && r2.selfdual_count == 2 && r2.class_sizes == sizes2 &&
               r2.formula_mismatches == 0 && r2.selfdual_criterion_mismatches == 0,
           to_json(r2));
  const auto r3 = census(FieldCtx(3), CensusMode::exhaustive());
  std::set<std::int64_t> dists3;
  for (const auto& [d, c] : r3.class_sizes) dists3.insert(d);
  b.record("census", "exhaustive/k=3",
           r3.total_selections == 126 && r3.selfdual_count == 6 &&
               dists3 == std::set<std::int64_t>{0, 14, 28, 42, 56} && r3.formula_mismatches == 0 &&
               r3.selfdual_criterion_mismatches == 0,
           to_json(r3));
  b.record("census", "no-anti-selfdual", anti_selfdual_check(r2) && anti_selfdual_check(r3));
  for (int k : {2, 3}) {
    const auto c = selfdual_counts(k);
    const bool ok = c.spread_enumerated && c.g_enumerated &&
                    BigInt(*c.spread_enumerated) == c.spread_form &&
                    BigInt(*c.g_enumerated) == c.g_form;
    b.record("census", "selfdual-counts/k=" + std::to_string(k), ok, to_json(c));
  }
}

void suite_symmetric(Battery& b) {
  for (int n = 4; n <= 12; n += 2) {
    for (const auto& r : symmetric_report(n)) {
      const std::string label = "n=" + std::to_string(n) + "/eps=" + std::to_string(r.eps1) +
                                std::to_string(r.eps2);
      b.record("symmetric", "dual-formula/" + label, r.dual_formula_ok, to_json(r),
               r.first_dual_mismatch ? json(*r.first_dual_mismatch) : json(nullptr));
      b.record("symmetric", "rayleigh-cases/" + label, r.nf_prediction_ok, to_json(r),
               json{{"nf_actual", r.nf_actual}, {"nf_predicted", r.nf_predicted}});
    }
  }
}

void suite_charsum(Battery& b) {
  for (int k : {2, 3}) {
    const FieldCtx ctx(k);
    std::uint64_t stated_mismatches = 0;
    std::uint64_t checked = 0;
    for (const auto& g : psap_generators(k)) {
      const auto r = rayleigh_vs_charsum(ctx, g);
      ++checked;
      if (!r.stated_matches_nonzero()) ++stated_mismatches;
      const bool ok = r.derived_matches() && r.k_withzero == r.k_nonzero + 1;
      if (!ok) {
        b.record("charsum", "derived-relation/k=" + std::to_string(k), false, to_json(r), g.to_hex());
        return;
      }
    }
    // The stated 2^k + 2^(k-1) K relation is reported, not enforced.
    b.record("charsum", "derived-relation/k=" + std::to_string(k), true,
             {{"generators", checked}, {"stated_formula_mismatches", stated_mismatches}});
  }
}

void suite_table(Battery& b) {
  for (const auto& [n, ref] : reference_rows()) {
    const auto row = distribution_table(n);
    b.record("table", "reference-row/n=" + std::to_string(n),
             row.nf_values == ref.nf_values && row.dist_values == ref.dist_values, to_json(row),
             n);
  }
  for (int n = 4; n <= 24; n += 2) {
    const auto row = distribution_table(n);
    const std::int64_t bound = (std::int64_t{1} << n) - (std::int64_t{1} << (n / 2));
    bool ok = anti_selfdual_check(row);
    for (auto d : row.dist_values) {
      ok = ok && d <= bound && (d == 0 || d >= (std::int64_t{1} << (n / 2)));
    }
    if (row.census_cross_checked) ok = ok && *row.census_cross_checked;
    b.record("table", "row-invariants/n=" + std::to_string(n), ok, nullptr, n);
  }
}

}  // namespace

json verify_suite(const std::string& suite) {
  const std::map<std::string, std::function<void(Battery&)>> runners = {
      {"foundations", suite_foundations}, {"examples", suite_examples},
      {"metric", suite_metric},           {"closed-forms", suite_closed_forms},
      {"census", suite_census},           {"symmetric", suite_symmetric},
      {"charsum", suite_charsum},         {"table", suite_table},
  };
  if (suite != "all" && !runners.contains(suite)) {
    throw UsageError("unknown suite '" + suite + "'");
  }
  Battery b;
  for (const auto& name : kSuites) {
    if (suite == "all" || suite == name) runners.at(name)(b);
  }
  json j = b.finish();
  j["suite"] = suite;
  return j;
}

}  // namespace psbent::cli
