#include "psbent/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

namespace psbent::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kConstructKinds = {"psap", "ps-", "ps+", "ps-general", "mm",
                                               "symmetric"};

bool is_hex_token(const std::string& s) {
  std::string_view v = s;
  if (v.starts_with("0x") || v.starts_with("0X")) v.remove_prefix(2);
  if (v.empty()) return false;
  return std::all_of(v.begin(), v.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

std::uint32_t parse_poly(const std::string& s) {
  if (!is_hex_token(s)) throw UsageError("--poly expects a hex mask such as 0x13, got '" + s + "'");
  const auto v = std::stoull(s, nullptr, 16);
  if (v > 0x1FFFFu) throw UsageError("--poly mask exceeds degree 16");
  return static_cast<std::uint32_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

// Point written as a binary numeral of its index, or as 0x-prefixed hex.
Point parse_point(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = s.starts_with("0x") ? std::stoull(s, &used, 16) : std::stoull(s, &used, 2);
  } catch (const std::exception&) {
    throw UsageError("malformed subspace vector '" + s + "'");
  }
  if (used != s.size()) throw UsageError("malformed subspace vector '" + s + "'");
  return v;
}

FieldCtx make_field(const CommandSpec& spec, int k) {
  try {
    return FieldCtx(k, spec.poly);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Pairing make_pairing(const CommandSpec& spec, int n) {
  if (spec.pairing == "standard") return Pairing::standard();
  if (n % 2 != 0) throw UsageError("trace pairing needs even n");
  const int k = spec.k.value_or(n / 2);
  if (2 * k != n) throw UsageError("trace pairing over GF(2^k) needs n = 2k");
  return Pairing::trace_form(make_field(spec, k));
}

std::vector<TruthTable> read_tables(const CommandSpec& spec, std::istream& in, std::size_t want) {
  std::vector<std::string> tokens = spec.tables;
  if (tokens.empty()) {
    std::string tok;
    while (tokens.size() < want && in >> tok) tokens.push_back(tok);
  }
  if (tokens.empty()) throw UsageError("no truth table given (argument or stdin)");
  std::vector<TruthTable> out;
  for (const auto& t : tokens) {
    if (!is_hex_token(t)) throw UsageError("malformed hex truth table '" + t + "'");
    out.push_back(spec.n ? TruthTable::from_hex(t, *spec.n) : TruthTable::from_hex(t));
  }
  return out;
}

json describe(const TruthTable& f, const Pairing& pairing) {
  json j;
  j["n"] = f.num_vars();
  j["truth_table"] = f.to_hex();
  j["pairing"] = pairing.name();
  j["weight"] = tt_weight(f);
  const auto r = rayleigh(f, pairing);
  j["S"] = r.s;
  j["bent"] = r.normalized.has_value();
  if (r.normalized) {
    const auto cls = duality_class(f, pairing);
    j["N_f"] = *r.normalized;
    j["dist_to_dual"] = cls.dist_to_dual;
    j["duality_class"] = to_string(cls.tag);
  }
  return j;
}

json failure(const std::string& identity, const json& witness, const std::string& message) {
  return json{{"schema", kSchemaVersion},
              {"failure", {{"identity", identity}, {"witness", witness}, {"message", message}}}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json lines_json(const std::vector<SpreadLine>& lines) {
  json arr = json::array();
  for (const auto& l : lines) arr.push_back(to_string(l));
  return arr;
}

RunResult run_construct(const CommandSpec& spec) {
  json j;
  TruthTable f;
  const std::string& kind = spec.construct_kind;
  if (kind == "psap" || kind == "ps-" || kind == "ps+") {
    if (!spec.k) throw UsageError("construct " + kind + " needs --k");
    const FieldCtx ctx = make_field(spec, *spec.k);
    const auto trace = Pairing::trace_form(ctx);
    std::optional<SpreadSelection> sel;
    if (kind == "psap") {
      if (!spec.g_hex) throw UsageError("construct psap needs --g");
      const auto g = TruthTable::from_hex(*spec.g_hex, *spec.k);
      f = psap_from_g(ctx, g);
      sel = selection_from_g(ctx, g);
      j = describe(f, trace);
      j["g"] = g.to_hex();
      j["charsum"] = to_json(rayleigh_vs_charsum(ctx, g));
    } else {
      std::vector<SpreadLine> lines;
      for (const auto& s : spec.lines) lines.push_back(parse_spread_line(s, ctx));
      sel.emplace(ctx, std::move(lines));
      f = kind == "ps-" ? ps_minus(*sel) : ps_plus(*sel);
      j = describe(f, trace);
    }
    j["k"] = ctx.degree();
    j["poly"] = ctx.reduction_poly();
    j["lines"] = lines_json(sel->lines());
    j["dual_lines"] = lines_json(sel->dual().lines());
    if (kind == "ps+") {
      j["dist_formula"] = dist_formula_ps_plus(*sel);
    } else {
      const auto idx = intersection_index(*sel);
      j["dist_formula"] = dist_formula_ps_minus(*sel);
      j["N_f_formula"] = nf_formula(*sel);
      j["intersection_index"] = {{"has_e1", idx.has_e1}, {"i", idx.i}};
      j["selfdual_criterion"] = is_selfdual_selection(*sel);
    }
  } else if (kind == "ps-general") {
    if (!spec.n) throw UsageError("construct ps-general needs --n");
    std::vector<std::vector<Point>> bases;
    for (const auto& s : spec.subspaces) {
      std::vector<Point> basis;
      for (const auto& p : split(s, ',')) basis.push_back(parse_point(p));
      bases.push_back(std::move(basis));
    }
    f = ps_general(*spec.n, bases);
    j = describe(f, Pairing::standard());
    j["dist_formula"] = dist_formula_ps_general(*spec.n, bases);
  } else if (kind == "mm") {
    if (!spec.k) throw UsageError("construct mm needs --k");
    const TruthTable g =
        spec.g_hex ? TruthTable::from_hex(*spec.g_hex, *spec.k) : TruthTable(*spec.k);
    f = mm_bent(spec.perm, g);
    j = describe(f, Pairing::standard());
    j["closed_form_dual"] = mm_dual(spec.perm, g).to_hex();
  } else {
    if (!spec.n) throw UsageError("construct symmetric needs --n");
    f = symmetric_bent(*spec.n, spec.eps1, spec.eps2);
    j = describe(f, Pairing::standard());
  }
  if (spec.format == "hex") return {kExitOk, f.to_hex() + "\n"};
  j["schema"] = kSchemaVersion;
  j["construction"] = kind;
  return {kExitOk, dump(j)};
}

RunResult run_inner(const CommandSpec& spec, std::istream& in) {
  const std::string& cmd = spec.subcommand;
  if (cmd == "table") {
    const auto row = distribution_table(*spec.n);
    if (spec.format == "csv") return {kExitOk, to_csv(row)};
    json j = to_json(row);
    j["schema"] = kSchemaVersion;
    return {kExitOk, dump(j)};
  }
  if (cmd == "census") {
    const FieldCtx ctx = make_field(spec, *spec.k);
    const auto mode = spec.mode == "exhaustive" ? CensusMode::exhaustive()
                                                : CensusMode::sample(spec.samples, spec.seed);
    const auto rep = census(ctx, mode, spec.threads);
    json j = to_json(rep);
    j["schema"] = kSchemaVersion;
    const bool ok = rep.formula_mismatches == 0 && rep.selfdual_criterion_mismatches == 0;
    return {ok ? kExitOk : kExitCheckFailed, dump(j)};
  }
  if (cmd == "verify") {
    json j = verify_suite(spec.suite);
    j["schema"] = kSchemaVersion;
    return {j["passed"].get<bool>() ? kExitOk : kExitCheckFailed, dump(j)};
  }
  if (cmd == "construct") return run_construct(spec);

  if (cmd == "dist") {
    const auto tables = read_tables(spec, in, 2);
    if (tables.size() == 2) {
      const auto d = dist(tables[0], tables[1]);
      return {kExitOk, dump(json{{"schema", kSchemaVersion}, {"n", tables[0].num_vars()}, {"dist", d}})};
    }
  }
  const auto tables = read_tables(spec, in, 1);
  const TruthTable& f = tables.front();
  const Pairing pairing = make_pairing(spec, f.num_vars());
  if (cmd == "wht") {
    const auto s = wht(f, pairing);
    json j{{"schema", kSchemaVersion}, {"n", s.n}, {"pairing", pairing.name()}, {"spectrum", s.values}};
    return {kExitOk, j.dump() + "\n"};
  }
  if (cmd == "bent") {
    json j{{"schema", kSchemaVersion},
           {"n", f.num_vars()},
           {"bent", f.num_vars() % 2 == 0 && is_flat(wht(f, pairing))},
           {"nonlinearity", nonlinearity(f)}};
    return {kExitOk, dump(j)};
  }
  if (cmd == "dual") {
    const auto d = dual(f, pairing);
    if (spec.format == "hex") return {kExitOk, d.to_hex() + "\n"};
    return {kExitOk, dump(json{{"schema", kSchemaVersion},
                               {"n", f.num_vars()},
                               {"pairing", pairing.name()},
                               {"dual", d.to_hex()}})};
  }
  // rayleigh, and dist with a single table (distance to the dual)
  const auto r = rayleigh(f, pairing);
  if (!r.normalized) {
    const auto s = wht(f, pairing);
    Point w = 0;
    while (w < s.values.size() && std::abs(s.values[w]) == (std::int64_t{1} << (s.n / 2))) ++w;
    return {kExitCheckFailed, dump(failure("bent", w, "function is not bent; N_f undefined"))};
  }
  const auto d = dist_to_dual(f, pairing);
  return {kExitOk, dump(json{{"schema", kSchemaVersion},
                             {"n", f.num_vars()},
                             {"pairing", pairing.name()},
                             {"S", r.s},
                             {"N", *r.normalized},
                             {"dist", d}})};
}

}  // namespace

CommandSpec parse_args(const std::vector<std::string>& args) {
  CommandSpec spec;
  CLI::App app{"Partial-spread and related bent function toolkit", "psbent"};
  app.require_subcommand(1);

  std::string poly_text;
  std::string g_text;
  std::string perm_text;
  std::string lines_text;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--format", spec.format, "json | csv | hex")
        ->check(CLI::IsMember({"json", "csv", "hex"}));
    sub->add_option("--out", spec.out, "write the payload to PATH");
  };
  auto add_table_input = [&](CLI::App* sub) {
    sub->add_option("tables", spec.tables, "hex truth tables (default: stdin)");
    sub->add_option("--n", spec.n, "variable count");
    sub->add_option("--k", spec.k, "field degree for the trace pairing");
    sub->add_option("--poly", poly_text, "reduction polynomial as hex mask");
    sub->add_option("--pairing", spec.pairing, "standard | trace")
        ->check(CLI::IsMember({"standard", "trace"}));
    add_io(sub);
  };

  for (const char* name : {"wht", "bent", "dual", "rayleigh", "dist"}) {
    add_table_input(app.add_subcommand(name));
  }
  app.get_subcommand("wht")->description("Walsh-Hadamard spectrum");
  app.get_subcommand("bent")->description("bentness and nonlinearity");
  app.get_subcommand("dual")->description("dual of a bent function");
  app.get_subcommand("rayleigh")->description("Rayleigh quotient S_f, N_f and dist to dual");
  app.get_subcommand("dist")->description("Hamming distance of two tables, or of one to its dual");

  auto* construct = app.add_subcommand("construct", "build a bent function");
  construct->add_option("kind", spec.construct_kind, "psap | ps- | ps+ | ps-general | mm | symmetric")
      ->required();
  construct->add_option("--n", spec.n, "variable count");
  construct->add_option("--k", spec.k, "field degree");
  construct->add_option("--poly", poly_text, "reduction polynomial as hex mask");
  construct->add_option("--g", g_text, "generator truth table (hex, k variables)");
  construct->add_option("--lines", lines_text, "spread lines, e.g. 2,3,5,inf");
  construct->add_option("--subspace", spec.subspaces, "basis vectors of one subspace, e.g. 0001,0100");
  construct->add_option("--perm", perm_text, "permutation of 0..2^k-1 for mm");
  construct->add_option("--eps1", spec.eps1, "linear term for symmetric")->check(CLI::Range(0, 1));
  construct->add_option("--eps2", spec.eps2, "constant term for symmetric")->check(CLI::Range(0, 1));
  add_io(construct);

  auto* census_cmd = app.add_subcommand("census", "PS_ap distance census");
  census_cmd->add_option("--k", spec.k, "field degree")->required();
  census_cmd->add_option("--poly", poly_text, "reduction polynomial as hex mask");
  census_cmd->add_option("--mode", spec.mode, "exhaustive | sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  census_cmd->add_option("--samples", spec.samples, "number of sampled selections");
  census_cmd->add_option("--seed", spec.seed, "PRNG seed");
  census_cmd->add_option("--threads", spec.threads, "worker threads (0 = all cores)");
  add_io(census_cmd);

  auto* table = app.add_subcommand("table", "N_f / dist distribution row");
  table->add_option("--n", spec.n, "variable count")->required();
  add_io(table);

  auto* verify = app.add_subcommand("verify", "run the identity and census battery");
  verify->add_option("--suite", spec.suite, "all or a single suite name");
  add_io(verify);

  std::vector<const char*> argv{"psbent"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    spec.help = app.help();
    return spec;
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    throw UsageError(std::string(e.what()) + "\n\n" + (help.empty() ? app.help() : help));
  }

  auto* chosen = app.get_subcommands().front();
  if (chosen->get_help_ptr() && chosen->get_help_ptr()->count() > 0) {
    spec.help = chosen->help();
    return spec;
  }
  spec.subcommand = chosen->get_name();

  if (!poly_text.empty()) spec.poly = parse_poly(poly_text);
  if (!g_text.empty()) {
    if (!is_hex_token(g_text)) throw UsageError("malformed hex for --g: '" + g_text + "'");
    spec.g_hex = g_text;
  }
  if (!lines_text.empty()) spec.lines = split(lines_text, ',');
  for (const auto& p : split(perm_text, ',')) {
    try {
      spec.perm.push_back(static_cast<std::uint32_t>(std::stoul(p)));
    } catch (const std::exception&) {
      throw UsageError("malformed --perm entry '" + p + "'");
    }
  }
  for (const auto& t : spec.tables) {
    if (!is_hex_token(t)) throw UsageError("malformed hex truth table '" + t + "'");
  }

  if (spec.n && spec.k && *spec.n != 2 * *spec.k) {
    throw UsageError("inconsistent sizes: --n " + std::to_string(*spec.n) + " but --k " +
                     std::to_string(*spec.k) + " (need n = 2k)");
  }
  if (spec.n && (*spec.n < 1 || *spec.n > TruthTable::kMaxVars)) {
    throw UsageError("--n must be in [1, 24]");
  }
  if (spec.k && (*spec.k < 1 || *spec.k > FieldCtx::kMaxDegree)) {
    throw UsageError("--k must be in [1, 16]");
  }
  if (spec.subcommand == "construct" && !kConstructKinds.contains(spec.construct_kind)) {
    throw UsageError("unknown construction '" + spec.construct_kind + "'");
  }
  if (spec.subcommand == "census") {
    const int cap = spec.mode == "exhaustive" ? kMaxExhaustiveCensusK : kMaxSampleCensusK;
    if (*spec.k < 2 || *spec.k > cap) {
      throw UsageError("census --mode " + spec.mode + " supports 2 <= k <= " + std::to_string(cap));
    }
    if (spec.mode == "sample" && spec.samples == 0) throw UsageError("--samples must be positive");
  }
  if (spec.subcommand == "table" && (*spec.n < 4 || *spec.n % 2 != 0)) {
    throw UsageError("table needs even n in [4, 24]");
  }
  const bool csv_ok = spec.subcommand == "table";
  const bool hex_ok = spec.subcommand == "dual" || spec.subcommand == "construct";
  if ((spec.format == "csv" && !csv_ok) || (spec.format == "hex" && !hex_ok)) {
    throw UsageError("--format " + spec.format + " is not available for " + spec.subcommand);
  }
  return spec;
}

RunResult run(const CommandSpec& spec, std::istream& in) {
  if (!spec.help.empty()) return {kExitOk, spec.help};
  try {
    return run_inner(spec, in);
  } catch (const NotBentError& e) {
    return {kExitCheckFailed, dump(failure("bent", e.witness(), e.what()))};
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

int main_entry(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  RunResult result;
  std::optional<std::string> out_path;
  try {
    const auto spec = parse_args(args);
    out_path = spec.out;
    result = run(spec, in);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (out_path) {
    std::ofstream file(*out_path, std::ios::binary);
    if (!file || !(file << result.payload)) {
      err << "error: cannot write " << *out_path << "\n";
      return kExitUsage;
    }
  } else {
    out << result.payload;
  }
  return result.exit_code;
}

// ---------------------------------------------------------------------------

json to_json(const CensusReport& r) {
  json j;
  j["k"] = r.k;
  j["n"] = 2 * r.k;
  if (r.mode.kind == CensusMode::Kind::Exhaustive) {
    j["mode"] = "exhaustive";
  } else {
    j["mode"] = "sample";
    j["samples"] = r.mode.samples;
    j["seed"] = r.mode.seed;
  }
  j["total_selections"] = r.total_selections;
  j["selfdual_count"] = r.selfdual_count;
  j["formula_mismatches"] = r.formula_mismatches;
  j["selfdual_criterion_mismatches"] = r.selfdual_criterion_mismatches;
  j["spectral_checks"] = r.spectral_checks;
  j["min_nonzero_dist"] = r.min_nonzero_dist ? json(*r.min_nonzero_dist) : json(nullptr);
  j["nf_values"] = std::vector<std::int64_t>(r.nf_values.begin(), r.nf_values.end());
  j["no_anti_selfdual"] = anti_selfdual_check(r);
  const std::int64_t step = (std::int64_t{1} << (r.k + 1)) - 2;
  json classes = json::array();
  for (auto d : r.predicted_dists()) {
    json c;
    c["dist"] = d;
    c["class_index"] = (std::int64_t{1} << (r.k - 1)) - d / step;
    const auto it = r.class_sizes.find(d);
    c["count"] = it == r.class_sizes.end() ? 0 : it->second;
    if (it != r.class_sizes.end()) {
      c["status"] = "verified";
      c["witness"] = lines_json(r.witnesses.at(d));
    } else {
      c["status"] = r.mode.kind == CensusMode::Kind::Exhaustive ? "not realized"
                                                                : "formula-derived";
    }
    classes.push_back(c);
  }
  j["classes"] = classes;
  return j;
}

json to_json(const DistributionRow& r) {
  json j;
  j["n"] = r.n;
  j["nf_values"] = r.nf_values;
  j["dist_values"] = r.dist_values;
  j["census_cross_checked"] =
      r.census_cross_checked ? json(*r.census_cross_checked) : json(nullptr);
  j["no_anti_selfdual"] = anti_selfdual_check(r);
  return j;
}

std::string to_csv(const DistributionRow& r) {
  std::string out = "n,N_f,dist\n";
  for (const auto& [nf, d] : r.pairs()) {
    out += std::to_string(r.n) + "," + std::to_string(nf) + "," + std::to_string(d) + "\n";
  }
  return out;
}

json to_json(const CharSumReport& r) {
  return json{{"K_nonzero", r.k_nonzero},
              {"K_withzero", r.k_withzero},
              {"N_f_actual", r.nf_actual},
              {"stated_formula_nonzero", r.stated_value_nonzero},
              {"stated_formula_withzero", r.stated_value_withzero},
              {"stated_formula_matches_nonzero", r.stated_matches_nonzero()},
              {"stated_formula_matches_withzero", r.stated_matches_withzero()},
              {"derived_formula", r.derived_value},
              {"derived_formula_matches", r.derived_matches()}};
}

json to_json(const SymmetricRecord& r) {
  json j{{"eps1", r.eps1},
         {"eps2", r.eps2},
         {"c0", r.c0},
         {"c1", r.c1},
         {"dual_formula_ok", r.dual_formula_ok},
         {"dual_mismatches", r.dual_mismatches},
         {"nf_actual", r.nf_actual},
         {"nf_predicted", r.nf_predicted},
         {"nf_prediction_ok", r.nf_prediction_ok}};
  if (r.first_dual_mismatch) j["first_dual_mismatch"] = *r.first_dual_mismatch;
  return j;
}

json to_json(const SelfDualCounts& c) {
  json j{{"spread_form", c.spread_form.str()}, {"g_form", c.g_form.str()}};
  if (c.spread_enumerated) j["spread_enumerated"] = *c.spread_enumerated;
  if (c.g_enumerated) j["g_enumerated"] = *c.g_enumerated;
  if (c.g_condition_count) j["g_condition_count"] = *c.g_condition_count;
  return j;
}

}  // namespace psbent::cli
