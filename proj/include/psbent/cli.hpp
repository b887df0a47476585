#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psbent/analysis.hpp"

namespace psbent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kSchemaVersion = 1;

/// Bad flags, inconsistent sizes, malformed input or I/O trouble (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandSpec {
  std::string subcommand;      // wht bent dual rayleigh dist construct census table verify
  std::string construct_kind;  // psap ps- ps+ ps-general mm symmetric
  std::optional<int> n;
  std::optional<int> k;
  std::optional<std::uint32_t> poly;
  std::optional<std::string> g_hex;
  std::vector<std::string> lines;
  std::vector<std::string> subspaces;
  std::vector<std::uint32_t> perm;
  int eps1 = 0;
  int eps2 = 0;
  std::string pairing = "standard";
  std::string mode = "exhaustive";
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string suite = "all";
  std::string format = "json";
  std::optional<std::string> out;
  std::vector<std::string> tables;  // positional hex truth tables
  std::string help;                 // non-empty when --help was requested
};

struct RunResult {
  int exit_code = kExitOk;
  std::string payload;
};

/// Throws UsageError; the message carries the help text where useful.
CommandSpec parse_args(const std::vector<std::string>& args);

/// Reads truth tables from `in` when none were given on the command line.
RunResult run(const CommandSpec& spec, std::istream& in);

/// parse_args + run + --out handling; returns the process exit code.
int main_entry(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err);

// JSON views of the analysis reports.
nlohmann::json to_json(const CensusReport& r);
nlohmann::json to_json(const DistributionRow& r);
nlohmann::json to_json(const CharSumReport& r);
nlohmann::json to_json(const SymmetricRecord& r);
nlohmann::json to_json(const SelfDualCounts& c);
std::string to_csv(const DistributionRow& r);

/// Runs a named battery of checks ("all", "foundations", "examples",
/// "metric", "closed-forms", "census", "symmetric", "charsum", "table").
/// The result has "passed" and one record per check.
nlohmann::json verify_suite(const std::string& suite);

}  // namespace psbent::cli
