#ifndef HYPERRED_CLI_HPP
#define HYPERRED_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperred/bindings.hpp"
#include "hyperred/series.hpp"
#include "hyperred/verifier.hpp"

namespace hyperred::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable that, when set, replaces the default seed.
inline constexpr const char* kSeedEnvironment = "HYPERRED_SEED";

enum class Subcommand { eval, identity, oracle, verify, list };
enum class OutputFormat { text, json };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandConfig {
  Subcommand subcommand = Subcommand::list;
  OutputFormat format = OutputFormat::text;

  // eval
  std::optional<std::size_t> p;
  std::optional<std::size_t> q;
  std::vector<double> numerator;
  std::vector<double> denominator;
  double tol = kDefaultTolerance;
  std::size_t max_terms = kDefaultMaxTerms;

  // identity, oracle, verify
  std::string id;
  Bindings bindings;
  std::optional<double> z;

  // verify
  SamplingPlan plan;
  ComparisonPolicy policy;
  bool include_transforms = false;
  std::string seed_source = "default";  ///< default, flag or environment

  /// Empty writes to the output stream.
  std::string output_path;
};

/// Parses argv-style arguments (without the program name).
/// Throws UsageError or HelpRequested.
/// `seed_override` is the value of kSeedEnvironment, if any.
CommandConfig parse_command_line(const std::vector<std::string>& args,
                                 std::optional<std::string> seed_override = std::nullopt);

/// Parses "key=value" tokens; values must be decimal literals. Throws UsageError.
Bindings parse_bindings(const std::vector<std::string>& tokens);

/// Executes a parsed command. Returns kExitSuccess, kExitFailure or kExitUsage.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line followed by run; usage problems map to kExitUsage.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               std::optional<std::string> seed_override = std::nullopt);

nlohmann::json to_json(const EvalResult& result);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const SamplingPlan& plan);
nlohmann::json to_json(const ComparisonPolicy& policy);

/// Top-level verification document: version, plan and policy echo, reports.
nlohmann::json report_document(const std::vector<VerificationReport>& reports,
                               const CommandConfig& config);

/// Canonical text of a JSON document: two-space indent, trailing newline.
std::string serialize(const nlohmann::json& document);

/// The catalog table (id, equation, slots, constraints, domain).
nlohmann::json catalog_document();

}  // namespace hyperred::cli

#endif  // HYPERRED_CLI_HPP
