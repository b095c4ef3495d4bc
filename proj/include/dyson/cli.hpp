#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// Command-line front end of dyson-lab.
namespace dyson::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kPrecondition = 3, kRuntime = 4 };

/// Bad flag, bad value type or malformed config file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parsed value violates the target operation's preconditions.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  double alpha = 1.5;
  double beta = 1.0;
  double j1 = 1.0;
  std::int64_t L = 3;
  std::int64_t N = 6;
  std::int64_t L1 = 256;
  std::int64_t n = 12;
  std::int64_t cutoff = 1000;
  double epsilon = 0.5;
  std::int64_t sweeps = 20000;
  std::int64_t burnin = 2000;
  std::int64_t chains = 8;
  std::int64_t thin = 1;
  std::uint64_t seed = 1;
  std::string engine = "exact";
  std::string out_dir = "runs";
  std::string bc = "plus";
  std::int64_t max_free_sites = 24;
  std::string config;
  bool help_requested = false;
};

/// Subcommand names in display order.
[[nodiscard]] const std::vector<std::string>& subcommands();
/// Every flag a subcommand accepts, without the leading dashes.
[[nodiscard]] const std::vector<std::string>& run_config_fields();
/// Defaults of a subcommand before any flag or config file is applied.
[[nodiscard]] RunConfig defaults_for(const std::string& subcommand);

/// Parses argv (argv[0] is the program name). Throws UsageError or
/// PreconditionError with a one-line message naming the offending key.
[[nodiscard]] RunConfig parse_cli(const std::vector<std::string>& argv);

/// Checks ranges and enumerations; throws PreconditionError.
void validate(const RunConfig& config);

/// --help text of one subcommand, or of the program when empty.
[[nodiscard]] std::string help_text(const std::string& subcommand = "");

/// Runs the subcommand and writes its outputs; returns the run directory.
std::filesystem::path dispatch(const RunConfig& config, std::ostream& log);

/// Full entry point: parse, validate, dispatch, map failures to exit codes.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace dyson::cli
