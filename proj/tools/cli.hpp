#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corrcache/rational.hpp"
#include "corrcache/verify.hpp"

namespace corrcache::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kParseError = 2,
  kModelError = 3,
  kVerificationFailed = 4,
};

enum class Subcommand { kBound, kAchieve, kVerify, kSweep, kMultireq, kCurve };
enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  Subcommand subcommand = Subcommand::kBound;
  /// `key=value` arguments, e.g. N=3, M=3/5, d=1,2,3,1,2.
  std::map<std::string, std::string> params;
  bool average = false;
  OutputFormat format = OutputFormat::kCsv;
  DemandFilter filter = DemandFilter::kMustPass;
  unsigned threads = 0;
  /// Empty writes to stdout.
  std::string out_path;
};

/// Parses argv-style arguments (without the program name). Throws
/// std::invalid_argument with a usage message on malformed input; returns
/// nullopt after printing help.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs one subcommand, writing its artifact to `out` or the configured path.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corrcache::cli
