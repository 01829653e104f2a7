#pragma once

#include <nlohmann/json.hpp>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbr::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,  // a mathematical check did not hold
  kUsage = 2,        // bad arguments, unknown key, violated precondition
  kIoError = 3,      // missing input file, unwritable output
};

/// Parse or run error carrying its exit status.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct RunConfig {
  std::string command;
  nlohmann::json options;  // every key of the command, defaults filled in
  std::string out;         // primary artifact path

  /// {"command": ..., key: value, ...}; embedded in every artifact.
  nlohmann::json normalized() const;
};

std::string version();
const std::vector<std::string>& command_names();

/// Parses `args` (without the program name).  Flags override the values of
/// `--config FILE`.  Throws CliError with kUsage or kIoError.  Returns an
/// empty command when help was printed to `help`.
RunConfig parse_config(const std::vector<std::string>& args, std::ostream& help);

/// Runs one command; writes artifacts and a short summary to `log`.
int run(const RunConfig& cfg, std::ostream& log);

/// parse_config + run with the exit-status mapping; messages go to `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbr::cli
