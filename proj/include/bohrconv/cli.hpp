#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bohrconv::cli {

/// Process exit codes. Every outcome maps to exactly one of these.
enum ExitCode : int {
  kOk = 0,
  kMalformed = 1,
  kHypothesis = 2,
  kNoRoot = 3,
  kVerificationFailed = 4,
  kUnwritable = 5,
};

/// Environment variable overriding the default truncation order.
inline constexpr const char* kOrderEnv = "BOHRCONV_ORDER";

/// Rounds every float to 10 significant digits and maps non-finite values to
/// null, so that parse(dump(j)) dumps to the same bytes.
nlohmann::json canonical(const nlohmann::json& j);
/// canonical(j) with sorted keys and two-space indent.
std::string dump(const nlohmann::json& j);

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bohrconv::cli
