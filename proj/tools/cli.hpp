#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lielat/intform.hpp"
#include "lielat/report.hpp"
#include "lielat/rootsys.hpp"

namespace lielat::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Bad command-line input: reported on stderr with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Node selectors: "3", "all", "affine", "a4", "alpha4", "mark5" (every node
/// with that mark) and the report form "a4 (mark 5)". Throws UsageError.
std::vector<int> parse_node_selector(const RootSystem& rs, std::string_view text);

// JSON forms used by --machine. Keys are emitted sorted.
nlohmann::json to_json(const FactoredInteger& f);
FactoredInteger factored_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ParahoricReport& r);
ParahoricReport report_from_json(const nlohmann::json& j);

}  // namespace lielat::cli
