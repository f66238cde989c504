#pragma once

#include <string>
#include <vector>

namespace lielat {

// Golden checks against the published tables (Coxeter numbers, discriminants,
// the E8 parahoric sweep, ...). Used by `lielat verify-paper`.

enum class CheckStatus { Pass, Fail, Info };

struct CheckResult {
  int group = 0;  ///< acceptance group 1..9
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
};

enum class Tier { Fast, Slow };

struct ReferenceRun {
  Tier tier = Tier::Fast;
  std::vector<CheckResult> results;

  bool ok() const;
  std::size_t count(CheckStatus status) const;
};

/// Runs every golden check. The slow tier replaces the sampled Jacobi checks
/// on E6, E7, E8 by full enumeration. B_n / C_n discriminants on g are
/// reported with status Info: the published rows disagree with a direct
/// computation, see README.
ReferenceRun run_reference_checks(Tier tier);

std::string to_string(CheckStatus status);
std::string to_string(Tier tier);

}  // namespace lielat
