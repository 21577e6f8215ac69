#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace awflow::cli {

struct CheckResult {
  std::string check;
  int criterion;  // acceptance criterion number, 1..12
  bool passed;
  double measured;
  double tolerance;
  std::string detail;
  /// Set for checks that measure a value against a target: passed iff
  /// |measured - expected| <= tolerance. Otherwise measured is an error or
  /// bound, as described in detail.
  std::optional<double> expected = std::nullopt;
};

/// Every acceptance check, in criterion order.
std::vector<CheckResult> run_checks();

/// Checks belonging to one criterion.
std::vector<CheckResult> run_criterion(int criterion);

inline constexpr int kCriterionCount = 12;

/// [{"check", "criterion", "status", "measured", "tolerance", "detail"}, ...],
/// plus "expected" where set.
nlohmann::json report_json(const std::vector<CheckResult>& results);

}  // namespace awflow::cli
