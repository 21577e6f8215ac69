// Runs the twelve acceptance criteria and prints one line per criterion.
//
//   acceptance_test [--known-red N[,M...]]
//
// Exit status is 0 when every failing criterion is listed in --known-red.
// Known-red criteria are still printed as FAIL.

#include <cstdio>
#include <cstring>
#include <set>
#include <sstream>
#include <string>

#include "awflow/cli/verify.hpp"

using awflow::cli::CheckResult;

namespace {

std::set<int> parse_known_red(int argc, char** argv) {
  std::set<int> out;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::strcmp(argv[i], "--known-red") != 0) continue;
    std::stringstream ss(argv[i + 1]);
    std::string item;
    while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::set<int> known_red = parse_known_red(argc, argv);
  int unexpected = 0;
  int passed = 0;
  for (int c = 1; c <= awflow::cli::kCriterionCount; ++c) {
    std::vector<CheckResult> checks;
    std::string failure;
    try {
      checks = awflow::cli::run_criterion(c);
    } catch (const std::exception& e) {
      failure = e.what();
    }
    bool ok = failure.empty() && !checks.empty();
    for (const auto& r : checks) ok = ok && r.passed;

    std::printf("criterion %2d: %s\n", c, ok ? "PASS" : "FAIL");
    for (const auto& r : checks) {
      std::printf("    %-32s %s  measured=%.6g tol=%.3g%s%s\n", r.check.c_str(),
                  r.passed ? "pass" : "FAIL", r.measured, r.tolerance,
                  r.detail.empty() ? "" : "  ", r.detail.c_str());
    }
    if (!failure.empty()) std::printf("    error: %s\n", failure.c_str());

    if (ok) {
      ++passed;
    } else if (known_red.count(c)) {
      std::printf("    (known red, see the decisions ledger)\n");
    } else {
      ++unexpected;
    }
  }
  std::printf("%d/%d criteria pass; %d unexpected failure(s)\n", passed,
              awflow::cli::kCriterionCount, unexpected);
  return unexpected == 0 ? 0 : 1;
}
