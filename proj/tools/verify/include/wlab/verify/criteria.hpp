#pragma once

// The acceptance criteria as runnable checks, shared by `wlab verify-all`
// and the acceptance test binary.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wlab::verify {

inline constexpr int kCriterionCount = 10;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  /// Measured values behind the verdict.
  std::string detail;
  double seconds = 0.0;
};

std::string criterion_title(int id);

/// Runs one criterion at desk scale. Exceptions from the library count as a
/// failure and are reported in `detail`.
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);

/// Runs the given ids in order (all of them when empty).
std::vector<CriterionResult> run_criteria(std::span<const int> ids, std::uint64_t seed = kDefaultSeed);

/// One line per criterion: "PASS  3  title  detail  (0.01 s)".
std::string format_line(const CriterionResult& r);

/// {"profile": "desk", "seed": ..., "passed": ..., "criteria": [...]}. Wall
/// times are left out so repeated runs give identical documents.
std::string results_json(std::span<const CriterionResult> results, std::uint64_t seed);

}  // namespace wlab::verify
