#pragma once

// Cross-check battery run by `qso verify`.
//
// A suite file lists explicit scenarios and/or asks for randomly generated
// ones, plus the check families to run:
//
//   {
//     "seed": 12345,
//     "checks": ["form_equivalence", "cubic_reconstruction", "conjugacy",
//                "prediction_vs_simulation", "ld_decay"],
//     "random": {"count": 56, "m_min": 2, "m_max": 8},
//     "scenarios": [ {scenario}, ... ]
//   }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qso::harness {

inline const std::vector<std::string>& all_check_families() {
  static const std::vector<std::string> families{"form_equivalence", "cubic_reconstruction",
                                                 "conjugacy", "prediction_vs_simulation",
                                                 "ld_decay"};
  return families;
}

struct RandomScenarios {
  std::size_t count = 0;
  std::size_t m_min = 2;
  std::size_t m_max = 8;
};

struct Suite {
  std::uint64_t seed = 0;
  std::vector<std::string> checks;
  RandomScenarios random;
  /// Explicit scenarios, unparsed: a malformed entry is reported against
  /// that scenario instead of rejecting the whole suite.
  std::vector<nlohmann::json> scenarios;
};

/// Throws Error{kSuiteParseError}.
Suite suite_from_json(const nlohmann::json& j);
Suite load_suite(const std::filesystem::path& path);

/// Explicit scenarios followed by the generated ones, as JSON documents.
std::vector<nlohmann::json> expand_scenarios(const Suite& suite);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string note;
};

struct ScenarioResult {
  enum class Status { kPassed, kFailed, kInputError };

  std::size_t index = 0;
  std::string name;
  Status status = Status::kPassed;
  std::string error;
  std::vector<CheckResult> checks;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<ScenarioResult> scenarios;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t input_errors = 0;

  /// 0 all passed, 2 any check failed, otherwise 1 if any input error.
  int exit_code() const;
};

/// Runs every scenario (concurrently when jobs > 1). The report is
/// ordered by scenario index and does not depend on jobs.
SuiteReport run_suite(const Suite& suite, unsigned jobs = 1);

nlohmann::json to_json(const SuiteReport& r);
/// One line per check plus a summary line.
std::string to_text(const SuiteReport& r);

}  // namespace qso::harness
