#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qso/error.hpp"
#include "qso/simplex.hpp"

namespace qso::harness {

struct RunSettings {
  std::size_t max_iters = 1'000'000;
  double conv_tol = 1e-12;
  std::size_t record_every = 1;

  bool operator==(const RunSettings&) const = default;
};

/// One model instance plus how to run it. The initial state is given
/// either as x0 (2m coordinates) or as pair sums c with first
/// coordinates u0. Raw numbers are kept as read so that writing a
/// scenario back out reproduces it exactly.
struct Scenario {
  std::string name;
  std::size_t m = 0;
  std::vector<std::vector<double>> a;
  std::optional<std::vector<double>> x0;
  std::optional<std::vector<double>> c;
  std::optional<std::vector<double>> u0;
  RunSettings run;

  CoefficientMatrix coefficients() const;
  /// Validated initial state; throws the core input errors.
  SimplexPoint initial_state() const;

  bool operator==(const Scenario&) const = default;
};

/// Parses and validates. Structural problems raise
/// Error{kScenarioParseError}; numeric ones raise the core input errors
/// (kBadCoefficient, kNotASimplexPoint, ...).
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::filesystem::path& path);

/// Reads a whole file into a JSON document; parse failures raise `code`.
nlohmann::json read_json_file(const std::filesystem::path& path, ErrorCode code);

}  // namespace qso::harness
