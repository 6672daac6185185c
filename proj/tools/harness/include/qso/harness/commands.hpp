#pragma once

// The operations behind each CLI subcommand. Each returns a plain report
// struct; to_json turns it into the document the tool writes.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qso/fixed_points.hpp"
#include "qso/harness/scenario.hpp"
#include "qso/spectral.hpp"

namespace qso::harness {

struct Refusal {
  std::string reason;
  std::vector<std::size_t> frozen_loci;
};

struct TrajectoryPoint {
  std::size_t iteration = 0;
  Vector state;
  double ld = 0.0;
};

struct RunReport {
  std::vector<TrajectoryPoint> trajectory;
  /// Sup-norm of the LD vector at every iterate, starting with x0.
  std::vector<double> ld_trace;
  /// Iteration k whose step ||x_{k+1} - x_k|| fell below conv_tol.
  std::optional<std::size_t> converged_at;
  std::size_t iterations = 0;
  Vector final_state;
  std::optional<LimitPrediction> prediction;
  std::optional<Refusal> refusal;
  std::optional<double> prediction_error;
};

RunReport cmd_simulate(const Scenario& scenario);

struct PredictReport {
  std::optional<LimitPrediction> prediction;
  std::optional<Refusal> refusal;
};

PredictReport cmd_predict(const Scenario& scenario);

struct SpectrumReport {
  /// B_c of the system with absent loci removed.
  ReducedMatrix b;
  std::vector<std::size_t> kept;
  SpectralSummary summary;
  /// max_k |sum_i b_ik - 1|
  double column_sum_deviation = 0.0;
  bool columns_sum_to_one = false;
  /// Steps for (1 - gap)^n to reach 1e-9.
  std::size_t estimated_steps = 0;
  std::vector<std::size_t> frozen_loci;
};

SpectrumReport cmd_spectrum(const Scenario& scenario);

FixedPointSet cmd_fixed_points(const Scenario& scenario);

CubicMatrix cmd_cubic(const Scenario& scenario);

nlohmann::json to_json(const RunReport& r);
nlohmann::json to_json(const PredictReport& r);
nlohmann::json to_json(const SpectrumReport& r);

/// iteration, x_1..x_2m, ld_sup for each recorded trajectory point.
std::string trajectory_csv(const RunReport& r);

}  // namespace qso::harness
