#include "qso/harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "qso/json.hpp"

namespace qso::harness {

using nlohmann::json;

namespace {

std::optional<Refusal> try_predict(const CoefficientMatrix& a, const SimplexPoint& x0,
                                   std::optional<LimitPrediction>& out) {
  try {
    out = predict_limit(a, x0);
    return std::nullopt;
  } catch (const PredictionRefused& e) {
    return Refusal{e.what(), e.frozen_loci()};
  }
}

json refusal_json(const Refusal& r) {
  return json{{"status", "refused"},
              {"reason", r.reason},
              {"frozen_loci", r.frozen_loci},
              {"fallback", "simulate"}};
}

// Shortest decimal text that reads back to the same double.
std::string format_double(double v) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

RunReport cmd_simulate(const Scenario& scenario) {
  const CoefficientMatrix a = scenario.coefficients();
  SimplexPoint x = scenario.initial_state();
  const RunSettings& run = scenario.run;

  RunReport report;
  double ld = sup_norm(linkage_disequilibrium(a, x));
  report.ld_trace.push_back(ld);
  report.trajectory.push_back({0, x.coords(), ld});

  for (std::size_t k = 0; k < run.max_iters; ++k) {
    SimplexPoint next = apply_w(a, x);
    const double step = sup_norm(next.coords() - x.coords());
    x = std::move(next);
    report.iterations = k + 1;
    ld = sup_norm(linkage_disequilibrium(a, x));
    report.ld_trace.push_back(ld);
    if ((k + 1) % run.record_every == 0) report.trajectory.push_back({k + 1, x.coords(), ld});
    if (step < run.conv_tol) {
      report.converged_at = k;
      break;
    }
  }
  if (report.trajectory.back().iteration != report.iterations) {
    report.trajectory.push_back({report.iterations, x.coords(), ld});
  }
  report.final_state = x.coords();

  report.refusal = try_predict(a, scenario.initial_state(), report.prediction);
  if (report.prediction) {
    report.prediction_error = sup_norm(report.final_state - report.prediction->limit_x);
  }
  return report;
}

PredictReport cmd_predict(const Scenario& scenario) {
  PredictReport report;
  report.refusal = try_predict(scenario.coefficients(), scenario.initial_state(), report.prediction);
  return report;
}

SpectrumReport cmd_spectrum(const Scenario& scenario) {
  const CoefficientMatrix a = scenario.coefficients();
  const auto [fiber, state] = fiber_of(scenario.initial_state());
  ReducedSystem reduced = reduce_zero_loci(a, fiber, state);
  ReducedMatrix b = build_bc(reduced.coefficients, reduced.fiber);

  SpectrumReport report{std::move(b), reduced.kept, {}, 0.0, false, 0, {}};
  report.summary = eigen_all(report.b);
  const Vector column_sums = report.b.b.colwise().sum().transpose();
  report.column_sum_deviation = sup_norm(column_sums - Vector::Ones(column_sums.size()));
  report.columns_sum_to_one = report.column_sum_deviation <= 1e-14;
  report.estimated_steps = convergence_steps_estimate(report.summary.spectral_gap);
  if (reduced.kept.size() >= 2) {
    for (const auto r : reduced.coefficients.frozen_loci()) {
      report.frozen_loci.push_back(reduced.kept[r]);
    }
  }
  return report;
}

FixedPointSet cmd_fixed_points(const Scenario& scenario) {
  const auto decomposition = fiber_of(scenario.initial_state());
  return fixed_point_set(scenario.coefficients(), decomposition.fiber);
}

CubicMatrix cmd_cubic(const Scenario& scenario) {
  return build_cubic_matrix(scenario.coefficients());
}

json to_json(const RunReport& r) {
  json trajectory = json::array();
  for (const auto& p : r.trajectory) {
    trajectory.push_back({{"iteration", p.iteration}, {"state", vector_to_json(p.state)},
                          {"ld_sup", p.ld}});
  }
  json j{{"trajectory", std::move(trajectory)},
         {"ld_trace", r.ld_trace},
         {"converged_at", r.converged_at ? json(*r.converged_at) : json(nullptr)},
         {"iterations", r.iterations},
         {"final_state", vector_to_json(r.final_state)}};
  if (r.prediction) {
    j["prediction"] = *r.prediction;
    j["prediction_error"] = *r.prediction_error;
  } else {
    j["prediction"] = refusal_json(*r.refusal);
    j["prediction_error"] = nullptr;
  }
  return j;
}

json to_json(const PredictReport& r) {
  if (r.prediction) {
    json j = *r.prediction;
    j["status"] = "ok";
    return j;
  }
  return refusal_json(*r.refusal);
}

json to_json(const SpectrumReport& r) {
  return json{{"reduced_matrix", r.b},
              {"kept_loci", r.kept},
              {"spectrum", r.summary},
              {"column_sum_deviation", r.column_sum_deviation},
              {"columns_sum_to_one", r.columns_sum_to_one},
              {"estimated_steps_to_1e-9", r.estimated_steps},
              {"frozen_loci", r.frozen_loci}};
}

std::string trajectory_csv(const RunReport& r) {
  std::ostringstream out;
  out << "iteration";
  const auto n = r.final_state.size();
  for (Eigen::Index k = 0; k < n; ++k) out << ",x" << (k + 1);
  out << ",ld_sup\n";
  for (const auto& p : r.trajectory) {
    out << p.iteration;
    for (Eigen::Index k = 0; k < n; ++k) out << ',' << format_double(p.state[k]);
    out << ',' << format_double(p.ld) << '\n';
  }
  return out.str();
}

}  // namespace qso::harness
