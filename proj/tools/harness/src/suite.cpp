#include "qso/harness/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "qso/error.hpp"
#include "qso/harness/commands.hpp"
#include "qso/harness/random.hpp"

namespace qso::harness {

using nlohmann::json;

namespace {

[[noreturn]] void suite_error(const std::string& what) {
  throw Error(ErrorCode::kSuiteParseError, what);
}

// Thresholds of the battery.
constexpr double kFormTol = 1e-13;
constexpr double kCubicTol = 1e-13;
constexpr double kSingleStepTol = 1e-13;
constexpr double kPerStepDriftTol = 1e-12;
constexpr double kPredictionTol = 1e-8;
constexpr double kLdAtConvergenceTol = 1e-8;
constexpr double kLdAtLimitTol = 1e-12;
constexpr std::size_t kStatesChecked = 20;
constexpr std::size_t kConjugacySteps = 1000;

bool non_negative_integer(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

bool wants(const Suite& suite, const std::string& family) {
  return std::find(suite.checks.begin(), suite.checks.end(), family) != suite.checks.end();
}

CheckResult bounded(std::string name, double residual, double threshold) {
  return CheckResult{std::move(name), residual, threshold, residual <= threshold, false, {}};
}

CheckResult skipped(std::string name, std::string why) {
  return CheckResult{std::move(name), 0.0, 0.0, true, true, std::move(why)};
}

std::vector<SimplexPoint> leading_states(const CoefficientMatrix& a, const SimplexPoint& x0) {
  std::vector<SimplexPoint> states{x0};
  while (states.size() < kStatesChecked) states.push_back(apply_w(a, states.back()));
  return states;
}

void run_checks(const Suite& suite, const Scenario& scenario, ScenarioResult& out) {
  const CoefficientMatrix a = scenario.coefficients();
  const SimplexPoint x0 = scenario.initial_state();
  const auto states = leading_states(a, x0);

  if (wants(suite, "form_equivalence")) {
    double worst = 0.0;
    for (const auto& x : states) {
      worst = std::max(worst, sup_norm(apply_w(a, x).coords() -
                                       apply_w_stochastic_form(a, x).coords()));
    }
    out.checks.push_back(bounded("form_equivalence", worst, kFormTol));
  }

  if (wants(suite, "cubic_reconstruction")) {
    const CubicMatrix p = build_cubic_matrix(a);
    double worst = 0.0;
    for (const auto& x : states) {
      worst = std::max(worst, sup_norm(p.apply(x.coords()) - apply_w(a, x).coords()));
    }
    out.checks.push_back(bounded("cubic_reconstruction", worst, kCubicTol));
  }

  if (wants(suite, "conjugacy")) {
    const auto [fiber, state] = fiber_of(x0);
    const ReducedMatrix b = build_bc(a, fiber);
    SimplexPoint x = x0;
    Vector u = state.u;
    double single = 0.0;
    double drift_ratio = 0.0;
    for (std::size_t n = 1; n <= kConjugacySteps; ++n) {
      x = apply_w(a, x);
      u = b.b * u;
      double res = 0.0;
      for (std::size_t i = 0; i < x.loci(); ++i) {
        res = std::max(res, std::abs(x.first(i) - u[static_cast<Eigen::Index>(i)]));
      }
      if (n == 1) single = res;
      drift_ratio = std::max(drift_ratio, res / static_cast<double>(n));
    }
    out.checks.push_back(bounded("conjugacy_single_step", single, kSingleStepTol));
    auto drift = bounded("conjugacy_drift_per_step", drift_ratio, kPerStepDriftTol);
    drift.note = "max over n <= 1000 of residual_n / n";
    out.checks.push_back(std::move(drift));
  }

  const bool need_run = wants(suite, "prediction_vs_simulation") || wants(suite, "ld_decay");
  if (!need_run) return;
  const RunReport run = cmd_simulate(scenario);

  if (wants(suite, "prediction_vs_simulation")) {
    if (!a.strictly_positive_offdiag()) {
      out.checks.push_back(skipped("prediction_vs_simulation", "A has zero off-diagonal entries"));
    } else if (!run.prediction) {
      out.checks.push_back(skipped("prediction_vs_simulation", "prediction refused: " +
                                                                   run.refusal->reason));
    } else {
      out.checks.push_back(
          bounded("prediction_vs_simulation", *run.prediction_error, kPredictionTol));
    }
  }

  if (wants(suite, "ld_decay")) {
    if (run.converged_at) {
      out.checks.push_back(bounded("ld_at_convergence", run.ld_trace.back(), kLdAtConvergenceTol));
    } else {
      CheckResult c{"ld_at_convergence", run.ld_trace.back(), kLdAtConvergenceTol, false, false,
                    "simulation did not converge within max_iters"};
      out.checks.push_back(std::move(c));
    }
    if (run.prediction) {
      const SimplexPoint limit = SimplexPoint::unchecked(run.prediction->limit_x);
      out.checks.push_back(
          bounded("ld_at_predicted_limit", sup_norm(linkage_disequilibrium(a, limit)),
                  kLdAtLimitTol));
    } else {
      out.checks.push_back(skipped("ld_at_predicted_limit", "prediction refused"));
    }
  }
}

ScenarioResult run_one(const Suite& suite, const json& doc, std::size_t index) {
  ScenarioResult result;
  result.index = index;
  if (doc.is_object() && doc.contains("name") && doc["name"].is_string()) {
    result.name = doc["name"].get<std::string>();
  }
  try {
    const Scenario scenario = scenario_from_json(doc);
    run_checks(suite, scenario, result);
    const bool all_passed = std::all_of(result.checks.begin(), result.checks.end(),
                                        [](const CheckResult& c) { return c.passed; });
    result.status = all_passed ? ScenarioResult::Status::kPassed : ScenarioResult::Status::kFailed;
  } catch (const Error& e) {
    result.status = e.is_input_error() ? ScenarioResult::Status::kInputError
                                       : ScenarioResult::Status::kFailed;
    result.error = std::string(to_string(e.code())) + ": " + e.what();
    if (e.is_input_error()) result.checks.clear();
  }
  return result;
}

std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

Suite suite_from_json(const json& j) {
  if (!j.is_object()) suite_error("suite must be a JSON object");
  Suite suite;
  if (j.contains("seed")) {
    if (!non_negative_integer(j["seed"])) suite_error("'seed' must be a non-negative integer");
    suite.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) suite_error("'checks' must be an array of names");
    for (const auto& c : j["checks"]) {
      if (!c.is_string()) suite_error("'checks' must be an array of names");
      const auto name = c.get<std::string>();
      const auto& known = all_check_families();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        suite_error("unknown check family '" + name + "'");
      }
      suite.checks.push_back(name);
    }
  } else {
    suite.checks = all_check_families();
  }
  if (j.contains("random")) {
    const json& r = j["random"];
    if (!r.is_object()) suite_error("'random' must be an object");
    auto count = [&r](const char* key, std::size_t fallback) {
      if (!r.contains(key)) return fallback;
      if (!non_negative_integer(r[key])) suite_error(std::string("'") + key + "' must be >= 0");
      return r[key].get<std::size_t>();
    };
    suite.random.count = count("count", 0);
    suite.random.m_min = count("m_min", 2);
    suite.random.m_max = count("m_max", 8);
    if (suite.random.m_min < 2 || suite.random.m_max < suite.random.m_min) {
      suite_error("random scenarios need 2 <= m_min <= m_max");
    }
  }
  if (j.contains("scenarios")) {
    if (!j["scenarios"].is_array()) suite_error("'scenarios' must be an array");
    suite.scenarios.assign(j["scenarios"].begin(), j["scenarios"].end());
  }
  return suite;
}

Suite load_suite(const std::filesystem::path& path) {
  return suite_from_json(read_json_file(path, ErrorCode::kSuiteParseError));
}

std::vector<json> expand_scenarios(const Suite& suite) {
  std::vector<json> docs = suite.scenarios;
  Rng rng(suite.seed);
  const std::size_t span = suite.random.m_max - suite.random.m_min + 1;
  for (std::size_t k = 0; k < suite.random.count; ++k) {
    const std::size_t m = suite.random.m_min + k % span;
    const CoefficientMatrix a = random_coefficients(rng, m);
    const SimplexPoint x0 = random_state(rng, m);
    Scenario s;
    s.name = "random-" + std::to_string(k);
    s.m = m;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> row(m);
      for (std::size_t j = 0; j < m; ++j) row[j] = a(i, j);
      s.a.push_back(std::move(row));
    }
    s.x0 = x0.to_vector();
    docs.push_back(scenario_to_json(s));
  }
  return docs;
}

int SuiteReport::exit_code() const {
  if (failed > 0) return 2;
  if (input_errors > 0) return 1;
  return 0;
}

SuiteReport run_suite(const Suite& suite, unsigned jobs) {
  const std::vector<json> docs = expand_scenarios(suite);
  SuiteReport report;
  report.seed = suite.seed;
  report.scenarios.resize(docs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < docs.size(); k = next++) {
      report.scenarios[k] = run_one(suite, docs[k], k);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(docs.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  for (const auto& s : report.scenarios) {
    switch (s.status) {
      case ScenarioResult::Status::kPassed: ++report.passed; break;
      case ScenarioResult::Status::kFailed: ++report.failed; break;
      case ScenarioResult::Status::kInputError: ++report.input_errors; break;
    }
  }
  return report;
}

json to_json(const SuiteReport& r) {
  json scenarios = json::array();
  for (const auto& s : r.scenarios) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      json cj{{"check", c.name}, {"passed", c.passed}, {"skipped", c.skipped}};
      if (!c.skipped) {
        cj["residual"] = c.residual;
        cj["threshold"] = c.threshold;
      }
      if (!c.note.empty()) cj["note"] = c.note;
      checks.push_back(std::move(cj));
    }
    const char* status = s.status == ScenarioResult::Status::kPassed   ? "passed"
                         : s.status == ScenarioResult::Status::kFailed ? "failed"
                                                                       : "input_error";
    json sj{{"index", s.index}, {"name", s.name}, {"status", status}, {"checks", std::move(checks)}};
    if (!s.error.empty()) sj["error"] = s.error;
    scenarios.push_back(std::move(sj));
  }
  return json{{"seed", r.seed},
              {"scenarios", std::move(scenarios)},
              {"summary",
               {{"passed", r.passed}, {"failed", r.failed}, {"input_errors", r.input_errors}}}};
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream out;
  for (const auto& s : r.scenarios) {
    const std::string label = "[" + std::to_string(s.index) + "] " + (s.name.empty() ? "-" : s.name);
    if (s.status == ScenarioResult::Status::kInputError) {
      out << label << "  INPUT ERROR  " << s.error << '\n';
      continue;
    }
    if (!s.error.empty()) out << label << "  ERROR  " << s.error << '\n';
    for (const auto& c : s.checks) {
      out << label << "  " << c.name << "  ";
      if (c.skipped) {
        out << "SKIP  " << c.note << '\n';
      } else {
        out << (c.passed ? "PASS" : "FAIL") << "  residual=" << format_residual(c.residual)
            << "  threshold=" << format_residual(c.threshold) << '\n';
      }
    }
  }
  out << "summary: " << r.passed << " passed, " << r.failed << " failed, " << r.input_errors
      << " input errors\n";
  return out.str();
}

}  // namespace qso::harness
