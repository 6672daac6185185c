#include "qso/harness/scenario.hpp"

#include <fstream>
#include <sstream>

#include "qso/error.hpp"
#include "qso/fiber.hpp"

namespace qso::harness {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::kScenarioParseError, what);
}

std::vector<double> numbers(const json& j, const char* field) {
  if (!j.is_array()) parse_error(std::string("'") + field + "' must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) parse_error(std::string("'") + field + "' contains a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t positive_count(const json& j, const char* field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    parse_error(std::string("'") + field + "' must be a positive integer");
  }
  return static_cast<std::size_t>(j.get<long long>());
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

CoefficientMatrix Scenario::coefficients() const {
  const auto n = static_cast<Eigen::Index>(a.size());
  Matrix entries(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = a[static_cast<std::size_t>(i)];
    if (row.size() != a.size()) {
      throw Error(ErrorCode::kBadDimension, "coefficient matrix A must be square");
    }
    for (Eigen::Index j = 0; j < n; ++j) entries(i, j) = row[static_cast<std::size_t>(j)];
  }
  return CoefficientMatrix(std::move(entries));
}

SimplexPoint Scenario::initial_state() const {
  if (x0) {
    if (x0->size() != 2 * m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "x0 has " + std::to_string(x0->size()) + " entries, expected 2m = " +
                      std::to_string(2 * m));
    }
    return validate_state(*x0);
  }
  if (!c || !u0) parse_error("scenario needs either 'x0' or both 'c' and 'u0'");
  if (c->size() != m || u0->size() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "'c' and 'u0' must have m entries");
  }
  const Fiber fiber = Fiber::from_pair_sums(to_vector(*c));
  const ReducedState state = make_reduced_state(fiber, to_vector(*u0));
  const Vector x = embed(fiber, state).coords();
  return validate_state(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) parse_error("scenario must be a JSON object");
  Scenario s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) parse_error("'name' must be a string");
    s.name = j["name"].get<std::string>();
  }
  if (!j.contains("m")) parse_error("missing 'm'");
  s.m = positive_count(j["m"], "m");
  if (s.m < 2) throw Error(ErrorCode::kBadDimension, "m must be at least 2");

  if (!j.contains("A") || !j["A"].is_array()) parse_error("missing array 'A'");
  for (const auto& row : j["A"]) s.a.push_back(numbers(row, "A"));
  if (s.a.size() != s.m) {
    throw Error(ErrorCode::kDimensionMismatch, "'A' has " + std::to_string(s.a.size()) +
                                                   " rows, expected m = " + std::to_string(s.m));
  }

  const bool has_x0 = j.contains("x0");
  const bool has_fiber = j.contains("c") || j.contains("u0");
  if (has_x0 == has_fiber) parse_error("give exactly one of 'x0' or the pair 'c', 'u0'");
  if (has_x0) {
    s.x0 = numbers(j["x0"], "x0");
  } else {
    if (!j.contains("c") || !j.contains("u0")) parse_error("'c' and 'u0' must be given together");
    s.c = numbers(j["c"], "c");
    s.u0 = numbers(j["u0"], "u0");
  }

  if (j.contains("run")) {
    const json& run = j["run"];
    if (!run.is_object()) parse_error("'run' must be an object");
    if (run.contains("max_iters")) s.run.max_iters = positive_count(run["max_iters"], "max_iters");
    if (run.contains("record_every")) {
      s.run.record_every = positive_count(run["record_every"], "record_every");
    }
    if (run.contains("conv_tol")) {
      if (!run["conv_tol"].is_number() || !(run["conv_tol"].get<double>() > 0.0)) {
        parse_error("'conv_tol' must be a positive number");
      }
      s.run.conv_tol = run["conv_tol"].get<double>();
    }
  }

  // Numeric validation happens here so bad scenarios fail at load time.
  (void)s.coefficients();
  (void)s.initial_state();
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  if (!s.name.empty()) j["name"] = s.name;
  j["m"] = s.m;
  j["A"] = s.a;
  if (s.x0) j["x0"] = *s.x0;
  if (s.c) j["c"] = *s.c;
  if (s.u0) j["u0"] = *s.u0;
  j["run"] = {{"max_iters", s.run.max_iters},
              {"conv_tol", s.run.conv_tol},
              {"record_every", s.run.record_every}};
  return j;
}

json read_json_file(const std::filesystem::path& path, ErrorCode code) {
  std::ifstream in(path);
  if (!in) throw Error(code, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(code, path.string() + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path, ErrorCode::kScenarioParseError));
}

}  // namespace qso::harness
