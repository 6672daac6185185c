// qso: simulate, predict and cross-check the many-loci recombination operator.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qso/error.hpp"
#include "qso/harness/commands.hpp"
#include "qso/harness/suite.hpp"
#include "qso/json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCheck = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string scenario;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iters;
  std::optional<double> tol;
  unsigned jobs = 1;
};

void emit(const Options& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file) throw qso::Error(qso::ErrorCode::kScenarioParseError, "cannot write " + opts.out);
  file << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

qso::harness::Scenario load(const Options& opts) {
  auto scenario = qso::harness::load_scenario(opts.scenario);
  if (opts.max_iters) scenario.run.max_iters = *opts.max_iters;
  if (opts.tol) scenario.run.conv_tol = *opts.tol;
  return scenario;
}

void require_json(const Options& opts, const char* command) {
  if (opts.format != "json") {
    throw qso::Error(qso::ErrorCode::kScenarioParseError,
                     std::string(command) + " only supports --format json");
  }
}

int run(const std::string& command, const Options& opts) {
  using namespace qso::harness;
  if (command == "simulate") {
    const RunReport report = cmd_simulate(load(opts));
    emit(opts, opts.format == "csv" ? trajectory_csv(report) : dump(to_json(report)));
    return kExitOk;
  }
  if (command == "predict") {
    require_json(opts, "predict");
    const PredictReport report = cmd_predict(load(opts));
    emit(opts, dump(to_json(report)));
    return report.prediction ? kExitOk : kExitNumerical;
  }
  if (command == "spectrum") {
    require_json(opts, "spectrum");
    emit(opts, dump(to_json(cmd_spectrum(load(opts)))));
    return kExitOk;
  }
  if (command == "fixed-points") {
    require_json(opts, "fixed-points");
    emit(opts, dump(nlohmann::json(cmd_fixed_points(load(opts)))));
    return kExitOk;
  }
  if (command == "cubic") {
    require_json(opts, "cubic");
    emit(opts, dump(nlohmann::json(cmd_cubic(load(opts)))));
    return kExitOk;
  }
  if (command == "verify") {
    Suite suite = load_suite(opts.scenario);
    if (opts.seed) suite.seed = *opts.seed;
    const SuiteReport report = run_suite(suite, opts.jobs);
    std::cerr << to_text(report);
    emit(opts, dump(to_json(report)));
    return report.exit_code();
  }
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic stochastic operator toolkit for many-loci recombination"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&opts](CLI::App* sub, const char* input_help) {
    sub->add_option("--scenario,--suite", opts.scenario, input_help)->required();
    sub->add_option("--out", opts.out, "Write output here instead of stdout");
    sub->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--max-iters", opts.max_iters, "Override run.max_iters");
    sub->add_option("--tol", opts.tol, "Override run.conv_tol");
    sub->add_option("--seed", opts.seed, "Override the suite seed");
  };

  add_common(app.add_subcommand("simulate", "Iterate W to convergence and record the trajectory"),
             "Scenario JSON");
  add_common(app.add_subcommand("predict", "Closed-form limit of the trajectory"),
             "Scenario JSON");
  add_common(app.add_subcommand("spectrum", "Eigenvalues of the reduced linear operator"),
             "Scenario JSON");
  add_common(app.add_subcommand("fixed-points", "Fixed-point set on the scenario's fiber"),
             "Scenario JSON");
  add_common(app.add_subcommand("cubic", "Dump the cubic heredity matrix"), "Scenario JSON");
  auto* verify = app.add_subcommand("verify", "Run the cross-check battery over a suite");
  add_common(verify, "Suite JSON");
  opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  verify->add_option("--jobs", opts.jobs, "Scenarios run concurrently")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opts);
  } catch (const qso::Error& e) {
    std::cerr << "qso " << command << ": " << qso::to_string(e.code()) << ": " << e.what() << '\n';
    return e.is_input_error() ? kExitInput : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "qso " << command << ": " << e.what() << '\n';
    return kExitNumerical;
  }
}
