// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Tolerances and instance counts are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qso/fixed_points.hpp"
#include "qso/harness/commands.hpp"
#include "qso/harness/random.hpp"
#include "qso/harness/suite.hpp"
#include "qso/spectral.hpp"

using namespace qso;
using harness::Rng;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

CoefficientMatrix two_locus(double a12, double a21) {
  Matrix a(2, 2);
  a << 0.0, a12, a21, 0.0;
  return CoefficientMatrix(a);
}

CoefficientMatrix example_three_locus(double a, double b) {
  Matrix m(3, 3);
  m << 0.0, a, b, a, 0.0, b, b, b, 0.0;
  return CoefficientMatrix(m);
}

Vector vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

struct Instance {
  CoefficientMatrix a;
  SimplexPoint x;
};

// Shared by criteria 1 and 2.
std::vector<Instance> simplex_instances() {
  Rng rng(1001);
  std::vector<Instance> out;
  out.reserve(10'000);
  for (int k = 0; k < 10'000; ++k) {
    const std::size_t m = rng.index(2, 16);
    auto a = harness::random_coefficients(rng, m, 0.0, 1.0);
    auto x = harness::random_state(rng, m);
    if (k % 2 == 1) {
      // Boundary states: zero out about half the coordinates.
      std::vector<double> raw = x.to_vector();
      for (auto& v : raw)
        if (rng.uniform() < 0.5) v = 0.0;
      raw[rng.index(0, raw.size() - 1)] = 1.0;
      double sum = 0.0;
      for (const double v : raw) sum += v;
      for (auto& v : raw) v /= sum;
      x = validate_state(raw);
    }
    out.push_back({std::move(a), std::move(x)});
  }
  return out;
}

Outcome simplex_preservation(const std::vector<Instance>& instances) {
  const auto start = std::chrono::steady_clock::now();
  double worst_negative = 1.0;  // smallest coordinate seen
  double worst_sum = 0.0;
  for (const auto& [a, x] : instances) {
    // Raw coordinates before the rounding-level clamp inside apply_w.
    const LdVector d = linkage_disequilibrium(a, x);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.loci(); ++i) {
      const double first = x.first(i) + d[static_cast<Eigen::Index>(i)];
      const double second = x.second(i) - d[static_cast<Eigen::Index>(i)];
      worst_negative = std::min({worst_negative, first, second});
      sum += first + second;
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    const SimplexPoint next = apply_w(a, x);
    worst_negative = std::min(worst_negative, next.coords().minCoeff());
    worst_sum = std::max(worst_sum, std::abs(next.coords().sum() - 1.0));
  }
  const double elapsed = seconds_since(start);
  return {worst_negative >= -1e-13 && worst_sum <= 1e-13 && elapsed < 5.0,
          fmt("min coord %.3e, max |sum-1| %.3e, %.3f s", worst_negative, worst_sum, elapsed)};
}

Outcome form_equivalence(const std::vector<Instance>& instances) {
  double worst = 0.0;
  for (const auto& [a, x] : instances) {
    worst = std::max(worst, sup_norm(apply_w(a, x).coords() - apply_w_stochastic_form(a, x).coords()));
  }
  return {worst <= 1e-14, fmt("max sup-norm difference %.3e", worst)};
}

Outcome cubic_matrix() {
  Rng rng(1003);
  double worst_entry = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double a12 = rng.uniform();
    const double a21 = rng.uniform();
    const auto printed = oracle::printed_cubic_m2(a12, a21);
    const CubicMatrix p = build_cubic_matrix(two_locus(a12, a21));
    for (std::size_t lvl = 0; lvl < 4; ++lvl)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          worst_entry = std::max(worst_entry, std::abs(p(i, j, lvl) - printed[lvl][i][j]));
  }
  double worst_form = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = rng.index(2, 8);
    const auto a = harness::random_coefficients(rng, m, 0.0, 1.0);
    const auto x = harness::random_state(rng, m);
    worst_form = std::max(worst_form, sup_norm(build_cubic_matrix(a).apply(x.coords()) - apply_w(a, x).coords()));
  }
  return {worst_entry <= 1e-15 && worst_form <= 1e-13,
          fmt("max entry error %.3e, max reconstruction error %.3e", worst_entry, worst_form)};
}

Outcome linear_reduction() {
  Rng rng(1004);
  double worst_single = 0.0;
  double worst_ratio = 0.0;  // max_n residual_n / (n * 1e-12)
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = rng.index(2, 8);
    const auto a = harness::random_coefficients(rng, m, 0.0, 1.0);
    SimplexPoint x = harness::random_state(rng, m);
    const auto [fiber, state] = fiber_of(x);
    const ReducedMatrix b = build_bc(a, fiber);
    worst_single = std::max(worst_single, restrict_consistency_check(a, x));
    Vector u = state.u;
    for (int n = 1; n <= 1000; ++n) {
      x = apply_w(a, x);
      u = b.b * u;
      double res = 0.0;
      for (std::size_t i = 0; i < m; ++i) res = std::max(res, std::abs(x.first(i) - u[static_cast<Eigen::Index>(i)]));
      worst_ratio = std::max(worst_ratio, res / (n * 1e-12));
    }
  }
  return {worst_single <= 1e-13 && worst_ratio <= 1.0,
          fmt("single-step %.3e, worst residual_n/(n*1e-12) %.3e", worst_single, worst_ratio)};
}

Outcome example_eigenvalues() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    for (int j = 1; j <= 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const double a = i / 10.0;
        const double b = j / 10.0;
        const double gamma = k / 10.0;
        const double alpha = (1.0 - gamma) * 0.4;
        const double beta = 1.0 - gamma - alpha;
        const auto bc = build_bc(example_three_locus(a, b), Fiber{vec3(alpha, beta, gamma), {}});
        const SpectralSummary s = eigen_all(bc);
        std::vector<double> expected{1.0, 1.0 - b, 1.0 - a + (a - b) * gamma};
        std::vector<std::complex<double>> got = s.eigenvalues;
        // Greedy matching; every expected value must be hit by a distinct eigenvalue.
        for (const double e : expected) {
          auto best = std::min_element(got.begin(), got.end(), [e](auto l, auto r) {
            return std::abs(l - e) < std::abs(r - e);
          });
          worst = std::max(worst, std::abs(*best - e));
          got.erase(best);
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-10 && elapsed < 2.0, fmt("max eigenvalue error %.3e, %.3f s", worst, elapsed)};
}

Outcome left_stochastic() {
  Rng rng(1006);
  double worst = 0.0;
  double min_entry = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = rng.index(2, 16);
    const auto a = harness::random_coefficients(rng, m, 0.0, 1.0, /*symmetric=*/true);
    const auto b = build_bc(a, Fiber::from_pair_sums(harness::random_simplex(rng, m)));
    const Vector sums = b.b.colwise().sum().transpose();
    worst = std::max(worst, sup_norm(sums - Vector::Ones(sums.size())));
    min_entry = std::min(min_entry, b.b.minCoeff());
  }
  return {worst <= 1e-14 && min_entry >= 0.0,
          fmt("max |column sum - 1| %.3e, min entry %.3e", worst, min_entry)};
}

Outcome trajectory_limits() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1007);
  double worst = 0.0;
  std::size_t longest = 0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t m = rng.index(2, 8);
    const auto a = harness::random_coefficients(rng, m);
    const auto x0 = harness::random_state(rng, m);
    const LimitPrediction p = predict_limit(a, x0);
    const std::size_t n = convergence_steps_estimate(p.spectral_gap, 1e-9, 1'000'000);
    longest = std::max(longest, n);
    SimplexPoint x = x0;
    for (std::size_t step = 0; step < n; ++step) x = apply_w(a, x);
    worst = std::max(worst, sup_norm(x.coords() - p.limit_x));
  }

  harness::Scenario canonical;
  canonical.m = 2;
  canonical.a = {{0.0, 0.5}, {0.5, 0.0}};
  canonical.x0 = std::vector<double>{0.5, 0.0, 0.0, 0.5};
  const harness::RunReport run = harness::cmd_simulate(canonical);
  const double canonical_error = sup_norm(run.final_state - Vector::Constant(4, 0.25));
  const double elapsed = seconds_since(start);

  return {worst <= 1e-8 && run.converged_at.has_value() && canonical_error <= 1e-10 && elapsed < 60.0,
          fmt("random max error %.3e (longest n %.0f), canonical error %.3e, %.3f s", worst,
              static_cast<double>(longest), canonical_error, elapsed)};
}

Outcome perron_projection_limit() {
  const auto b = build_bc(example_three_locus(0.5, 0.25), Fiber::from_pair_sums(vec3(0.2, 0.3, 0.5)));
  const Vector w = left_perron_vector(b);
  Matrix power = Matrix::Identity(3, 3);
  for (int n = 0; n < 200; ++n) power = b.b * power;
  const double err = (power - perron_projection(b, w)).cwiseAbs().rowwise().sum().maxCoeff();
  return {err <= 1e-9, fmt("||B^200 - c w^T||_inf = %.3e", err)};
}

Outcome fixed_points() {
  Rng rng(1009);
  double worst_hc = 0.0;
  double worst_sigma_ratio = 0.0;
  int grid_pass = 0;
  int grid_total = 0;
  int perturbed_fail = 0;
  int perturbed_total = 0;

  std::vector<std::pair<CoefficientMatrix, Fiber>> cases;
  cases.emplace_back(example_three_locus(0.5, 0.25), Fiber::from_pair_sums(vec3(0.2, 0.3, 0.5)));
  for (int k = 0; k < 20; ++k) {
    const std::size_t m = rng.index(2, 8);
    cases.emplace_back(harness::random_coefficients(rng, m), Fiber::from_pair_sums(harness::random_simplex(rng, m)));
  }

  for (const auto& [a, fiber] : cases) {
    const FixedPointSet set = fixed_point_set(a, fiber);
    worst_hc = std::max(worst_hc, set.hc_residual);
    const Vector& sv = set.singular_values;
    worst_sigma_ratio = std::max(worst_sigma_ratio, sv[sv.size() - 1] / sv[0]);

    for (int g = 0; g < 100; ++g) {
      const double beta = g / 99.0;
      const SimplexPoint x = embed(fiber, ReducedState{beta * fiber.c});
      ++grid_total;
      if (is_fixed_point(a, x, 1e-12)) ++grid_pass;
    }
    for (int q = 0; q < 100; ++q) {
      // A box point whose u is not parallel to c.
      Vector u(fiber.c.size());
      for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = rng.uniform() * fiber.c[i];
      const double t = u.dot(fiber.c) / fiber.c.squaredNorm();
      if (sup_norm(u - t * fiber.c) < 1e-3 * sup_norm(fiber.c)) continue;
      ++perturbed_total;
      if (!is_fixed_point(a, embed(fiber, ReducedState{u}), 1e-12)) ++perturbed_fail;
    }
  }
  const bool ok = worst_hc <= 1e-13 && worst_sigma_ratio <= 1e-10 && grid_pass == grid_total &&
                  perturbed_fail == perturbed_total && perturbed_total >= 100;
  return {ok, fmt("H c %.3e, sigma_min/sigma_max %.3e, grid %.0f/%.0f fixed", worst_hc, worst_sigma_ratio,
                  grid_pass, grid_total) +
                  fmt(", perturbed %.0f/%.0f rejected", perturbed_fail, perturbed_total)};
}

Outcome linkage_equilibrium() {
  const harness::Suite suite = harness::load_suite(QSO_DEFAULT_SUITE);
  double worst_converged = 0.0;
  double worst_limit = 0.0;
  int trajectories = 0;
  bool all_converged = true;
  for (const auto& doc : harness::expand_scenarios(suite)) {
    const harness::Scenario s = harness::scenario_from_json(doc);
    const harness::RunReport run = harness::cmd_simulate(s);
    ++trajectories;
    all_converged = all_converged && run.converged_at.has_value();
    worst_converged = std::max(worst_converged, run.ld_trace.back());
    if (run.prediction) {
      const auto limit = SimplexPoint::unchecked(run.prediction->limit_x);
      worst_limit = std::max(worst_limit, sup_norm(linkage_disequilibrium(s.coefficients(), limit)));
    }
  }
  return {all_converged && worst_converged <= 1e-8 && worst_limit <= 1e-12,
          fmt("%.0f suite trajectories, LD at convergence %.3e, LD at predicted limit %.3e",
              trajectories, worst_converged, worst_limit)};
}

Outcome beta_conservation() {
  Rng rng(1011);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = rng.index(2, 8);
    const auto a = harness::random_coefficients(rng, m);
    const auto [fiber, state] = fiber_of(harness::random_state(rng, m));
    const auto b = build_bc(a, fiber);
    const Vector w = left_perron_vector(b);
    const auto path = linear_trajectory(b, state, 1000);
    worst = std::max(worst, beta_conservation_residual(b, w, path));
  }
  return {worst <= 1e-10, fmt("max |w.u(n) - w.u(0)| %.3e over 200 x 1000 steps", worst)};
}

}  // namespace

int main() {
  const auto instances = simplex_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1. simplex preservation", [&] { return simplex_preservation(instances); }},
      {"2. form equivalence", [&] { return form_equivalence(instances); }},
      {"3. cubic matrix", cubic_matrix},
      {"4. linear reduction", linear_reduction},
      {"5. three-locus eigenvalues", example_eigenvalues},
      {"6. left-stochastic B_c", left_stochastic},
      {"7. trajectory limits", trajectory_limits},
      {"8. Perron projection", perron_projection_limit},
      {"9. fixed points", fixed_points},
      {"10. linkage equilibrium", linkage_equilibrium},
      {"11. beta conservation", beta_conservation},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    if (!o.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
