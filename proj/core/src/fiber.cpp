#include "qso/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/error.hpp"
#include "qso/tolerances.hpp"

namespace qso {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

}  // namespace

Fiber Fiber::from_pair_sums(Vector c) {
  if (c.size() == 0) throw Error(ErrorCode::kBadDimension, "fiber must have at least one locus");
  double sum = 0.0;
  for (Index i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i]) || c[i] < -tol::kValidation) {
      throw Error(ErrorCode::kNotASimplexPoint,
                  "pair sum c[" + std::to_string(i) + "] = " + std::to_string(c[i]));
    }
    c[i] = std::max(c[i], 0.0);
    sum += c[i];
  }
  if (std::abs(sum - 1.0) > tol::kValidation) {
    throw Error(ErrorCode::kNotASimplexPoint,
                "pair sums add to " + std::to_string(sum) + ", expected 1");
  }
  Fiber fiber{std::move(c), {}};
  for (Index i = 0; i < fiber.c.size(); ++i)
    if (fiber.c[i] <= tol::kZeroLocus) fiber.zero_set.push_back(static_cast<std::size_t>(i));
  return fiber;
}

FiberDecomposition fiber_of(const SimplexPoint& x) {
  const std::size_t m = x.loci();
  Vector c(idx(m));
  Vector u(idx(m));
  for (std::size_t i = 0; i < m; ++i) {
    c[idx(i)] = x.first(i) + x.second(i);
    u[idx(i)] = x.first(i);
  }
  Fiber fiber{std::move(c), {}};
  for (std::size_t i = 0; i < m; ++i)
    if (fiber.c[idx(i)] <= tol::kZeroLocus) fiber.zero_set.push_back(i);
  return {std::move(fiber), ReducedState{std::move(u)}};
}

ReducedState make_reduced_state(const Fiber& fiber, Vector u) {
  if (u.size() != fiber.c.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "u and c have different lengths");
  }
  for (Index i = 0; i < u.size(); ++i) {
    const double ci = fiber.c[i];
    if (!std::isfinite(u[i]) || u[i] < -tol::kValidation || u[i] > ci + tol::kValidation) {
      throw Error(ErrorCode::kNotASimplexPoint, "u[" + std::to_string(i) + "] = " +
                                                    std::to_string(u[i]) + " is outside [0, " +
                                                    std::to_string(ci) + "]");
    }
    u[i] = std::clamp(u[i], 0.0, ci);
  }
  return ReducedState{std::move(u)};
}

SimplexPoint embed(const Fiber& fiber, const ReducedState& state) {
  if (state.u.size() != fiber.c.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "u and c have different lengths");
  }
  const std::size_t m = fiber.loci();
  Vector x(idx(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    x[idx(2 * i)] = state.u[idx(i)];
    x[idx(2 * i + 1)] = fiber.c[idx(i)] - state.u[idx(i)];
  }
  return SimplexPoint::unchecked(std::move(x));
}

Vector ReducedSystem::expand(const Vector& reduced) const {
  Vector full = Vector::Zero(idx(full_loci));
  for (std::size_t r = 0; r < kept.size(); ++r) full[idx(kept[r])] = reduced[idx(r)];
  return full;
}

Vector ReducedSystem::expand_state(const ReducedState& reduced) const {
  Vector full = Vector::Zero(idx(2 * full_loci));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    full[idx(2 * kept[r])] = reduced.u[idx(r)];
    full[idx(2 * kept[r] + 1)] = fiber.c[idx(r)] - reduced.u[idx(r)];
  }
  return full;
}

ReducedSystem reduce_zero_loci(const CoefficientMatrix& a, const Fiber& fiber,
                               const ReducedState& state) {
  const std::size_t m = fiber.loci();
  if (a.loci() != m || state.loci() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficients, fiber and state disagree on m");
  }
  std::vector<std::size_t> kept;
  kept.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    if (!std::binary_search(fiber.zero_set.begin(), fiber.zero_set.end(), i)) kept.push_back(i);
  if (kept.empty()) {
    throw Error(ErrorCode::kAllLociZero, "every pair sum is zero; not a point of the simplex");
  }
  if (kept.size() == m) return ReducedSystem{a, fiber, state, std::move(kept), m};

  Vector c(idx(kept.size()));
  Vector u(idx(kept.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    c[idx(r)] = fiber.c[idx(kept[r])];
    u[idx(r)] = state.u[idx(kept[r])];
  }
  return ReducedSystem{a.restricted_to(kept), Fiber{std::move(c), {}},
                       ReducedState{std::move(u)}, std::move(kept), m};
}

ReducedMatrix build_bc(const CoefficientMatrix& a, const Fiber& fiber) {
  const std::size_t m = fiber.loci();
  if (a.loci() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficients and fiber disagree on m");
  }
  Matrix b(idx(m), idx(m));
  for (std::size_t i = 0; i < m; ++i) {
    double outflow = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      b(idx(i), idx(k)) = fiber.c[idx(i)] * a(i, k);
      outflow += a(i, k) * fiber.c[idx(k)];
    }
    b(idx(i), idx(i)) = 1.0 - outflow;
  }
  return ReducedMatrix{std::move(b), fiber, a};
}

ReducedState iterate_linear(const ReducedMatrix& b, const ReducedState& u0, std::size_t steps) {
  if (u0.loci() != b.loci()) {
    throw Error(ErrorCode::kDimensionMismatch, "state and matrix disagree on m");
  }
  Vector u = u0.u;
  Vector next(u.size());
  for (std::size_t n = 0; n < steps; ++n) {
    next.noalias() = b.b * u;
    u.swap(next);
  }
  return ReducedState{std::move(u)};
}

std::vector<ReducedState> linear_trajectory(const ReducedMatrix& b, const ReducedState& u0,
                                            std::size_t steps) {
  if (u0.loci() != b.loci()) {
    throw Error(ErrorCode::kDimensionMismatch, "state and matrix disagree on m");
  }
  std::vector<ReducedState> out;
  out.reserve(steps + 1);
  out.push_back(u0);
  for (std::size_t n = 0; n < steps; ++n) out.push_back(ReducedState{b.b * out.back().u});
  return out;
}

double restrict_consistency_check(const CoefficientMatrix& a, const SimplexPoint& x) {
  const auto [fiber, state] = fiber_of(x);
  const ReducedMatrix b = build_bc(a, fiber);
  const SimplexPoint next = apply_w(a, x);
  const Vector linear = b.b * state.u;
  double residual = 0.0;
  for (std::size_t i = 0; i < x.loci(); ++i)
    residual = std::max(residual, std::abs(next.first(i) - linear[idx(i)]));
  return residual;
}

}  // namespace qso
