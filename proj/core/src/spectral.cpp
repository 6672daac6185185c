#include "qso/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/tolerances.hpp"

namespace qso {

namespace {

using Index = Eigen::Index;

bool descending(const std::complex<double>& x, const std::complex<double>& y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ax != ay) return ax > ay;
  if (x.real() != y.real()) return x.real() > y.real();
  return x.imag() > y.imag();
}

bool is_unit(const std::complex<double>& lambda) {
  return std::abs(lambda - 1.0) <= tol::kEigenOne;
}

}  // namespace

SpectralSummary eigen_all(const ReducedMatrix& b) {
  SpectralSummary summary;
  Eigen::EigenSolver<Matrix> solver(b.b, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kEigensolverFailure,
                "eigensolver did not converge on a " + std::to_string(b.loci()) + "x" +
                    std::to_string(b.loci()) + " matrix");
  }
  const auto& values = solver.eigenvalues();
  summary.eigenvalues.assign(values.data(), values.data() + values.size());
  std::sort(summary.eigenvalues.begin(), summary.eigenvalues.end(), descending);

  double largest_other = 0.0;
  bool any_other = false;
  for (const auto& lambda : summary.eigenvalues) {
    if (is_unit(lambda)) {
      ++summary.unit_multiplicity;
    } else {
      largest_other = std::max(largest_other, std::abs(lambda));
      any_other = true;
    }
  }
  summary.one_is_simple = summary.unit_multiplicity == 1;
  summary.spectral_gap = any_other ? 1.0 - largest_other : 1.0;

  if (summary.one_is_simple) {
    try {
      summary.w = left_perron_vector(b);
    } catch (const Error&) {
      // Eigenvalue counting and the kernel solve disagree near the
      // threshold; report the spectrum without w.
      summary.one_is_simple = false;
    }
  }
  return summary;
}

Vector left_perron_vector(const ReducedMatrix& b) {
  const Index m = b.b.rows();
  const Matrix shifted = b.b.transpose() - Matrix::Identity(m, m);
  Eigen::FullPivLU<Matrix> lu(shifted);
  lu.setThreshold(tol::kRank);
  const Index nullity = lu.dimensionOfKernel();
  if (nullity != 1) {
    throw Error(ErrorCode::kNonSimpleEigenvalueOne,
                "eigenvalue 1 of B_c has a " + std::to_string(nullity) +
                    "-dimensional left eigenspace");
  }
  Vector w = lu.kernel().col(0);
  const double scale = w.dot(b.fiber.c);
  if (!(std::abs(scale) > 1e-300) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kDegenerateNormalization, "left Perron vector is orthogonal to c");
  }
  w /= scale;
  return w;
}

Matrix perron_projection(const ReducedMatrix& b, const Vector& w) {
  if (w.size() != b.fiber.c.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "w and c have different lengths");
  }
  return b.fiber.c * w.transpose();
}

LimitPrediction predict_limit(const CoefficientMatrix& a, const SimplexPoint& x0) {
  if (a.loci() != x0.loci()) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficients and state disagree on m");
  }
  const auto [fiber, state] = fiber_of(x0);
  const ReducedSystem reduced = reduce_zero_loci(a, fiber, state);

  if (reduced.kept.size() >= 2) {
    const auto frozen_reduced = reduced.coefficients.frozen_loci();
    if (!frozen_reduced.empty()) {
      std::vector<std::size_t> frozen;
      std::string list;
      for (const auto r : frozen_reduced) {
        frozen.push_back(reduced.kept[r]);
        list += (list.empty() ? "" : ", ") + std::to_string(reduced.kept[r]);
      }
      throw PredictionRefused("loci {" + list + "} have no recombination partners", frozen);
    }
  }

  const ReducedMatrix b = build_bc(reduced.coefficients, reduced.fiber);
  Vector w_reduced;
  try {
    w_reduced = left_perron_vector(b);
  } catch (const Error& e) {
    throw PredictionRefused(e.what(), {});
  }

  LimitPrediction out{};
  out.beta = std::clamp(w_reduced.dot(reduced.state.u), 0.0, 1.0);
  out.w = reduced.expand(w_reduced);
  out.limit_u = reduced.expand(out.beta * reduced.fiber.c);
  const Index m = static_cast<Index>(reduced.full_loci);
  out.limit_x = Vector::Zero(2 * m);
  for (const auto i : reduced.kept) {
    const Index k = static_cast<Index>(i);
    out.limit_x[2 * k] = out.beta * fiber.c[k];
    out.limit_x[2 * k + 1] = fiber.c[k] * (1.0 - out.beta);
  }
  out.fiber = fiber;
  out.kept = reduced.kept;

  const SpectralSummary spectrum = eigen_all(b);
  out.spectral_gap = spectrum.spectral_gap;
  return out;
}

double beta_conservation_residual(const ReducedMatrix& b, const Vector& w,
                                  std::span<const ReducedState> trajectory) {
  if (trajectory.empty()) return 0.0;
  if (w.size() != static_cast<Index>(b.loci())) {
    throw Error(ErrorCode::kDimensionMismatch, "w and B_c disagree on m");
  }
  const double beta0 = w.dot(trajectory.front().u);
  double worst = 0.0;
  for (const auto& state : trajectory) worst = std::max(worst, std::abs(w.dot(state.u) - beta0));
  return worst;
}

std::size_t convergence_steps_estimate(double spectral_gap, double target, std::size_t cap) {
  if (spectral_gap >= 1.0) return 1;
  if (!(spectral_gap > 0.0)) return cap;
  const double n = std::ceil(std::log(target) / std::log1p(-spectral_gap));
  if (!std::isfinite(n) || n >= static_cast<double>(cap)) return cap;
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

}  // namespace qso
