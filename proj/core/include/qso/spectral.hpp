#pragma once

// Spectrum of B_c, its left Perron vector, and closed-form trajectory limits.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qso/error.hpp"
#include "qso/fiber.hpp"

namespace qso {

struct SpectralSummary {
  /// Descending modulus, then descending real part, then descending
  /// imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  /// Number of eigenvalues within 1e-9 of one.
  std::size_t unit_multiplicity = 0;
  bool one_is_simple = false;
  /// 1 - max |lambda| over eigenvalues away from one; 1 when there are none.
  double spectral_gap = 0.0;
  /// Left eigenvector for eigenvalue one with w.c = 1; present only when
  /// the eigenvalue is simple.
  std::optional<Vector> w;
};

SpectralSummary eigen_all(const ReducedMatrix& b);

/// Solves (B^T - I) w = 0 by full-pivot LU with a relative pivot threshold
/// of 1e-10 and scales so that w.c = 1.
///
/// Throws Error{kNonSimpleEigenvalueOne} when the kernel is not
/// one-dimensional and Error{kDegenerateNormalization} when w.c vanishes.
Vector left_perron_vector(const ReducedMatrix& b);

/// c w^T.
Matrix perron_projection(const ReducedMatrix& b, const Vector& w);

struct LimitPrediction {
  double beta = 0.0;
  /// beta * c, full size (zeros at deleted loci).
  Vector limit_u;
  /// (beta c_0, c_0 (1 - beta), ..., beta c_{m-1}, c_{m-1} (1 - beta)).
  Vector limit_x;
  /// Left Perron vector re-embedded at full size (zeros at deleted loci).
  Vector w;
  Fiber fiber;
  /// Original indices of the loci that survived zero-locus reduction.
  std::vector<std::size_t> kept;
  double spectral_gap = 0.0;
};

/// Raised when the closed-form limit is unavailable: either a locus of the
/// reduced system is frozen (no off-diagonal coefficients) or the unit
/// eigenvalue of B_c is not simple. Iterating W still converges; callers
/// should fall back to simulation.
class PredictionRefused : public Error {
 public:
  PredictionRefused(const std::string& what, std::vector<std::size_t> frozen_loci)
      : Error(ErrorCode::kNonSimpleEigenvalueOne, what), frozen_loci_(std::move(frozen_loci)) {}

  /// Original (unreduced) indices.
  const std::vector<std::size_t>& frozen_loci() const noexcept { return frozen_loci_; }

 private:
  std::vector<std::size_t> frozen_loci_;
};

/// Limit of W^n(x0): reduces zero loci, solves for w on the reduced
/// system and sets beta = w.u0. Throws PredictionRefused.
LimitPrediction predict_limit(const CoefficientMatrix& a, const SimplexPoint& x0);

/// max_n |w.u^(n) - w.u^(0)| along a linear trajectory.
double beta_conservation_residual(const ReducedMatrix& b, const Vector& w,
                                  std::span<const ReducedState> trajectory);

/// Smallest n with (1 - gap)^n <= target, capped.
std::size_t convergence_steps_estimate(double spectral_gap, double target = 1e-9,
                                       std::size_t cap = 1'000'000);

}  // namespace qso
