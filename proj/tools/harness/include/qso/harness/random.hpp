#pragma once

// Reproducible random instances. Only the raw 64-bit stream of mt19937_64
// is used (its output is fixed by the standard); the transforms to real
// variates are done here so results do not depend on the standard library.

#include <cstdint>
#include <random>

#include "qso/fiber.hpp"

namespace qso::harness {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard exponential.
  double exponential();
  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Off-diagonal a_ij uniform on [lo, hi], diagonal zero.
CoefficientMatrix random_coefficients(Rng& rng, std::size_t loci, double lo = 0.05,
                                      double hi = 1.0, bool symmetric = false);

/// Uniform on the simplex of dimension n - 1 (normalized exponentials).
Vector random_simplex(Rng& rng, std::size_t n);

SimplexPoint random_state(Rng& rng, std::size_t loci);

}  // namespace qso::harness
