#pragma once

// Fixed points of W restricted to a fiber: u is fixed iff H_c u = 0 with
// H_c[i][i] = sum_{j != i} a_ij c_j and H_c[i][k] = -c_i a_ik.

#include <cstddef>
#include <vector>

#include "qso/fiber.hpp"

namespace qso {

Matrix build_hc(const CoefficientMatrix& a, const Fiber& fiber);

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular value is at most 1e-10 * sigma_max (all of them when H = 0).
/// Each vector's first component above 1e-14 in magnitude is positive.
std::vector<Vector> null_space(const Matrix& h);

struct FixedPointSet {
  Matrix h;
  std::vector<Vector> null_basis;
  Vector singular_values;  // descending
  /// ||H c||_inf.
  double hc_residual = 0.0;
  /// Range of t for which t c lies in the box 0 <= u_i <= c_i.
  double segment_lo = 0.0;
  double segment_hi = 0.0;
  /// The fixed set on the fiber is exactly the segment {t c}. True iff the
  /// kernel is one-dimensional.
  bool segment_is_complete = false;
  /// H = 0: W is the identity on the fiber.
  bool every_point_fixed = false;

  /// Fiber states at the segment ends, 2m coordinates each.
  Vector segment_start;
  Vector segment_end;
};

FixedPointSet fixed_point_set(const CoefficientMatrix& a, const Fiber& fiber);

struct FixedPointResiduals {
  /// ||W(x) - x||_inf
  double nonlinear = 0.0;
  /// ||H_c u||_inf for (c, u) = fiber_of(x)
  double linear = 0.0;
};

FixedPointResiduals fixed_point_residuals(const CoefficientMatrix& a, const SimplexPoint& x);

bool is_fixed_point(const CoefficientMatrix& a, const SimplexPoint& x, double tol);

}  // namespace qso
