#pragma once

// Invariant fibers of W and the linear dynamics on them.
//
// Pair sums c_i = x_{2i} + x_{2i+1} are conserved by W, so each state lives
// on the fiber I_c for a fixed c on the m-simplex. Restricted to I_c the
// operator is linear in the first coordinates u_i = x_{2i}, u' = B_c u.

#include <cstddef>
#include <span>
#include <vector>

#include "qso/simplex.hpp"

namespace qso {

struct Fiber {
  Vector c;
  /// Loci with c_i <= 1e-12, ascending.
  std::vector<std::size_t> zero_set;

  /// Validates c (nonnegative within 1e-9, sums to one within 1e-9) and
  /// computes the zero set. Tiny negatives are clamped to zero.
  static Fiber from_pair_sums(Vector c);

  std::size_t loci() const noexcept { return static_cast<std::size_t>(c.size()); }
};

struct ReducedState {
  Vector u;

  std::size_t loci() const noexcept { return static_cast<std::size_t>(u.size()); }
};

struct FiberDecomposition {
  Fiber fiber;
  ReducedState state;
};

FiberDecomposition fiber_of(const SimplexPoint& x);

/// Checks 0 <= u_i <= c_i (within 1e-9) and clamps into that box.
ReducedState make_reduced_state(const Fiber& fiber, Vector u);

/// Inverse of fiber_of: (u_0, c_0 - u_0, ..., u_{m-1}, c_{m-1} - u_{m-1}).
SimplexPoint embed(const Fiber& fiber, const ReducedState& state);

/// A system with the absent loci (the fiber's zero set) deleted.
struct ReducedSystem {
  CoefficientMatrix coefficients;
  Fiber fiber;
  ReducedState state;
  /// kept[r] is the original index of reduced locus r.
  std::vector<std::size_t> kept;
  std::size_t full_loci;

  /// Scatters a per-locus vector of the reduced system back to full size,
  /// with zeros at deleted loci.
  Vector expand(const Vector& reduced) const;
  /// Full-size state (2m coordinates) from reduced first coordinates.
  Vector expand_state(const ReducedState& reduced) const;
};

/// Deletes the loci in the fiber's zero set. With an empty zero set the
/// inputs come back unchanged and kept is the identity map.
ReducedSystem reduce_zero_loci(const CoefficientMatrix& a, const Fiber& fiber,
                               const ReducedState& state);

/// B_c with b_ii = 1 - sum_{j != i} a_ij c_j and b_ik = c_i a_ik.
struct ReducedMatrix {
  Matrix b;
  Fiber fiber;
  CoefficientMatrix coefficients;

  std::size_t loci() const noexcept { return static_cast<std::size_t>(b.rows()); }
};

ReducedMatrix build_bc(const CoefficientMatrix& a, const Fiber& fiber);

/// u^(n) = B^n u^(0) by n matrix-vector products.
ReducedState iterate_linear(const ReducedMatrix& b, const ReducedState& u0, std::size_t steps);

/// u^(0), ..., u^(steps).
std::vector<ReducedState> linear_trajectory(const ReducedMatrix& b, const ReducedState& u0,
                                            std::size_t steps);

/// Sup-norm distance between the first coordinates of W(x) and B_c u.
double restrict_consistency_check(const CoefficientMatrix& a, const SimplexPoint& x);

}  // namespace qso
