#pragma once

namespace qso::tol {

// Simplex membership for raw input (sum and negativity slack).
inline constexpr double kValidation = 1e-9;

// Agreement between the two algebraic forms of the operator.
inline constexpr double kFormEquality = 1e-13;

// Pair sums at or below this are treated as absent loci.
inline constexpr double kZeroLocus = 1e-12;

// |lambda - 1| at or below this counts as the unit eigenvalue.
inline constexpr double kEigenOne = 1e-9;

// Relative singular value / pivot threshold for numerical rank.
inline constexpr double kRank = 1e-10;

}  // namespace qso::tol
