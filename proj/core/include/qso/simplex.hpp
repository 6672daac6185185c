#pragma once

// State space, coefficients and the nonlinear recombination operator W.
//
// Indexing is 0-based throughout. Locus i owns the coordinate pair
// (2i, 2i+1); the first entry of the pair is the "odd" coordinate in the
// 1-based notation of the model and is the one carried by the linear
// reduction.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point of the simplex over 2m gamete types.
class SimplexPoint {
 public:
  /// Wraps the output of a map known to preserve the simplex (W, the
  /// fiber embedding). Rounding-level negatives are clamped to zero; no
  /// renormalization is applied.
  static SimplexPoint unchecked(Vector coords);

  std::size_t size() const noexcept { return static_cast<std::size_t>(coords_.size()); }
  std::size_t loci() const noexcept { return size() / 2; }

  double operator[](std::size_t k) const { return coords_[static_cast<Eigen::Index>(k)]; }
  double first(std::size_t locus) const { return (*this)[2 * locus]; }
  double second(std::size_t locus) const { return (*this)[2 * locus + 1]; }

  const Vector& coords() const noexcept { return coords_; }
  std::vector<double> to_vector() const;

 private:
  explicit SimplexPoint(Vector coords) : coords_(std::move(coords)) {}

  friend SimplexPoint validate_state(std::span<const double> raw);

  Vector coords_;
};

/// Checks simplex membership of raw input (length even and >= 4, entries
/// >= -1e-9, sum within 1e-9 of one), then clamps into [0,1] and rescales
/// so the coordinates sum to one.
///
/// Throws Error{kBadDimension} or Error{kNotASimplexPoint}.
SimplexPoint validate_state(std::span<const double> raw);

/// The m x m recombination coefficients a_ij in [0,1]. Diagonal entries
/// are stored but never enter any computation.
class CoefficientMatrix {
 public:
  /// Throws Error{kBadDimension} for a non-square or empty matrix and
  /// Error{kBadCoefficient} for entries outside [0,1] or non-finite.
  explicit CoefficientMatrix(Matrix entries);

  static CoefficientMatrix zero(std::size_t loci);

  std::size_t loci() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& entries() const noexcept { return entries_; }

  /// a_ij == a_ji for all i != j (exact comparison).
  bool is_symmetric() const;
  /// Every locus has sum_{j != i} a_ij > 0.
  bool satisfies_row_condition() const;
  bool strictly_positive_offdiag() const;
  /// Loci whose off-diagonal row is identically zero. W never moves them.
  std::vector<std::size_t> frozen_loci() const;

  /// Sub-matrix on the given loci, in the given order.
  CoefficientMatrix restricted_to(std::span<const std::size_t> kept) const;

 private:
  Matrix entries_;
};

/// Heredity coefficients P_{ij,k} of a quadratic stochastic operator on
/// n types. Storage is level-major: level k is the n x n matrix P_{., ., k}.
class CubicMatrix {
 public:
  explicit CubicMatrix(std::size_t types);

  std::size_t types() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(k * n_ + i) * n_ + j];
  }
  double& at(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(k * n_ + i) * n_ + j];
  }

  Matrix level(std::size_t k) const;

  /// x'_k = sum_{i,j} P_{ij,k} x_i x_j.
  Vector apply(const Vector& x) const;

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Per-locus interaction terms d_i = sum_j a_ij (x_{2i+1} x_{2j} - x_{2i} x_{2j+1}).
/// All zero means linkage equilibrium.
using LdVector = Vector;

/// x'_{first} = x_{first} + d_i, x'_{second} = x_{second} - d_i.
SimplexPoint apply_w(const CoefficientMatrix& a, const SimplexPoint& x);

/// The same operator written as a quadratic stochastic operator with
/// nonnegative products only. Relies on the coordinates summing to one.
SimplexPoint apply_w_stochastic_form(const CoefficientMatrix& a, const SimplexPoint& x);

/// Symmetric cubic matrix whose quadratic form reproduces apply_w on the
/// simplex. Off-diagonal products are split evenly between (i,j) and (j,i).
CubicMatrix build_cubic_matrix(const CoefficientMatrix& a);

LdVector linkage_disequilibrium(const CoefficientMatrix& a, const SimplexPoint& x);

double sup_norm(const Vector& v);

}  // namespace qso
