#include "qso/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qso/error.hpp"
#include "qso/tolerances.hpp"

namespace qso {

namespace {

using Index = Eigen::Index;

void require_same_loci(const CoefficientMatrix& a, const SimplexPoint& x) {
  if (a.loci() != x.loci()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "coefficient matrix has " + std::to_string(a.loci()) +
                    " loci but state has " + std::to_string(x.loci()));
  }
}

}  // namespace

SimplexPoint SimplexPoint::unchecked(Vector coords) {
  for (Index k = 0; k < coords.size(); ++k) coords[k] = std::max(coords[k], 0.0);
  return SimplexPoint(std::move(coords));
}

std::vector<double> SimplexPoint::to_vector() const {
  return {coords_.data(), coords_.data() + coords_.size()};
}

SimplexPoint validate_state(std::span<const double> raw) {
  if (raw.size() < 4 || raw.size() % 2 != 0) {
    throw Error(ErrorCode::kBadDimension,
                "state length must be even and at least 4, got " + std::to_string(raw.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const double v = raw[k];
    if (!std::isfinite(v) || v < -tol::kValidation) {
      throw Error(ErrorCode::kNotASimplexPoint,
                  "coordinate " + std::to_string(k) + " is " + std::to_string(v));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::kValidation) {
    throw Error(ErrorCode::kNotASimplexPoint,
                "coordinates sum to " + std::to_string(sum) + ", expected 1");
  }

  Vector coords(static_cast<Index>(raw.size()));
  double clamped_sum = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    coords[static_cast<Index>(k)] = std::clamp(raw[k], 0.0, 1.0);
    clamped_sum += coords[static_cast<Index>(k)];
  }
  coords /= clamped_sum;
  return SimplexPoint(std::move(coords));
}

CoefficientMatrix::CoefficientMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::kBadDimension,
                "coefficient matrix must be square and non-empty, got " +
                    std::to_string(entries_.rows()) + "x" + std::to_string(entries_.cols()));
  }
  for (Index i = 0; i < entries_.rows(); ++i) {
    for (Index j = 0; j < entries_.cols(); ++j) {
      const double v = entries_(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw Error(ErrorCode::kBadCoefficient,
                    "a[" + std::to_string(i) + "][" + std::to_string(j) + "] = " +
                        std::to_string(v) + " is outside [0,1]");
      }
    }
  }
}

CoefficientMatrix CoefficientMatrix::zero(std::size_t loci) {
  const auto m = static_cast<Index>(loci);
  return CoefficientMatrix(Matrix::Zero(m, m));
}

bool CoefficientMatrix::is_symmetric() const {
  for (Index i = 0; i < entries_.rows(); ++i)
    for (Index j = i + 1; j < entries_.cols(); ++j)
      if (entries_(i, j) != entries_(j, i)) return false;
  return true;
}

bool CoefficientMatrix::satisfies_row_condition() const { return frozen_loci().empty(); }

bool CoefficientMatrix::strictly_positive_offdiag() const {
  for (Index i = 0; i < entries_.rows(); ++i)
    for (Index j = 0; j < entries_.cols(); ++j)
      if (i != j && !(entries_(i, j) > 0.0)) return false;
  return true;
}

std::vector<std::size_t> CoefficientMatrix::frozen_loci() const {
  std::vector<std::size_t> frozen;
  for (Index i = 0; i < entries_.rows(); ++i) {
    double row = 0.0;
    for (Index j = 0; j < entries_.cols(); ++j)
      if (j != i) row += entries_(i, j);
    if (!(row > 0.0)) frozen.push_back(static_cast<std::size_t>(i));
  }
  return frozen;
}

CoefficientMatrix CoefficientMatrix::restricted_to(std::span<const std::size_t> kept) const {
  const auto n = static_cast<Index>(kept.size());
  Matrix sub(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index s = 0; s < n; ++s) {
      const auto i = kept[static_cast<std::size_t>(r)];
      const auto j = kept[static_cast<std::size_t>(s)];
      if (i >= loci() || j >= loci()) {
        throw Error(ErrorCode::kDimensionMismatch, "restriction index out of range");
      }
      sub(r, s) = (*this)(i, j);
    }
  }
  return CoefficientMatrix(std::move(sub));
}

CubicMatrix::CubicMatrix(std::size_t types) : n_(types), data_(types * types * types, 0.0) {}

Matrix CubicMatrix::level(std::size_t k) const {
  const auto n = static_cast<Index>(n_);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = (*this)(i, j, k);
  return out;
}

Vector CubicMatrix::apply(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) {
    throw Error(ErrorCode::kDimensionMismatch, "state size does not match cubic matrix");
  }
  Vector out = Vector::Zero(static_cast<Index>(n_));
  for (std::size_t k = 0; k < n_; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double xi = x[static_cast<Index>(i)];
      if (xi == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j, k) * xi * x[static_cast<Index>(j)];
    }
    out[static_cast<Index>(k)] = acc;
  }
  return out;
}

LdVector linkage_disequilibrium(const CoefficientMatrix& a, const SimplexPoint& x) {
  require_same_loci(a, x);
  const std::size_t m = a.loci();
  LdVector d = LdVector::Zero(static_cast<Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      acc += a(i, j) * (x.second(i) * x.first(j) - x.first(i) * x.second(j));
    }
    d[static_cast<Index>(i)] = acc;
  }
  return d;
}

SimplexPoint apply_w(const CoefficientMatrix& a, const SimplexPoint& x) {
  const LdVector d = linkage_disequilibrium(a, x);
  Vector next = x.coords();
  for (std::size_t i = 0; i < a.loci(); ++i) {
    next[static_cast<Index>(2 * i)] += d[static_cast<Index>(i)];
    next[static_cast<Index>(2 * i + 1)] -= d[static_cast<Index>(i)];
  }
  return SimplexPoint::unchecked(std::move(next));
}

SimplexPoint apply_w_stochastic_form(const CoefficientMatrix& a, const SimplexPoint& x) {
  require_same_loci(a, x);
  const std::size_t m = a.loci();
  Vector next(static_cast<Index>(2 * m));
  for (std::size_t i = 0; i < m; ++i) {
    double keep_first = 0.0;   // sum_j x_{2j} + (1 - a_ij) x_{2j+1}
    double keep_second = 0.0;  // sum_j x_{2j+1} + (1 - a_ij) x_{2j}
    double gain_first = 0.0;   // sum_j a_ij x_{2j}
    double gain_second = 0.0;  // sum_j a_ij x_{2j+1}
    for (std::size_t j = 0; j < m; ++j) {
      const double aij = (j == i) ? 0.0 : a(i, j);
      keep_first += x.first(j) + (1.0 - aij) * x.second(j);
      keep_second += x.second(j) + (1.0 - aij) * x.first(j);
      gain_first += aij * x.first(j);
      gain_second += aij * x.second(j);
    }
    next[static_cast<Index>(2 * i)] = x.first(i) * keep_first + x.second(i) * gain_first;
    next[static_cast<Index>(2 * i + 1)] = x.second(i) * keep_second + x.first(i) * gain_second;
  }
  return SimplexPoint::unchecked(std::move(next));
}

CubicMatrix build_cubic_matrix(const CoefficientMatrix& a) {
  const std::size_t m = a.loci();
  CubicMatrix p(2 * m);

  // Adds coef * x_p x_q to output coordinate k, split symmetrically.
  auto add = [&p](std::size_t pi, std::size_t qi, std::size_t k, double coef) {
    if (pi == qi) {
      p.at(pi, qi, k) += coef;
    } else {
      p.at(pi, qi, k) += 0.5 * coef;
      p.at(qi, pi, k) += 0.5 * coef;
    }
  };

  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t f = 2 * i;
    const std::size_t s = 2 * i + 1;
    for (std::size_t j = 0; j < m; ++j) {
      const double aij = (j == i) ? 0.0 : a(i, j);
      const std::size_t fj = 2 * j;
      const std::size_t sj = 2 * j + 1;
      // first coordinate of locus i
      add(f, fj, f, 1.0);
      if (aij != 1.0) add(f, sj, f, 1.0 - aij);
      if (aij != 0.0) add(s, fj, f, aij);
      // second coordinate of locus i
      add(s, sj, s, 1.0);
      if (aij != 1.0) add(s, fj, s, 1.0 - aij);
      if (aij != 0.0) add(f, sj, s, aij);
    }
  }
  return p;
}

double sup_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace qso
