#include "qso/fixed_points.hpp"

#include <algorithm>
#include <cmath>

#include "qso/error.hpp"
#include "qso/tolerances.hpp"

namespace qso {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void orient(Vector& v) {
  for (Index k = 0; k < v.size(); ++k) {
    if (std::abs(v[k]) > 1e-14) {
      if (v[k] < 0) v = -v;
      return;
    }
  }
}

}  // namespace

Matrix build_hc(const CoefficientMatrix& a, const Fiber& fiber) {
  const std::size_t m = fiber.loci();
  if (a.loci() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "coefficients and fiber disagree on m");
  }
  Matrix h(idx(m), idx(m));
  for (std::size_t i = 0; i < m; ++i) {
    double diag = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == i) continue;
      diag += a(i, k) * fiber.c[idx(k)];
      h(idx(i), idx(k)) = -fiber.c[idx(i)] * a(i, k);
    }
    h(idx(i), idx(i)) = diag;
  }
  return h;
}

std::vector<Vector> null_space(const Matrix& h) {
  Eigen::JacobiSVD<Matrix> svd(h, Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const Matrix& v = svd.matrixV();
  const double sigma_max = sigma.size() > 0 ? sigma[0] : 0.0;
  const double cutoff = tol::kRank * sigma_max;

  std::vector<Vector> basis;
  for (Index k = 0; k < v.cols(); ++k) {
    const double s = k < sigma.size() ? sigma[k] : 0.0;
    if (sigma_max == 0.0 || s <= cutoff) {
      Vector col = v.col(k);
      orient(col);
      basis.push_back(std::move(col));
    }
  }
  return basis;
}

FixedPointSet fixed_point_set(const CoefficientMatrix& a, const Fiber& fiber) {
  FixedPointSet out;
  out.h = build_hc(a, fiber);
  out.singular_values = Eigen::JacobiSVD<Matrix>(out.h).singularValues();
  out.null_basis = null_space(out.h);
  out.hc_residual = sup_norm(out.h * fiber.c);
  out.every_point_fixed = (out.h.array() == 0.0).all();
  out.segment_is_complete = out.null_basis.size() == 1;

  // 0 <= t c_i <= c_i for every locus with c_i > 0, and c has at least one.
  out.segment_lo = 0.0;
  out.segment_hi = 1.0;
  out.segment_start = embed(fiber, ReducedState{out.segment_lo * fiber.c}).coords();
  out.segment_end = embed(fiber, ReducedState{out.segment_hi * fiber.c}).coords();
  return out;
}

FixedPointResiduals fixed_point_residuals(const CoefficientMatrix& a, const SimplexPoint& x) {
  const auto [fiber, state] = fiber_of(x);
  return {sup_norm(apply_w(a, x).coords() - x.coords()), sup_norm(build_hc(a, fiber) * state.u)};
}

bool is_fixed_point(const CoefficientMatrix& a, const SimplexPoint& x, double tol) {
  return sup_norm(apply_w(a, x).coords() - x.coords()) <= tol;
}

}  // namespace qso
