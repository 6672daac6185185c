#include "qso/harness/random.hpp"

#include <cmath>

namespace qso::harness {

double Rng::exponential() { return -std::log1p(-uniform()); }

std::size_t Rng::index(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform() * static_cast<double>(hi - lo + 1));
}

CoefficientMatrix random_coefficients(Rng& rng, std::size_t loci, double lo, double hi,
                                      bool symmetric) {
  const auto m = static_cast<Eigen::Index>(loci);
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (i == j || (symmetric && j < i)) continue;
      a(i, j) = rng.uniform(lo, hi);
      if (symmetric) a(j, i) = a(i, j);
    }
  }
  return CoefficientMatrix(std::move(a));
}

Vector random_simplex(Rng& rng, std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = rng.exponential();
  return v / v.sum();
}

SimplexPoint random_state(Rng& rng, std::size_t loci) {
  const Vector v = random_simplex(rng, 2 * loci);
  return validate_state(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

}  // namespace qso::harness
