#include "qso/json.hpp"

#include <string>

#include "qso/error.hpp"

namespace qso {

using nlohmann::json;
using Index = Eigen::Index;

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kScenarioParseError, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::kScenarioParseError,
                  "element " + std::to_string(i) + " is not a number");
    }
    v[static_cast<Index>(i)] = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kScenarioParseError, "expected a non-empty array of rows");
  }
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from_json(j[i]);
    if (static_cast<std::size_t>(row.size()) != cols) {
      throw Error(ErrorCode::kScenarioParseError, "ragged matrix at row " + std::to_string(i));
    }
    m.row(static_cast<Index>(i)) = row.transpose();
  }
  return m;
}

void to_json(json& j, const Fiber& fiber) {
  j = json{{"c", vector_to_json(fiber.c)}, {"zero_set", fiber.zero_set}};
}

void to_json(json& j, const CubicMatrix& p) {
  j = json::array();
  for (std::size_t k = 0; k < p.types(); ++k) j.push_back(matrix_to_json(p.level(k)));
}

void to_json(json& j, const ReducedMatrix& b) {
  j = json{{"B", matrix_to_json(b.b)},
           {"fiber", b.fiber},
           {"A", matrix_to_json(b.coefficients.entries())}};
}

void to_json(json& j, const SpectralSummary& s) {
  json eig = json::array();
  for (const auto& lambda : s.eigenvalues) eig.push_back({lambda.real(), lambda.imag()});
  j = json{{"eigenvalues", std::move(eig)},
           {"unit_multiplicity", s.unit_multiplicity},
           {"one_is_simple", s.one_is_simple},
           {"spectral_gap", s.spectral_gap},
           {"w", s.w ? vector_to_json(*s.w) : json(nullptr)}};
}

void to_json(json& j, const LimitPrediction& p) {
  j = json{{"beta", p.beta},
           {"limit_u", vector_to_json(p.limit_u)},
           {"limit_x", vector_to_json(p.limit_x)},
           {"w", vector_to_json(p.w)},
           {"fiber", p.fiber},
           {"kept_loci", p.kept},
           {"spectral_gap", p.spectral_gap}};
}

void to_json(json& j, const FixedPointSet& f) {
  json basis = json::array();
  for (const auto& v : f.null_basis) basis.push_back(vector_to_json(v));
  j = json{{"H", matrix_to_json(f.h)},
           {"null_basis", std::move(basis)},
           {"kernel_dimension", f.null_basis.size()},
           {"singular_values", vector_to_json(f.singular_values)},
           {"hc_residual", f.hc_residual},
           {"segment", {{"t_min", f.segment_lo},
                        {"t_max", f.segment_hi},
                        {"start", vector_to_json(f.segment_start)},
                        {"end", vector_to_json(f.segment_end)},
                        {"complete", f.segment_is_complete}}},
           {"every_point_fixed", f.every_point_fixed}};
}

}  // namespace qso
