#pragma once

// JSON views of the core types. Matrices are row-major nested arrays,
// complex numbers are [re, im] pairs, and indices are 0-based.

#include <nlohmann/json.hpp>

#include "qso/fixed_points.hpp"
#include "qso/spectral.hpp"

namespace qso {

nlohmann::json vector_to_json(const Vector& v);
nlohmann::json matrix_to_json(const Matrix& m);

/// Throws Error{kScenarioParseError} on shape or type errors.
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const Fiber& fiber);
/// List of 2m levels; level k is the matrix P_{., ., k}.
void to_json(nlohmann::json& j, const CubicMatrix& p);
void to_json(nlohmann::json& j, const ReducedMatrix& b);
void to_json(nlohmann::json& j, const SpectralSummary& s);
void to_json(nlohmann::json& j, const LimitPrediction& p);
void to_json(nlohmann::json& j, const FixedPointSet& f);

}  // namespace qso
