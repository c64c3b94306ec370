#pragma once

#include "chainlab/rational.hpp"
#include "chainlab/sparse.hpp"

#include <vector>

#include <json.hpp>

namespace chainlab {

/// Accepts integers or strings like "-3/4".
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& r);

std::vector<Rational> rational_vector_from_json(const nlohmann::json& j);
nlohmann::json rational_vector_to_json(const std::vector<Rational>& v);

/// Dense row-major array of arrays.
SparseMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols);
nlohmann::json matrix_to_json(const SparseMatrix& m);

} // namespace chainlab
