#include "chainlab/json_util.hpp"

#include <stdexcept>

namespace chainlab {

Rational rational_from_json(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a rational string, got " + j.dump());
}

nlohmann::json rational_to_json(const Rational& r)
{
    return r.str();
}

std::vector<Rational> rational_vector_from_json(const nlohmann::json& j)
{
    std::vector<Rational> v;
    for (const auto& x : j)
        v.push_back(rational_from_json(x));
    return v;
}

nlohmann::json rational_vector_to_json(const std::vector<Rational>& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v)
        a.push_back(rational_to_json(x));
    return a;
}

SparseMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols)
{
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument("matrix: expected " + std::to_string(rows) + " rows");
    std::vector<Triplet> t;
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            throw std::invalid_argument("matrix: expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) {
            Rational v = rational_from_json(j[r][c]);
            if (!v.is_zero())
                t.push_back({r, c, v});
        }
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

nlohmann::json matrix_to_json(const SparseMatrix& m)
{
    nlohmann::json a = nlohmann::json::array();
    for (int r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back(rational_to_json(m.at(r, c)));
        a.push_back(row);
    }
    return a;
}

} // namespace chainlab
