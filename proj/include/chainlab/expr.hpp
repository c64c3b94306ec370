#pragma once

#include "chainlab/graded_poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace chainlab {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A polynomial with named commuting variables, independent of any algebra.
struct ParsedPoly {
    std::vector<std::string> vars;  ///< sorted
    std::map<Monomial, Rational> terms;
};

/**
 * Parse a polynomial expression.
 *
 * Grammar: sums and differences of products; factors are rationals
 * (like 3 or 3/2), identifiers, parenthesized expressions, optionally
 * raised to a nonnegative integer power with '^'. Division is allowed
 * only by nonzero constants.
 */
ParsedPoly parse_polynomial(const std::string& text);

/// Parse into a given algebra; every variable must be an even generator.
PolyElement parse_polynomial(const std::string& text, AlgebraPtr alg);

} // namespace chainlab
