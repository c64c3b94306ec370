#pragma once

#include "chainlab/graded_poly.hpp"
#include "chainlab/sparse.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chainlab {

/// H^q(P^n, O(p)) from the binomial formulas.
std::map<int, long long> line_bundle_cohomology(int n, int p);

/**
 * Z = {q = 0} inside the hyperplane H = {h = 0} of P^n. The hyperplane is
 * h = x_n, so H is P^{n-1} with coordinates x_0 .. x_{n-1} and q is a
 * homogeneous polynomial of degree `q_degree` in those coordinates.
 */
struct ProjectiveSetup {
    int n = 4;
    int q_degree = 5;
    std::uint64_t seed = 1;
    int coefficient_range = 9;
    PolyElement h;  ///< in the coordinates of P^n
    PolyElement q;  ///< in the coordinates of H
    std::vector<std::string> log;  ///< reseed events

    /// Draws q from the seed; reseeds until the multiplication maps up to degree `probe` have maximal rank.
    static ProjectiveSetup generic(int n, std::uint64_t seed, int q_degree = 5, int probe = 11);
};

/// Multiplication by q from degree a to degree a + deg q, on monomials of exact degree.
SparseMatrix multiplication_matrix(const PolyElement& q, int nvars, int a);

struct TwistCohomology {
    int p = 0;
    std::map<int, long long> dims;
    /// Ranks of H^i(O_H(p - deg q)) -> H^i(O_H(p)) for the two nonvanishing i.
    long long rank_h0 = 0;
    long long rank_top = 0;
    bool euler_conserved = false;
};

/// H^q(H, O_Z(p)) through the long exact sequence of 0 -> O_H(p - deg q) -> O_H(p) -> O_Z(p) -> 0.
TwistCohomology ci_twist_cohomology(const ProjectiveSetup& s, int p);

struct ExtTable {
    std::map<std::pair<int, int>, long long> e2;
    std::vector<long long> ext;
    std::vector<TwistCohomology> twists;
    bool degenerate = false;  ///< no d_r (r >= 2) joins two nonzero slots
    bool e1_differentials_zero = false;

    nlohmann::json to_json() const;
    std::string grid() const;
};

/**
 * E_2 of the local-to-global sequence for Ext(O_Z, O_Z) built from the
 * Koszul resolution 0 -> O(-deg q - 1) -> O(-deg q) + O(-1) -> O -> O_Z.
 * Throws InvariantViolation on a nonzero slot outside `expected` when given.
 */
ExtTable ext_table(const ProjectiveSetup& s,
                   const std::vector<std::pair<int, int>>& expected = {{0, 0}, {1, 0}, {2, 0}, {0, 2}, {1, 2}});

} // namespace chainlab
