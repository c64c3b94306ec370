#pragma once

#include "chainlab/complex.hpp"
#include "chainlab/expr.hpp"
#include "chainlab/graded_poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainlab {

/**
 * Cyclic L-infinity data on a space U of dimension u with products
 * l_k : Sym^k U -> U^dual (2 <= k <= K) and a pairing nu between U^dual and U.
 *
 * products[k][alpha] is l_k evaluated on the multiset of basis vectors with
 * multiplicities alpha (|alpha| = k), as a coefficient vector in the dual basis.
 * nu(phi, e_j) = sum_i phi_i * pairing(i, j).
 */
struct CyclicLInfinity {
    int u = 0;
    SparseMatrix pairing;
    std::map<int, std::map<Monomial, std::vector<Rational>>> products;

    /// nu(l_k(alpha), e_j).
    Rational paired(int k, const Monomial& alpha, int j) const;
    int max_order() const;

    nlohmann::json to_json() const;
    static CyclicLInfinity from_json(const nlohmann::json& j);
};

struct CyclicityDefect {
    int k;
    Monomial alpha;
    int j;
    Monomial other_alpha;
    int other_j;
    Rational value;
    Rational other_value;
};

/// Shapes, nondegenerate pairing and cyclicity; the first defect found, if any.
std::optional<CyclicityDefect> cyclicity_defect(const CyclicLInfinity& data);
void validate(const CyclicLInfinity& data);

/// Random cyclic data with integer entries in [-range, range].
CyclicLInfinity random_cyclic(int u, int K, std::uint64_t seed, int range = 3);

/// Coordinate algebra on U: even generators x1..xu truncated at D.
AlgebraPtr coordinate_algebra(int u, int D, const std::string& prefix = "x");

/// f = sum_k 1/(k+1)! nu(l_k(u,...,u), u).
PolyElement potential_from_cyclic(const CyclicLInfinity& data, AlgebraPtr alg);

/// Components e_j -> sum_k 1/k! nu(l_k(u,...,u), e_j).
std::vector<PolyElement> adjoint_map(const CyclicLInfinity& data, AlgebraPtr alg);

struct LemmaAXReport {
    bool holds = true;
    /// Largest |df_j - l_j| coefficient; zero when the identity holds.
    Rational max_deviation;
    std::optional<int> witness_component;
    std::optional<Monomial> witness_monomial;
    Rational witness_df;
    Rational witness_adjoint;
    bool cyclic = true;
};

LemmaAXReport verify_lemma_AX(const CyclicLInfinity& data, int D);

/// A Koszul complex on a truncated polynomial ring together with the mask of the kept part.
struct KoszulComplex {
    AlgebraPtr ring;
    ChainComplex complex;
    /// For each degree, which basis elements survive in the degree-D quotient.
    std::map<int, std::vector<bool>> keep;
    /// Basis of degree -p: pairs (subset of odd generators, ring basis index).
    std::map<int, std::vector<std::pair<std::vector<int>, int>>> basis;
};

/**
 * The Koszul complex  Lambda(xi_1..xi_n) (x) R  with xi_i |-> images[i],
 * over the ring of `images`, masked to monomials of degree <= D.
 */
KoszulComplex koszul_complex(const std::vector<PolyElement>& images, int D);

struct DcritResult {
    int D = 0;
    std::map<int, int> dims;        ///< degree -> dimension at truncation D
    std::map<int, int> dims_next;   ///< same at D + 2
    bool stable = false;
};

/// Image of the cohomology of the Koszul complex at a deeper truncation in the quotient at D.
std::map<int, int> koszul_cohomology(const std::vector<PolyElement>& images, int D);

/// Lag between the working truncation and the quotient truncation for a potential of this degree.
int truncation_lag(int max_degree);

/// Cohomology of the derived critical locus of f in truncation D, compared with D + 2.
/// The ring of f only fixes the variables; its truncation is ignored.
DcritResult dcrit_cohomology(const PolyElement& f, int D);
/// Same, with the variables of the expression.
DcritResult dcrit_cohomology(const ParsedPoly& f, int D);

/**
 * Normal data for the plus model: spaces W1, W2 and the three families
 *   p1[k][(alpha, p)]    = m_k(alpha; w1_p)           in W2      (|alpha| = k - 1)
 *   p2[k][(alpha, q)]    = m_k(alpha; w2dual_q)       in W1dual  (|alpha| = k - 1)
 *   p3[k][(alpha, q, p)] = m_k(alpha; w2dual_q, w1_p) in Udual   (|alpha| = k - 2)
 */
struct PlusModelData {
    CyclicLInfinity base;
    int w1 = 0;
    int w2 = 0;
    std::map<int, std::map<std::pair<Monomial, int>, std::vector<Rational>>> p1;
    std::map<int, std::map<std::pair<Monomial, int>, std::vector<Rational>>> p2;
    std::map<int, std::map<std::tuple<Monomial, int, int>, std::vector<Rational>>> p3;

    nlohmann::json to_json() const;
    static PlusModelData from_json(const nlohmann::json& j);
};

/// Throws InvariantViolation unless the three families come from one function g.
void validate(const PlusModelData& data);

/// Random consistent plus data: g with integer coefficients, linear in a and b.
PlusModelData random_plus(int u, int w1, int w2, int K, std::uint64_t seed, int range = 2);

/// Ring on x1..xu, a1..a_w1, b1..b_w2 truncated at D.
AlgebraPtr plus_ring(const PlusModelData& data, int D);

/// The function g recovered from the p1 family.
PolyElement plus_function_g(const PlusModelData& data, AlgebraPtr ring);

/// Images of the odd generators (xi_i, zeta_p, eta_q) in the plus model, built from the products.
std::vector<PolyElement> plus_model_images(const PlusModelData& data, AlgebraPtr ring);

struct LemmaFGReport {
    bool holds = true;
    std::map<int, std::map<int, int>> plus_dims;    ///< D -> degree -> dim
    std::map<int, std::map<int, int>> dcrit_dims;   ///< for W = f + g
    std::map<int, std::map<int, int>> product_dims; ///< for W = f * g, informational
    bool differentials_agree = true;
};

LemmaFGReport verify_lemma_fg(const PlusModelData& data, int D);

ParsedPoly to_parsed(const PolyElement& p);

} // namespace chainlab
