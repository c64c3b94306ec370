#pragma once

#include "chainlab/graded_poly.hpp"
#include "chainlab/sparse.hpp"

#include <string>
#include <vector>

namespace chainlab {

/**
 * Finite-dimensional unital Z/2-graded algebra given by structure constants.
 *
 * Basis element 0 is the unit. The remaining basis elements span a
 * complement of the unit line; this is the "bar" part used by normalized
 * bar and Hochschild complexes. Each basis element carries a parity and a
 * nonnegative weight.
 */
struct FiniteAlgebra {
    int dim = 0;
    std::vector<int> parity;
    std::vector<int> weight;
    std::vector<std::string> names;
    /// mult[a * dim + b] = a * b as a sparse vector.
    std::vector<SparseVec> mult;

    const SparseVec& product(int a, int b) const { return mult[a * dim + b]; }

    /// Unit, associativity and parity compatibility, checked on all basis triples.
    void validate() const;
    bool is_graded_commutative() const;
    /// Structure constants add weights exactly.
    bool is_weight_graded() const;
    bool weights_nondecreasing() const;

    /// The algebra Q[x1..xn]/(deg > D) on even generators, with weight = degree.
    static FiniteAlgebra from_truncated(const TruncatedPolyAlgebra& alg);
    /// Q[x]/x^{n}.
    static FiniteAlgebra truncated_line(int n);
    static FiniteAlgebra ground_field();
};

/// Finite-dimensional module over a FiniteAlgebra given by action matrices.
struct FiniteModule {
    int dim = 0;
    std::vector<int> weight;
    std::vector<std::string> names;
    /// act[a] is the matrix of the action of basis element a (acting on column vectors).
    std::vector<SparseMatrix> act;

    /// right = true checks m(ab) = (ma)b, otherwise (ab)m = a(bm).
    void validate(const FiniteAlgebra& a, bool right) const;

    /// Q with every non-unit basis element acting by zero.
    static FiniteModule augmentation(const FiniteAlgebra& a);
    /// The algebra as a module over itself.
    static FiniteModule regular(const FiniteAlgebra& a);
    /// A / (listed generators) for an algebra built by from_truncated.
    static FiniteModule monomial_quotient(const FiniteAlgebra& a, const TruncatedPolyAlgebra& alg,
                                          const std::vector<std::string>& killed);
};

} // namespace chainlab
