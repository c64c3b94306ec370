#pragma once

#include "chainlab/complex.hpp"
#include "chainlab/graded_poly.hpp"

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainlab {

using PolyMatrix = std::vector<std::vector<PolyElement>>;

/// Zero matrix of the given shape over a ring.
PolyMatrix poly_matrix(AlgebraPtr ring, int rows, int cols);
PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b, AlgebraPtr ring, int inner);

/**
 * Matrix factorization (E0, E1, d0, d1) of f over a truncated polynomial ring:
 * d0 : E0 -> E1 is r1 x r0 and d1 : E1 -> E0 is r0 x r1.
 */
struct MatrixFactorization {
    AlgebraPtr ring;
    PolyElement f;
    int r0 = 0;
    int r1 = 0;
    PolyMatrix d0;
    PolyMatrix d1;

    MatrixFactorization(AlgebraPtr ring, PolyElement f, int r0, int r1, PolyMatrix d0, PolyMatrix d1);

    nlohmann::json to_json() const;
    static MatrixFactorization from_json(const nlohmann::json& j);
};

struct MFReport {
    bool ok = true;
    /// "d1*d0" or "d0*d1", with the first failing entry.
    std::string where;
    int row = -1;
    int col = -1;
    std::string expected;
    std::string actual;
};

MFReport mf_validate(const MatrixFactorization& m);

/// (E1, E0, -d1, -d0).
MatrixFactorization mf_shift(const MatrixFactorization& m);
MatrixFactorization mf_zero(AlgebraPtr ring, const PolyElement& f);
MatrixFactorization mf_direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);
/// Tensor product over disjoint variable sets; the potential is the sum.
MatrixFactorization mf_tensor(const MatrixFactorization& a, const MatrixFactorization& b);
/// Same object, ring truncation changed.
MatrixFactorization mf_retruncate(const MatrixFactorization& m, int trunc);

/// The 2-periodic hom complex with h0(phi) = l phi - phi d and h1(psi) = l psi + psi d.
struct MFHomComplex {
    PeriodicComplex complex;
    std::vector<bool> keep_even;
    std::vector<bool> keep_odd;
};

/// Hom complex over the ring truncated at `trunc`, masked to entries of degree <= D.
MFHomComplex mf_hom_complex(const MatrixFactorization& a, const MatrixFactorization& b, int trunc, int D);

struct MFHomResult {
    int D = 0;
    ParityDims dims;
    ParityDims dims_next;
    bool stable = false;
};

MFHomResult mf_hom_cohomology(const MatrixFactorization& a, const MatrixFactorization& b, int D);

} // namespace chainlab
