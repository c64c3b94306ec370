#pragma once

#include "chainlab/complex.hpp"
#include "chainlab/finite_algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainlab {

/// Finite-dimensional algebra with an odd derivation d and an even curvature element h.
struct CurvedAlgebra {
    FiniteAlgebra algebra;
    std::vector<SparseVec> d;  ///< d[a] = d(basis a); empty means d = 0
    SparseVec h;

    Rational d_coeff(int a, int b) const;
    /// Leibniz rule, d^2 = [h, -], d(h) = 0, parity of d and h, closed unit.
    void validate() const;
    bool has_d() const;

    nlohmann::json to_json() const;
    /// {"basis":[{"name","parity","weight"}], "mult":[{"a","b","value":{index:coef}}], "d":..., "h":...}
    static CurvedAlgebra from_json(const nlohmann::json& j);
    /// Q[x]/x^{n} with curvature h given on the monomial basis.
    static CurvedAlgebra truncated_line(int n, const SparseVec& h = {});
};

/// A Hochschild chain (f_n, ..., f_0) stored head first; entries are basis indices.
using Chain = std::vector<int>;
using ChainVec = std::map<Chain, Rational>;

void chain_add(ChainVec& v, const Chain& c, const Rational& x);
void chain_axpy(ChainVec& y, const Rational& a, const ChainVec& x);

/// (sum of parities + number of entries - 1) mod 2.
int chain_parity(const CurvedAlgebra& A, const Chain& c);
int chain_weight(const CurvedAlgebra& A, const Chain& c);
std::string chain_str(const CurvedAlgebra& A, const Chain& c);

/**
 * Normalized Hochschild operators of a curved algebra. Chains with the
 * unit in a tail slot are zero; the adjoined unit is identified with the
 * algebra unit (basis 0).
 */
ChainVec hochschild_b0(const CurvedAlgebra& A, const Chain& c);
ChainVec hochschild_b1(const CurvedAlgebra& A, const Chain& c);
ChainVec hochschild_b2(const CurvedAlgebra& A, const Chain& c);
ChainVec hochschild_b(const CurvedAlgebra& A, const Chain& c);
ChainVec connes_B(const CurvedAlgebra& A, const Chain& c);

using ChainOp = ChainVec (*)(const CurvedAlgebra&, const Chain&);
ChainVec apply(ChainOp op, const CurvedAlgebra& A, const ChainVec& v);

/// Every normalized chain with at most `max_len` entries.
std::vector<Chain> enumerate_chains(const CurvedAlgebra& A, int max_len);

/// Chains with at most N_bar entries; the interior holds chains whose images under two operators stay inside.
class HochschildWindow {
public:
    HochschildWindow(const CurvedAlgebra& A, int n_bar);

    const CurvedAlgebra& algebra() const { return *A_; }
    int n_bar() const { return n_bar_; }
    const std::vector<Chain>& chains() const { return chains_; }
    int index(const Chain& c) const;
    bool interior(const Chain& c) const { return static_cast<int>(c.size()) + 2 <= n_bar_; }

    /// Matrix of an operator on the window; image terms leaving the window are dropped.
    SparseMatrix matrix(ChainOp op) const;
    std::vector<int> interior_indices() const;

private:
    const CurvedAlgebra* A_;
    int n_bar_;
    std::vector<Chain> chains_;
    std::map<Chain, int> index_;
};

struct IdentityStatus {
    std::string name;
    bool holds = true;
    long long chains_checked = 0;
    int max_length_checked = 0;
    std::string witness;
    std::string residue;
};

struct MixedIdentityReport {
    bool holds = true;
    std::vector<IdentityStatus> identities;  ///< b^2, B^2, bB + Bb
};

MixedIdentityReport mixed_identity_check(const HochschildWindow& w);

struct HPParams {
    int m = 8;        ///< window bound on weight + e * (power of u)
    int e = 0;        ///< weight of u; 0 picks the weight of h (or 2 when h = 0)
    int lag = 0;      ///< extra depth of the ambient lattice; 0 picks e + 1
    int N = 2;        ///< u-adic depth of the cycle condition
};

struct HPResult {
    HPParams params;
    ParityDims dims;
    ParityDims dims_next;  ///< at m + 2
    bool stable = false;
    long long cells = 0;   ///< size of the largest lattice used
};

/**
 * Periodic cyclic homology dimensions of (chains((u)), b + uB) for a
 * weight-graded curved algebra, computed on finite u-adic lattices.
 */
HPResult hp_dims(const CurvedAlgebra& A, HPParams p);

/// Q[x]/x^{T+1} with curvature -W for W a polynomial in x alone.
CurvedAlgebra curved_line_from_potential(const std::vector<Rational>& w_coeffs, int T);

struct UConnectionReport {
    bool holds = true;
    int witness_power = 0;
    int witness_chain = -1;
};

/**
 * Checks [d/du + A(u), b + uB] = (1/(2u)) (b + uB) on interior chains of the
 * window for A(u) = sum_k u^k a_terms[k] (matrices on the window basis).
 */
UConnectionReport u_connection_check(const HochschildWindow& w, const std::map<int, SparseMatrix>& a_terms);

} // namespace chainlab
