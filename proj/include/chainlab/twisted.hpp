#pragma once

#include "chainlab/complex.hpp"
#include "chainlab/graded_poly.hpp"
#include "chainlab/hochschild.hpp"
#include "chainlab/uwindow.hpp"

#include <map>
#include <string>
#include <vector>

namespace chainlab {

/**
 * Weights w_i making the pure powers x_i^{d_i} of W (smallest exponent per
 * variable) all of the same weighted degree; all ones when some variable has
 * no pure power in W.
 */
std::vector<int> filtration_weights(const PolyElement& W);

/**
 * Twisted de Rham complex (Omega^*, -dW + u d) on the even generators of
 * W's ring, restricted to the finite subcomplex spanned by x^a dx_I with
 * wt(a) + wt(I) <= D * max(w) + |I| * s, where s is the weighted degree of W.
 * With unit weights this is |a| + |I| <= D + |I| * deg W.
 */
class TwistedDeRham {
public:
    TwistedDeRham(const PolyElement& W, int D);

    int nvars() const { return n_; }
    int D() const { return D_; }
    int slope() const { return s_; }
    const std::vector<int>& weights() const { return weights_; }
    int dim(int k) const { return static_cast<int>(basis_.at(k).size()); }
    const std::vector<std::pair<Monomial, std::vector<int>>>& basis(int k) const { return basis_.at(k); }

    /// -dW wedge, from degree k to k + 1.
    const SparseMatrix& wedge_part(int k) const { return wedge_.at(k); }
    /// de Rham d, from degree k to k + 1.
    const SparseMatrix& d_part(int k) const { return d_.at(k); }
    UMatrix operator_matrix(int k) const { return UMatrix::linear(wedge_.at(k), d_.at(k)); }

    /// Checks the square of the operator vanishes coefficientwise in u.
    bool squares_to_zero() const;

private:
    int n_;
    int D_;
    std::vector<int> weights_;
    int s_ = 0;
    std::map<int, std::vector<std::pair<Monomial, std::vector<int>>>> basis_;
    std::map<int, SparseMatrix> wedge_;
    std::map<int, SparseMatrix> d_;
};

struct TwistedResult {
    int D = 0;
    std::map<int, int> dims;
    std::map<int, int> dims_next;  ///< at D + 2
    bool stable = false;
    ParityDims parity;
    int total() const { return parity.total(); }
};

/// Cohomology over Q(u), ranks by specialization at sampled points.
std::map<int, int> twisted_dims(const TwistedDeRham& td, int samples = 3, std::uint64_t seed = 12345);
TwistedResult twisted_cohomology(const PolyElement& W, int D, int samples = 3, std::uint64_t seed = 12345);
long long euler_characteristic(const TwistedDeRham& td);

/// (R_D, -W) as a curved algebra, R_D = Q[x]/(deg > D), weight = degree.
CurvedAlgebra curved_from_potential(const PolyElement& W, int D);

/// Forms of possibly different degrees, keyed by degree; zero forms dropped.
using FormSum = std::map<int, KaehlerForm>;

/// (1/n!) f_n df_{n-1} ^ ... ^ df_0 for the chain (f_n, ..., f_0) of monomials of `ring`.
FormSum hkr_map(const TruncatedPolyAlgebra& ring, AlgebraPtr forms, const Chain& c);
FormSum hkr_map(const TruncatedPolyAlgebra& ring, AlgebraPtr forms, const ChainVec& v);

struct HKRReport {
    bool holds = true;
    long long chains_checked = 0;
    int max_length = 0;
    std::string witness;
    std::string which;
};

/**
 * On chains of length <= max_len whose weight plus deg W stays <= D, checks
 *   e(b c) = dW ^ e(c)   and   e(B c) = d e(c)
 * for the curved algebra (R_D, -W).
 */
HKRReport hkr_check(const PolyElement& W, int D, int max_len);

/// One-parameter family W(t) on the x variables; t is a distinguished even generator.
struct PotentialFamily {
    AlgebraPtr ring;  ///< x variables and the parameter
    std::string param;
    PolyElement W;
    std::vector<Rational> grid;

    /// Parse "x^3 - t*x"; every variable other than `param` is a fibre coordinate.
    static PotentialFamily parse(const std::string& expr, const std::string& param, std::vector<Rational> grid,
                                 int trunc);
    /// W(t0) on the fibre coordinates, truncated at D.
    PolyElement at(const Rational& t0, int D) const;
    std::vector<int> fibre_vars() const;
    int param_index() const;
};

/// Laurent polynomial in u with forms as coefficients; exponents confined to [-bound, bound].
struct UForm {
    int bound = 0;
    std::map<int, KaehlerForm> terms;
};

/// The Gauss-Manin operator d_t - u^{-1} d_t(W) ^ (-) and the twisted operator -d_x W ^ (-) + u d_x.
struct GMOperator {
    KaehlerForm dxW;  ///< relative differential of W
    KaehlerForm dtW;  ///< differential of W in the parameter direction
    std::vector<int> fibre;
    int param;
};

GMOperator gm_operator(const PotentialFamily& fam);
/// nabla applied to a form; throws WindowOverflow when u^{-1} leaves the window.
UForm gm_apply(const GMOperator& op, const UForm& w);
UForm twisted_apply(const GMOperator& op, const UForm& w);

struct GMReport {
    bool flat = true;            ///< [A, nabla] = 0 and nabla^2 = 0
    bool commutator_zero = true;
    bool square_zero = true;
    long long forms_checked = 0;
    /// Number of basis forms on which each bracket term is nonzero:
    /// -u^{-1}[dW, d_tW], -[d, d_tW], -[dW, d_t], u[d, d_t].
    std::vector<long long> bracket_nonzero;
    std::string witness;
};

/// Exhaustive check on every basis form x^a t^c dx_I dt^e u^j with degree <= D and |j| < bound.
GMReport gm_flatness_check(const PotentialFamily& fam, int D, int bound = 2);

struct ScanPoint {
    Rational t;
    ParityDims dims;
    bool stable = false;
};

struct FamilyScan {
    std::vector<ScanPoint> points;
    bool constant = false;
    std::string csv() const;
};

FamilyScan family_scan(const PotentialFamily& fam, int D, int samples = 3, std::uint64_t seed = 12345);

} // namespace chainlab
