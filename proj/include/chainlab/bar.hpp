#pragma once

#include "chainlab/complex.hpp"
#include "chainlab/finite_algebra.hpp"

#include <map>
#include <optional>
#include <vector>

namespace chainlab {

/// Right module M, algebra A, left module N; A is augmented by its basis.
struct AugmentedAlgebraModulePair {
    FiniteAlgebra algebra;
    FiniteModule right;  ///< M
    FiniteModule left;   ///< N
    /// When set, only chains of total weight <= cutoff are kept (requires a weight-graded setup).
    std::optional<int> weight_cutoff;

    void validate() const;
};

struct BarChain {
    int m;
    std::vector<int> bars;  ///< non-unit basis indices of A
    int n;
    int weight;
};

/**
 * Normalized bar complex  M (x) Abar^{(x)k} (x) N  for k <= window,
 * placed in cohomological degree -k.
 */
class BarComplex {
public:
    BarComplex(const AugmentedAlgebraModulePair& p, int window);

    const ChainComplex& complex() const { return complex_; }
    int window() const { return window_; }
    const std::vector<BarChain>& chains(int length) const { return chains_.at(length); }
    /// Index of a chain within its length, or -1 when outside the window/cutoff.
    int index(const BarChain& c) const;
    int index(int m, const std::vector<int>& bars, int n) const;

    /// Boundary of a single chain as a sparse vector in length - 1.
    SparseVec boundary(int length, int idx) const;

private:
    const AugmentedAlgebraModulePair* pair_;
    int window_;
    std::vector<std::vector<BarChain>> chains_;
    std::vector<std::map<std::tuple<int, std::vector<int>, int>, int>> lookup_;
    ChainComplex complex_;
};

/**
 * Decreasing filtration of the bar complex by bar length:
 * F^p is spanned by chains of length <= -p, for p = -window, ..., 1 (F^1 = 0).
 * A chain of length k sits at (p, q) = (-k, 0).
 */
FilteredComplex bar_length_filtration(const BarComplex& bar);

struct TorResult {
    std::map<int, int> dims;
    std::map<int, bool> certified;
};

TorResult bar_tor_dims(const AugmentedAlgebraModulePair& p, int window = 6);

/// dim M (x)_A N from the direct presentation M (x) N / (ma (x) n - m (x) an).
int tensor_over_algebra_dim(const AugmentedAlgebraModulePair& p);

/// Basis of the domain of the antisymmetrization map.
struct AntisymDomain {
    std::vector<int> annihilators;  ///< basis elements of Abar acting by zero on M and N
    std::vector<std::tuple<int, std::vector<int>, int>> basis;  ///< (m, increasing subset, n)
};

struct AntisymMap {
    AntisymDomain domain;
    SparseMatrix matrix;  ///< columns: domain basis, rows: bar chains of length n
};

/**
 * epsilon_n : M (x) Lambda^n(J) (x) N -> bar chains of length n,
 * m (x) a1 ^ ... ^ an (x) n'  |->  sum_sigma sign(sigma) m[a_sigma1|...|a_sigman]n',
 * where J is spanned by the basis elements of Abar acting by zero on M and N.
 */
AntisymMap antisymmetrization(const AugmentedAlgebraModulePair& p, const BarComplex& bar, int n);

} // namespace chainlab
