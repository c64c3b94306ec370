#pragma once

#include "chainlab/sparse.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

/// Raised when a structural identity (d^2 = 0, closure, ...) fails.
struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Bounded cochain complex  C^lo -> ... -> C^hi  over Q.
 *
 * diff(n) is the matrix of d: C^n -> C^{n+1} (rows index C^{n+1}).
 * The constructor rejects anything with d^2 != 0.
 */
class ChainComplex {
public:
    ChainComplex() = default;
    ChainComplex(std::map<int, int> dims, std::map<int, SparseMatrix> diffs);

    int lo() const;
    int hi() const;
    int dim(int n) const;
    const std::map<int, int>& dims() const { return dims_; }
    /// Differential out of degree n (a zero matrix when absent).
    SparseMatrix diff(int n) const;
    bool has_diff(int n) const { return diffs_.count(n) > 0; }

private:
    std::map<int, int> dims_;
    std::map<int, SparseMatrix> diffs_;
};

std::map<int, int> cohomology_dims(const ChainComplex& c);

/// Euler characteristic of the underlying graded space.
long long euler_characteristic(const ChainComplex& c);
long long euler_characteristic(const std::map<int, int>& dims);

/// Mapping cone of f: A -> B, degreewise A^{n+1} (+) B^n.
ChainComplex cone(const ChainComplex& a, const ChainComplex& b, const std::map<int, SparseMatrix>& f);
/// Tensor product with Koszul signs.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);

/**
 * Image of H(C) -> H(C/K) where the basis vectors flagged false in `keep`
 * span a subcomplex K. Computed from ranks only.
 */
std::map<int, int> persistent_image_dims(const ChainComplex& c, const std::map<int, std::vector<bool>>& keep);

/// Z/2-graded complex  E <-> O  with d0: E -> O and d1: O -> E.
struct PeriodicComplex {
    int dim_even = 0;
    int dim_odd = 0;
    SparseMatrix d0;
    SparseMatrix d1;

    void validate() const;
};

struct ParityDims {
    int even = 0;
    int odd = 0;
    int total() const { return even + odd; }
    friend bool operator==(const ParityDims& a, const ParityDims& b) { return a.even == b.even && a.odd == b.odd; }
    friend bool operator!=(const ParityDims& a, const ParityDims& b) { return !(a == b); }
};

ParityDims cohomology_dims(const PeriodicComplex& c);
ParityDims persistent_image_dims(const PeriodicComplex& c, const std::vector<bool>& keep_even,
                                 const std::vector<bool>& keep_odd);

/// A linear subspace of Q^n, kept as a reduced spanning set.
class Subspace {
public:
    explicit Subspace(int ambient = 0) : ambient_(ambient) {}
    Subspace(int ambient, const std::vector<SparseVec>& spanning);
    static Subspace whole(int ambient);

    int ambient() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<SparseVec>& basis() const { return basis_; }
    bool contains(const SparseVec& v) const;
    bool contains(const Subspace& o) const;

    Subspace operator+(const Subspace& o) const;
    Subspace intersect(const Subspace& o) const;
    Subspace image(const SparseMatrix& m) const;
    /// {x in *this : m x in target}
    Subspace preimage_within(const SparseMatrix& m, const Subspace& target) const;

private:
    int ambient_;
    std::vector<SparseVec> basis_;
};

/**
 * Decreasing filtration F^0 = C >= F^1 >= ... >= F^m = 0 of a bounded
 * complex, each level given by spanning vectors per degree.
 */
class FilteredComplex {
public:
    /// levels[p][n] spans F^p in degree n; levels.front() should be all of C.
    FilteredComplex(ChainComplex ambient, std::vector<std::map<int, std::vector<SparseVec>>> levels,
                    int first_index = 0);

    const ChainComplex& ambient() const { return ambient_; }
    int first_index() const { return first_; }
    int last_index() const { return first_ + static_cast<int>(levels_.size()) - 1; }
    /// F^p in degree n; F^p = C for p below range and 0 above.
    Subspace level(int p, int n) const;

private:
    ChainComplex ambient_;
    std::vector<std::map<int, Subspace>> levels_;
    int first_;
};

struct SpectralEntry {
    int p;
    int q;
    int dim;
};

struct SpectralDifferential {
    int p;
    int q;
    int rank;  ///< rank of d_r : E_r^{p,q} -> E_r^{p+r,q-r+1}
};

struct SpectralPage {
    int r = 0;
    std::vector<SpectralEntry> entries;
    std::vector<SpectralDifferential> differentials;
    bool converged = false;

    int at(int p, int q) const;
    int total(int n) const;
};

/// Pages E_0 ... E_{r_max}; the last page also stands in for E_infinity when converged.
std::vector<SpectralPage> spectral_sequence(const FilteredComplex& fc, int r_max);

/// dim F^p H^n / F^{p+1} H^n computed directly from the filtered complex.
std::map<std::pair<int, int>, int> associated_graded_cohomology(const FilteredComplex& fc);

} // namespace chainlab
