#pragma once

#include "chainlab/rational.hpp"
#include "chainlab/sparse.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace chainlab {

struct WindowOverflow : std::runtime_error {
    explicit WindowOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Laurent polynomial in u with exponents confined to [-bound, bound].
class UWindowScalar {
public:
    explicit UWindowScalar(int bound = 0) : bound_(bound) {}
    UWindowScalar(int bound, const Rational& c, int exponent = 0);

    int bound() const { return bound_; }
    const std::map<int, Rational>& coefficients() const { return coef_; }
    Rational coefficient(int e) const;
    bool is_zero() const { return coef_.empty(); }

    void set(int exponent, const Rational& c);
    Rational evaluate(const Rational& u) const;

    UWindowScalar operator+(const UWindowScalar& o) const;
    UWindowScalar operator-(const UWindowScalar& o) const;
    UWindowScalar operator*(const UWindowScalar& o) const;
    /// Multiplication by u^k; raises WindowOverflow when leaving the window.
    UWindowScalar shifted(int k) const;

    friend bool operator==(const UWindowScalar& a, const UWindowScalar& b)
    {
        return a.coef_ == b.coef_;
    }

private:
    void check(int e) const;
    int bound_;
    std::map<int, Rational> coef_;
};

/// Matrix whose entries are windowed Laurent polynomials in u.
class UMatrix {
public:
    UMatrix(int rows, int cols, int bound) : rows_(rows), cols_(cols), bound_(bound) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int bound() const { return bound_; }

    void add(int r, int c, const Rational& v, int exponent);
    UWindowScalar at(int r, int c) const;
    const std::map<std::pair<int, int>, UWindowScalar>& entries() const { return entries_; }

    SparseMatrix evaluate(const Rational& u) const;

    /// Build M0 + u * M1.
    static UMatrix linear(const SparseMatrix& m0, const SparseMatrix& m1, int bound = 1);

private:
    int rows_, cols_, bound_;
    std::map<std::pair<int, int>, UWindowScalar> entries_;
};

/// Nonzero random rationals of bounded height, deterministic in the seed.
std::vector<Rational> sample_points(int count, std::uint64_t seed, int height = 997);

/// Rank over Q(u) by specialization at several random points, taking the maximum.
int rank_sampled(const UMatrix& m, int samples = 3, std::uint64_t seed = 12345);

/// Rank over Q(u) by exact fraction-free elimination over Q[u]; meant for small sizes.
int rank_fraction_field(const UMatrix& m);

} // namespace chainlab
