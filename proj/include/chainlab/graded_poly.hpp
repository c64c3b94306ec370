#pragma once

#include "chainlab/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainlab {

struct Generator {
    std::string name;
    int degree = 0;
    bool odd = false;
};

/// Exponent vector indexed by generator position.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/**
 * Graded-commutative polynomial algebra on even and odd generators,
 * truncated at total word degree D.
 *
 * Monomials are compared degree-lexicographically, with ties broken by
 * generator names in alphabetical order.
 */
class TruncatedPolyAlgebra {
public:
    TruncatedPolyAlgebra(std::vector<Generator> gens, int trunc);

    static std::shared_ptr<const TruncatedPolyAlgebra> make(std::vector<Generator> gens, int trunc);
    /// Convenience: even generators of degree 0 with the given names.
    static std::shared_ptr<const TruncatedPolyAlgebra> even(const std::vector<std::string>& names, int trunc);

    const std::vector<Generator>& generators() const { return gens_; }
    int ngens() const { return static_cast<int>(gens_.size()); }
    int trunc() const { return trunc_; }
    int index_of(const std::string& name) const;
    bool has(const std::string& name) const;

    /// Canonically ordered monomial basis up to the truncation.
    const std::vector<Monomial>& basis() const { return basis_; }
    int basis_index(const Monomial& m) const;

    bool mono_less(const Monomial& a, const Monomial& b) const;
    bool admissible(const Monomial& m) const;
    int parity(const Monomial& m) const;
    int degree(const Monomial& m) const;

    /// Product of monomials with its Koszul sign; sign 0 means the product vanishes.
    int multiply(const Monomial& a, const Monomial& b, Monomial& out) const;

    nlohmann::json to_json() const;
    friend bool operator==(const TruncatedPolyAlgebra& a, const TruncatedPolyAlgebra& b);

private:
    std::vector<Generator> gens_;
    int trunc_;
    std::vector<int> name_order_;
    std::vector<Monomial> basis_;
    std::map<Monomial, int> index_;
};

using AlgebraPtr = std::shared_ptr<const TruncatedPolyAlgebra>;

std::string monomial_str(const TruncatedPolyAlgebra& alg, const Monomial& m);

/// Every monomial in n variables of total degree at most d, deg-lex ordered.
std::vector<Monomial> monomials_up_to(int nvars, int d);
std::vector<Monomial> monomials_of_degree(int nvars, int d);

struct MonoCompare {
    const TruncatedPolyAlgebra* alg;
    bool operator()(const Monomial& a, const Monomial& b) const { return alg->mono_less(a, b); }
};

class PolyElement {
public:
    using Terms = std::map<Monomial, Rational, MonoCompare>;

    explicit PolyElement(AlgebraPtr alg);
    static PolyElement constant(AlgebraPtr alg, const Rational& c);
    static PolyElement generator(AlgebraPtr alg, const std::string& name);
    static PolyElement monomial(AlgebraPtr alg, const Monomial& m, const Rational& c = Rational(1));

    const AlgebraPtr& algebra() const { return alg_; }
    const Terms& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const;
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * m, silently dropping monomials beyond the truncation.
    void add_term(const Monomial& m, const Rational& c);

    PolyElement operator+(const PolyElement& o) const;
    PolyElement operator-(const PolyElement& o) const;
    PolyElement operator-() const;
    PolyElement operator*(const PolyElement& o) const;
    PolyElement scaled(const Rational& c) const;

    /// Lowest and highest total degree of a nonzero term (-1 for zero).
    int min_degree() const;
    int max_degree() const;
    PolyElement homogeneous_part(int d) const;
    /// Parity when homogeneous; throws otherwise.
    int parity() const;

    std::string str() const;
    nlohmann::json to_json() const;

    friend bool operator==(const PolyElement& a, const PolyElement& b);
    friend bool operator!=(const PolyElement& a, const PolyElement& b) { return !(a == b); }

private:
    void check_same(const PolyElement& o) const;
    AlgebraPtr alg_;
    Terms terms_;
};

PolyElement multiply(const PolyElement& a, const PolyElement& b);
PolyElement partial_derivative(const PolyElement& a, const std::string& gen);
PolyElement partial_derivative(const PolyElement& a, int gen);
/// Reinterpret a in another algebra with the same generators (truncating or extending).
PolyElement change_truncation(const PolyElement& a, AlgebraPtr target);
/// Substitute a rational value for one even generator, landing in `target`.
PolyElement specialize(const PolyElement& a, const std::string& gen, const Rational& value, AlgebraPtr target);
/// Map generators by name into a larger algebra.
PolyElement embed(const PolyElement& a, AlgebraPtr target);

/// binomial(k + n - 1, n - 1): dimension of Sym^k of an n-dimensional space.
long long sym_basis_dim(int n, int k);
long long binomial(long long n, long long k);

/**
 * Kähler form on the even generators of an algebra: a sum of terms
 * c * x^a dx_{i1} ^ ... ^ dx_{ik} with i1 < ... < ik.
 */
class KaehlerForm {
public:
    using Key = std::pair<Monomial, std::vector<int>>;

    KaehlerForm(AlgebraPtr alg, int degree);
    static KaehlerForm function(const PolyElement& f);
    static KaehlerForm differential(AlgebraPtr alg, const std::string& gen);

    const AlgebraPtr& algebra() const { return alg_; }
    int degree() const { return degree_; }
    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, std::vector<int> subset, const Rational& c);

    KaehlerForm operator+(const KaehlerForm& o) const;
    KaehlerForm operator-(const KaehlerForm& o) const;
    KaehlerForm scaled(const Rational& c) const;
    KaehlerForm wedge(const KaehlerForm& o) const;
    KaehlerForm times(const PolyElement& f) const;

    std::string str() const;
    friend bool operator==(const KaehlerForm& a, const KaehlerForm& b);

private:
    AlgebraPtr alg_;
    int degree_;
    std::map<Key, Rational> terms_;
};

KaehlerForm de_rham_d(const KaehlerForm& w);

/// Sign of sorting j into the increasing list s (0 if already present); result in out.
int insert_sorted(const std::vector<int>& s, int j, std::vector<int>& out);
/// Sign of concatenating two increasing lists and sorting (0 on overlap).
int merge_sign(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out);

AlgebraPtr algebra_from_json(const nlohmann::json& j);
PolyElement element_from_json(AlgebraPtr alg, const nlohmann::json& j);

} // namespace chainlab
