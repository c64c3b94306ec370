#include "chainlab/dcrit.hpp"
#include "chainlab/expr.hpp"

#include <doctest.h>

#include <functional>

using namespace chainlab;

namespace {

/// Sum over ordered tuples (i_1..i_k) of x_{i_1}..x_{i_k} * nu(l_k(e_{i_1},..,e_{i_k}), e_j) / k!.
PolyElement brute_adjoint(const CyclicLInfinity& d, AlgebraPtr alg, int j)
{
    PolyElement out(alg);
    for (const auto& [k, table] : d.products) {
        std::vector<int> tuple(k, 0);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == k) {
                Monomial alpha(d.u, 0);
                for (int i : tuple)
                    alpha[i] += 1;
                if (table.count(alpha))
                    out.add_term(alpha, d.paired(k, alpha, j) / factorial(k));
                return;
            }
            for (int i = 0; i < d.u; ++i) {
                tuple[pos] = i;
                rec(pos + 1);
            }
        };
        rec(0);
    }
    return out;
}

PolyElement brute_potential(const CyclicLInfinity& d, AlgebraPtr alg)
{
    PolyElement f(alg);
    for (int j = 0; j < d.u; ++j) {
        Monomial e(d.u, 0);
        e[j] = 1;
        PolyElement xj = PolyElement::monomial(alg, e);
        PolyElement a = brute_adjoint(d, alg, j);
        // nu(l_k(u..u), u) / (k+1)! = sum_j x_j * [k! * adjoint_j / (k+1)!]
        for (const auto& [m, c] : a.terms()) {
            int k = total_degree(m);
            f = f + (xj * PolyElement::monomial(alg, m, c)).scaled(Rational(1, k + 1));
        }
    }
    return f;
}

std::map<int, int> nonzero(const std::map<int, int>& m)
{
    std::map<int, int> out;
    for (const auto& [k, v] : m)
        if (v != 0)
            out[k] = v;
    return out;
}

int milnor_brieskorn(int a, int b)
{
    return (a - 1) * (b - 1);
}

} // namespace

TEST_CASE("random cyclic data is cyclic and valid")
{
    for (std::uint64_t s = 1; s <= 30; ++s) {
        auto d = random_cyclic(1 + static_cast<int>(s % 3), 2 + static_cast<int>(s % 3), s);
        CHECK_NOTHROW(validate(d));
        CHECK_FALSE(cyclicity_defect(d).has_value());
        auto j = d.to_json();
        auto back = CyclicLInfinity::from_json(j);
        CHECK(back.to_json() == j);
    }
}

TEST_CASE("potential and adjoint map agree with brute-force tuple sums")
{
    for (std::uint64_t s = 1; s <= 25; ++s) {
        auto d = random_cyclic(1 + static_cast<int>(s % 3), 2 + static_cast<int>((s / 3) % 3), s);
        auto alg = coordinate_algebra(d.u, 8);
        CHECK(potential_from_cyclic(d, alg) == brute_potential(d, alg));
        auto adj = adjoint_map(d, alg);
        for (int j = 0; j < d.u; ++j)
            CHECK(adj[j] == brute_adjoint(d, alg, j));
    }
}

TEST_CASE("one-dimensional potential has the expected closed form")
{
    // U = Q, pairing 1, l_2(e,e) = 6 e^dual: f = 6 x^3 / 3! = x^3, df = 3 x^2 = l_2 / 2!
    CyclicLInfinity d;
    d.u = 1;
    d.pairing = SparseMatrix::identity(1);
    d.products[2][{2}] = {Rational(6)};
    auto alg = coordinate_algebra(1, 6);
    CHECK(potential_from_cyclic(d, alg) == parse_polynomial("x1^3", alg));
    CHECK(adjoint_map(d, alg)[0] == parse_polynomial("3*x1^2", alg));
}

TEST_CASE("gradient identity holds on random cyclic instances")
{
    int count = 0;
    for (std::uint64_t s = 100; s < 160; ++s) {
        auto d = random_cyclic(1 + static_cast<int>(s % 3), 2 + static_cast<int>((s / 3) % 3), s);
        auto r = verify_lemma_AX(d, 8);
        CHECK(r.holds);
        CHECK(r.cyclic);
        CHECK(r.max_deviation.is_zero());
        count += r.holds;
    }
    CHECK(count == 60);
}

TEST_CASE("broken cyclicity fails with a located witness")
{
    auto d = random_cyclic(2, 3, 42);
    REQUIRE_FALSE(d.products[2].empty());
    auto& entry = d.products[2].begin()->second;
    entry[0] = entry[0] + Rational(1);
    CHECK(cyclicity_defect(d).has_value());
    auto r = verify_lemma_AX(d, 8);
    CHECK_FALSE(r.holds);
    CHECK_FALSE(r.cyclic);
    CHECK(r.witness_component.has_value());
    CHECK(r.witness_monomial.has_value());
    CHECK(r.witness_df != r.witness_adjoint);
    CHECK(r.max_deviation > Rational(0));
}

TEST_CASE("degenerate pairings are rejected")
{
    auto d = random_cyclic(2, 2, 1);
    d.pairing = SparseMatrix::from_triplets(2, 2, {{0, 0, Rational(1)}, {0, 1, Rational(1)}});
    CHECK_THROWS(validate(d));
}

TEST_CASE("derived critical locus matches Milnor numbers")
{
    auto check = [](const std::string& f, int expected) {
        auto r = dcrit_cohomology(parse_polynomial(f), 8);
        CHECK(r.stable);
        CHECK(r.dims.at(0) == expected);
        for (const auto& [k, v] : r.dims)
            if (k != 0)
                CHECK(v == 0);
    };
    check("x^3/3", 2);
    check("(x^2 + y^2)/2", 1);
    check("x^3 + y^3", milnor_brieskorn(3, 3));
    check("x^4 + y^3", milnor_brieskorn(4, 3));
    check("x^2 + y^2 + z^2", 1);
}

TEST_CASE("non-isolated critical loci are flagged unstable")
{
    CHECK_FALSE(dcrit_cohomology(parse_polynomial("x^2*y"), 6).stable);
    CHECK_THROWS(dcrit_cohomology(parse_polynomial("x"), 6));
}

TEST_CASE("truncation lag")
{
    CHECK(truncation_lag(2) == 2);
    CHECK(truncation_lag(3) == 3);
    CHECK(truncation_lag(1) == 2);
}

TEST_CASE("plus model agrees with the sum potential")
{
    auto one = random_plus(1, 1, 1, 3, 7);
    CHECK_NOTHROW(validate(one));
    auto r = verify_lemma_fg(one, 4);
    CHECK(r.holds);
    CHECK(r.differentials_agree);
    CHECK(r.plus_dims == r.dcrit_dims);
    CHECK(r.plus_dims.size() == 2);
    for (std::uint64_t s = 1; s <= 6; ++s) {
        auto d = random_plus(1 + static_cast<int>(s % 2), 1, 1, 3, s);
        auto rr = verify_lemma_fg(d, 4);
        CHECK(rr.holds);
        CHECK(rr.plus_dims == rr.dcrit_dims);
    }
}

TEST_CASE("inconsistent plus data is rejected")
{
    auto d = random_plus(1, 1, 1, 3, 7);
    REQUIRE_FALSE(d.p1.empty());
    auto& v = d.p1.begin()->second.begin()->second;
    v[0] = v[0] + Rational(1);
    CHECK_THROWS(validate(d));
    auto j = random_plus(2, 1, 1, 3, 3).to_json();
    CHECK(PlusModelData::from_json(j).to_json() == j);
}

TEST_CASE("adding a nondegenerate quadratic form in fresh variables keeps the dimensions")
{
    for (const char* f : {"x^3/3", "x^4 + y^3", "x^2*y + y^4"}) {
        auto base = dcrit_cohomology(parse_polynomial(f), 7);
        auto one = dcrit_cohomology(parse_polynomial(std::string(f) + " + z^2/2"), 7);
        auto two = dcrit_cohomology(parse_polynomial(std::string(f) + " + z^2 + z*w + 2*w^2"), 7);
        CAPTURE(f);
        CHECK(one.stable == base.stable);
        if (base.stable) {
            CHECK(nonzero(one.dims) == nonzero(base.dims));
            CHECK(nonzero(two.dims) == nonzero(base.dims));
        }
    }
}
