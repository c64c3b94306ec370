#include "chainlab/expr.hpp"
#include "chainlab/twisted.hpp"

#include <doctest.h>

#include <random>

using namespace chainlab;

namespace {

PolyElement potential(const std::string& text, int trunc)
{
    ParsedPoly p = parse_polynomial(text);
    return parse_polynomial(text, TruncatedPolyAlgebra::even(p.vars, trunc));
}

/// dim Q[x_1..x_n]/(x_i^{a_i - 1}) for sum x_i^{a_i}.
int brieskorn_pham(const std::vector<int>& a)
{
    int mu = 1;
    for (int e : a)
        mu *= e - 1;
    return mu;
}

std::string random_cubic_family(std::mt19937_64& rng, int nvars)
{
    const char* names[] = {"x", "y"};
    auto coef = [&]() { return std::to_string(1 + static_cast<int>(rng() % 3)); };
    std::string w;
    for (int i = 0; i < nvars; ++i)
        w += (i ? " + " : "") + coef() + "*" + names[i] + "^3";
    if (nvars == 2 && rng() % 2)
        w += " + " + coef() + "*x*y";
    for (int i = 0; i < nvars; ++i)
        w += " - " + coef() + "*t*" + names[i];
    if (rng() % 2)
        w += " + t^2*" + std::string(names[0]);
    return w;
}

} // namespace

TEST_CASE("filtration weights balance the pure powers")
{
    CHECK(filtration_weights(potential("x^3 + y^3", 6)) == std::vector<int>{1, 1});
    CHECK(filtration_weights(potential("x^4 + y^3", 6)) == std::vector<int>{3, 4});
    CHECK(filtration_weights(potential("x^2*y + y^3", 6)) == std::vector<int>{1, 1});
}

TEST_CASE("twisted complex squares to zero")
{
    for (const char* w : {"x^2", "x^3", "x^3 + y^3", "x^4 + y^3", "x^2*y + y^4", "x^3 - x + y^2"}) {
        TwistedDeRham td(potential(w, 8), 4);
        CHECK(td.squares_to_zero());
    }
}

TEST_CASE("twisted de Rham cohomology in one variable")
{
    auto x2 = twisted_cohomology(potential("x^2", 10), 6);
    CHECK(x2.stable);
    CHECK(x2.parity == ParityDims{0, 1});
    auto x3 = twisted_cohomology(potential("x^3", 10), 6);
    CHECK(x3.stable);
    CHECK(x3.parity == ParityDims{0, 2});
    auto morse = twisted_cohomology(potential("x^3 - x", 10), 6);
    CHECK(morse.stable);
    CHECK(morse.total() == 2);
}

TEST_CASE("total dimension equals the Milnor number and sits in top degree")
{
    std::vector<std::vector<int>> exps{{2, 2}, {3, 3}, {4, 3}, {2, 4}, {3, 2}};
    for (const auto& a : exps) {
        std::string w = "x^" + std::to_string(a[0]) + " + y^" + std::to_string(a[1]);
        CAPTURE(w);
        auto r = twisted_cohomology(potential(w, 10), 5);
        CHECK(r.stable);
        CHECK(r.dims.at(2) == brieskorn_pham(a));
        CHECK(r.dims.at(0) == 0);
        CHECK(r.dims.at(1) == 0);
        CHECK(r.parity.even == brieskorn_pham(a));
        TwistedDeRham td(potential(w, 10), 5);
        CHECK(euler_characteristic(td) == brieskorn_pham(a));
    }
}

TEST_CASE("sampled ranks do not depend on the seed")
{
    TwistedDeRham td(potential("x^4 + y^3", 10), 4);
    CHECK(twisted_dims(td, 3, 1) == twisted_dims(td, 3, 99));
    CHECK(twisted_dims(td, 1, 5) == twisted_dims(td, 4, 5));
}

TEST_CASE("HKR map on single chains")
{
    auto ring = TruncatedPolyAlgebra::even({"x", "y"}, 4);
    int x = ring->basis_index({1, 0});
    int y = ring->basis_index({0, 1});
    int one = ring->basis_index({0, 0});
    FormSum e = hkr_map(*ring, ring, Chain{one, x, y});
    REQUIRE(e.count(2));
    KaehlerForm want(ring, 2);
    want.add_term({0, 0}, {0, 1}, Rational(1, 2));
    CHECK(e.at(2) == want);
    CHECK(hkr_map(*ring, ring, Chain{one, x, x}).empty());
    CHECK(hkr_map(*ring, ring, Chain{one, x, y, x}).empty());
}

TEST_CASE("HKR intertwines b with dW and B with d")
{
    for (const char* w : {"x^2", "x^3", "x^2 + y^2"}) {
        CAPTURE(w);
        auto r = hkr_check(potential(w, 8), 6, 4);
        CHECK(r.holds);
        CHECK(r.max_length == 4);
        CHECK(r.chains_checked > 0);
    }
}

TEST_CASE("Gauss-Manin connection is flat on the cubic family")
{
    auto fam = PotentialFamily::parse("x^3 - t*x", "t", {}, 8);
    auto r = gm_flatness_check(fam, 4, 3);
    CHECK(r.flat);
    CHECK(r.commutator_zero);
    CHECK(r.square_zero);
    CHECK(r.forms_checked > 0);
    REQUIRE(r.bracket_nonzero.size() == 4);
    CHECK(r.bracket_nonzero[0] == 0);
    CHECK(r.bracket_nonzero[3] == 0);
    CHECK(r.bracket_nonzero[1] == r.bracket_nonzero[2]);
    CHECK(r.bracket_nonzero[1] > 0);
}

TEST_CASE("Gauss-Manin connection is flat on random cubic families")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10; ++i) {
        std::string w = random_cubic_family(rng, 1 + i % 2);
        CAPTURE(w);
        auto fam = PotentialFamily::parse(w, "t", {}, 8);
        auto r = gm_flatness_check(fam, 3, 2);
        CHECK(r.flat);
        CHECK(r.witness.empty());
    }
}

TEST_CASE("family scan of the cubic family is constant")
{
    std::vector<Rational> grid{Rational(-1), Rational(0), Rational(1), Rational(2)};
    auto fam = PotentialFamily::parse("x^3 - t*x", "t", grid, 10);
    CHECK(fam.fibre_vars().size() == 1);
    CHECK(fam.at(Rational(2), 6) == potential("x^3 - 2*x", 6));
    auto scan = family_scan(fam, 6);
    CHECK(scan.constant);
    REQUIRE(scan.points.size() == 4);
    for (const auto& p : scan.points) {
        CHECK(p.stable);
        CHECK(p.dims.total() == 2);
    }
    std::string csv = scan.csv();
    CHECK(csv.rfind("t,dim_even,dim_odd,stable\n", 0) == 0);
    CHECK(csv.find("-1,0,2,true\n") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("a drop in the leading degree is reported as non-constant")
{
    std::vector<Rational> grid{Rational(0), Rational(1)};
    auto fam = PotentialFamily::parse("t*x^3 + x^2", "t", grid, 10);
    auto scan = family_scan(fam, 6);
    REQUIRE(scan.points.size() == 2);
    CHECK(scan.points[0].dims.total() == 1);
    CHECK(scan.points[1].dims.total() == 2);
    CHECK_FALSE(scan.constant);
}
