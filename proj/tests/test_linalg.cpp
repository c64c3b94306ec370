#include "chainlab/rational.hpp"
#include "chainlab/sparse.hpp"
#include "chainlab/uwindow.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <climits>
#include <random>

using namespace chainlab;

TEST_CASE("rational normalization and parsing")
{
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 5).is_zero());
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational(-3, 2).str() == "-3/2");
    CHECK(Rational(1, 3).inverse() == Rational(3));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(0).inverse());
}

TEST_CASE("rational arithmetic promotes past 64 bits and demotes back")
{
    Rational big(LLONG_MAX);
    Rational sq = big * big;
    CHECK_FALSE(sq.is_small());
    CHECK(sq.to_mpq() == mpq_class(mpz_class(static_cast<long>(LLONG_MAX)) * mpz_class(static_cast<long>(LLONG_MAX))));
    Rational back = sq / big;
    CHECK(back.is_small());
    CHECK(back == big);
    Rational m(LLONG_MIN);
    CHECK((-m).to_mpq() == -mpq_class(mpz_class(static_cast<long>(LLONG_MIN))));
    CHECK((m.inverse() * m).is_one());
    CHECK(-(-m) == m);
}

TEST_CASE("rational operations agree with GMP on random data")
{
    std::mt19937_64 rng(7);
    auto draw = [&]() {
        long long n = static_cast<long long>(rng() >> (rng() % 60)) * (rng() % 2 ? 1 : -1);
        long long d = static_cast<long long>((rng() >> (rng() % 62)) | 1);
        return std::make_pair(Rational(n, d), mpq_class(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))));
    };
    for (int i = 0; i < 2000; ++i) {
        auto [a, qa] = draw();
        auto [b, qb] = draw();
        qa.canonicalize();
        qb.canonicalize();
        CHECK((a + b).to_mpq() == qa + qb);
        CHECK((a - b).to_mpq() == qa - qb);
        CHECK((a * b).to_mpq() == qa * qb);
        if (!b.is_zero())
            CHECK((a / b).to_mpq() == qa / qb);
        CHECK((a < b) == (qa < qb));
        Rational acc = a;
        acc.add_mul(a, b);
        CHECK(acc.to_mpq() == qa + qa * qb);
    }
}

namespace {

SparseMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int density_pct, int range)
{
    std::vector<Triplet> t;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (static_cast<int>(rng() % 100) < density_pct)
                t.push_back({r, c, Rational(static_cast<long long>(rng() % (2 * range + 1)) - range)});
    return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

/// Low-rank matrix as a product, so rank deficiency is common.
SparseMatrix random_low_rank(std::mt19937_64& rng, int rows, int cols, int inner)
{
    return random_matrix(rng, rows, inner, 60, 3) * random_matrix(rng, inner, cols, 60, 3);
}

} // namespace

TEST_CASE("sparse rank matches the Bareiss oracle")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        int rows = 1 + static_cast<int>(rng() % 12), cols = 1 + static_cast<int>(rng() % 14);
        SparseMatrix m = i % 2 ? random_matrix(rng, rows, cols, 35, 4)
                               : random_low_rank(rng, rows, cols, 1 + static_cast<int>(rng() % 5));
        int r = rank(m);
        CHECK(r == oracle::rank_q(m));
        CHECK(r == rank(m.transpose()));
        CHECK(cokernel_dim(m) == rows - r);
    }
}

TEST_CASE("kernel basis is a basis of the null space")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 100; ++i) {
        int rows = 1 + static_cast<int>(rng() % 8), cols = 1 + static_cast<int>(rng() % 10);
        SparseMatrix m = random_low_rank(rng, rows, cols, 1 + static_cast<int>(rng() % 4));
        auto ker = kernel_basis(m);
        CHECK(static_cast<int>(ker.size()) == cols - rank(m));
        for (const auto& v : ker)
            CHECK(m.apply(v).empty());
        CHECK(oracle::rank_q(SparseMatrix::from_columns(cols, ker)) == static_cast<int>(ker.size()));
    }
}

TEST_CASE("solve returns a preimage exactly when one exists")
{
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        SparseMatrix m = random_low_rank(rng, 6, 5, 2);
        SparseVec x = random_matrix(rng, 5, 1, 70, 5).column(0);
        SparseVec b = m.apply(x);
        auto s = solve(m, b);
        REQUIRE(s.has_value());
        CHECK(m.apply(*s) == b);
    }
    SparseMatrix z = SparseMatrix::from_triplets(2, 1, {{0, 0, Rational(1)}});
    CHECK_FALSE(solve(z, {{1, Rational(1)}}).has_value());
}

TEST_CASE("block decomposition covers each nonzero exactly once")
{
    std::mt19937_64 rng(19);
    SparseMatrix m = random_matrix(rng, 20, 20, 6, 2);
    int total_rank = 0;
    for (const auto& blk : block_decomposition(m))
        total_rank += rank(m.submatrix(blk.rows, blk.cols));
    CHECK(total_rank == rank(m));
}

TEST_CASE("windowed Laurent scalars")
{
    UWindowScalar a(2, Rational(3), 1);
    CHECK(a.shifted(1).coefficient(2) == Rational(3));
    CHECK_THROWS_AS(a.shifted(2), WindowOverflow);
    UWindowScalar b(2, Rational(1), -1);
    CHECK((a * b).coefficient(0) == Rational(3));
    CHECK(a.evaluate(Rational(2)) == Rational(6));
}

TEST_CASE("sampled rank over Q(u) agrees with exact elimination")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
        SparseMatrix m0 = random_low_rank(rng, rows, cols, 2);
        SparseMatrix m1 = random_low_rank(rng, rows, cols, 2);
        UMatrix u = UMatrix::linear(m0, m1);
        CHECK(rank_sampled(u) == rank_fraction_field(u));
    }
    // x - u has full rank over Q(u) but not at u = 1
    UMatrix u(1, 1, 1);
    u.add(0, 0, Rational(1), 0);
    u.add(0, 0, Rational(-1), 1);
    CHECK(rank(u.evaluate(Rational(1))) == 0);
    CHECK(rank_sampled(u) == 1);
}
