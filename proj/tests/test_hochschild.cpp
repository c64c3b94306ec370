#include "chainlab/hochschild.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace chainlab;

namespace {

/// Textbook normalized Hochschild complex of Q[x]/x^m: chains a0 (x) a1..an with a1..an in {x..x^{m-1}},
/// b = sum_{i<n} (-1)^i (..a_i a_{i+1}..) + (-1)^n (a_n a_0 (x) a1..a_{n-1}).
struct TextbookHochschild {
    int m;
    std::vector<std::vector<std::vector<int>>> chains;  // by number of tensor factors after a0
    std::vector<std::map<std::vector<int>, int>> index;

    TextbookHochschild(int m_, int max_n) : m(m_)
    {
        chains.resize(max_n + 1);
        index.resize(max_n + 1);
        for (int n = 0; n <= max_n; ++n) {
            std::vector<int> cur(n + 1, 0);
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos == n + 1) {
                    index[n][cur] = static_cast<int>(chains[n].size());
                    chains[n].push_back(cur);
                    return;
                }
                for (int e = pos == 0 ? 0 : 1; e < m; ++e) {
                    cur[pos] = e;
                    self(self, pos + 1);
                }
            };
            rec(rec, 0);
        }
    }

    SparseMatrix boundary(int n) const
    {
        std::vector<Triplet> t;
        auto put = [&](const std::vector<int>& c, int col, int sign) {
            for (std::size_t k = 1; k < c.size(); ++k)
                if (c[k] == 0)
                    return;
            for (int e : c)
                if (e >= m)
                    return;
            t.push_back({index[n - 1].at(c), col, Rational(sign)});
        };
        for (int col = 0; col < static_cast<int>(chains[n].size()); ++col) {
            const auto& a = chains[n][col];
            for (int i = 0; i < n; ++i) {
                std::vector<int> c(a.begin(), a.begin() + i);
                c.push_back(a[i] + a[i + 1]);
                c.insert(c.end(), a.begin() + i + 2, a.end());
                put(c, col, i % 2 ? -1 : 1);
            }
            std::vector<int> c{a[n] + a[0]};
            c.insert(c.end(), a.begin() + 1, a.begin() + n);
            put(c, col, n % 2 ? -1 : 1);
        }
        return SparseMatrix::from_triplets(static_cast<int>(chains[n - 1].size()),
                                           static_cast<int>(chains[n].size()), std::move(t));
    }
};

/// The library boundary restricted to chains of `len` entries mapping to `len - 1` entries.
SparseMatrix library_block(const HochschildWindow& w, const SparseMatrix& b, int len)
{
    std::vector<int> rows, cols;
    for (int i = 0; i < static_cast<int>(w.chains().size()); ++i) {
        int s = static_cast<int>(w.chains()[i].size());
        if (s == len)
            cols.push_back(i);
        if (s == len - 1)
            rows.push_back(i);
    }
    return b.submatrix(rows, cols);
}

/// Truncation deep enough that the lattice at m + 2 never sees the cutoff.
int hp_trunc(int m, int e)
{
    return m + 2 + (e + 1) + 2 * e;
}

int weight_of(const CurvedAlgebra& A)
{
    int e = 0;
    for (const auto& [i, c] : A.h)
        e = std::max(e, A.algebra.weight[i]);
    return e > 0 ? e : 2;
}

std::map<int, SparseMatrix> euler_connection(const HochschildWindow& w)
{
    const auto& A = w.algebra();
    const int e = weight_of(A);
    std::vector<Triplet> t;
    for (int i = 0; i < static_cast<int>(w.chains().size()); ++i) {
        const auto& c = w.chains()[i];
        t.push_back({i, i, Rational(-static_cast<long long>(c.size()), 2) + Rational(chain_weight(A, c), e)});
    }
    int n = static_cast<int>(w.chains().size());
    return {{-1, SparseMatrix::from_triplets(n, n, std::move(t))}};
}

} // namespace

TEST_CASE("boundary ranks agree with the textbook complex on truncated lines")
{
    for (int m : {2, 3, 4}) {
        auto A = CurvedAlgebra::truncated_line(m);
        HochschildWindow w(A, 5);
        TextbookHochschild oracle_complex(m, 4);
        SparseMatrix b = w.matrix(hochschild_b);
        for (int n = 1; n <= 4; ++n) {
            CAPTURE(m);
            CAPTURE(n);
            CHECK(rank(library_block(w, b, n + 1)) == oracle::rank_q(oracle_complex.boundary(n)));
        }
        // HH_0 = m and HH_n = m - 1 for n >= 1
        std::vector<int> ranks{0};
        for (int n = 1; n <= 4; ++n)
            ranks.push_back(oracle::rank_q(oracle_complex.boundary(n)));
        CHECK(static_cast<int>(oracle_complex.chains[0].size()) - ranks[1] == m);
        for (int n = 1; n <= 3; ++n) {
            int cycles = static_cast<int>(oracle_complex.chains[n].size()) - ranks[n];
            CHECK(cycles - ranks[n + 1] == m - 1);
        }
    }
}

TEST_CASE("chains with the unit in a tail slot vanish")
{
    auto A = CurvedAlgebra::truncated_line(3, {{2, Rational(1)}});
    for (const auto& c : enumerate_chains(A, 4))
        for (std::size_t k = 1; k < c.size(); ++k)
            CHECK(c[k] != 0);
    for (const auto& [c, v] : hochschild_b0(A, {1, 1}))
        for (std::size_t k = 1; k < c.size(); ++k)
            CHECK(c[k] != 0);
    CHECK(connes_B(A, {0, 1}).empty());
}

TEST_CASE("mixed complex identities hold on the interior")
{
    std::vector<CurvedAlgebra> algebras{CurvedAlgebra::truncated_line(1), CurvedAlgebra::truncated_line(2),
                                        CurvedAlgebra::truncated_line(6, {{2, Rational(1)}})};
    for (const auto& A : algebras) {
        HochschildWindow w(A, 6);
        auto rep = mixed_identity_check(w);
        CHECK(rep.holds);
        REQUIRE(rep.identities.size() == 3);
        for (const auto& id : rep.identities) {
            CAPTURE(id.name);
            CHECK(id.holds);
            CHECK(id.max_length_checked == (A.algebra.dim > 1 ? 4 : 1));
        }
    }
}

TEST_CASE("a curvature that is not central is rejected")
{
    auto A = CurvedAlgebra::truncated_line(3, {{1, Rational(1)}});
    A.algebra.parity[1] = 1;
    CHECK_THROWS(A.validate());
}

TEST_CASE("periodic cyclic homology of small examples")
{
    HPParams p;
    p.m = 6;
    auto q = hp_dims(CurvedAlgebra::truncated_line(1), p);
    CHECK(q.stable);
    CHECK(q.dims == ParityDims{1, 0});
    auto dual = hp_dims(CurvedAlgebra::truncated_line(2), p);
    CHECK(dual.stable);
    CHECK(dual.dims == ParityDims{1, 0});
    auto x2 = hp_dims(curved_line_from_potential({Rational(0), Rational(0), Rational(1)}, hp_trunc(6, 2)), p);
    CHECK(x2.stable);
    CHECK(x2.dims == ParityDims{0, 1});
    auto x3 = hp_dims(curved_line_from_potential({Rational(0), Rational(0), Rational(0), Rational(1)}, hp_trunc(6, 3)), p);
    CHECK(x3.stable);
    CHECK(x3.dims == ParityDims{0, 2});
}

TEST_CASE("the sign of the curvature does not change HP")
{
    HPParams p;
    p.m = 6;
    for (int k : {2, 3}) {
        std::vector<Rational> w(k + 1, Rational(0)), minus(k + 1, Rational(0));
        w[k] = Rational(1);
        minus[k] = Rational(-1);
        auto a = hp_dims(curved_line_from_potential(w, hp_trunc(6, k)), p);
        auto b = hp_dims(curved_line_from_potential(minus, hp_trunc(6, k)), p);
        CHECK(a.stable);
        CHECK(a.dims == b.dims);
        CHECK(a.dims.total() == k - 1);
    }
}

TEST_CASE("Euler u-connection is flat against b + uB")
{
    std::vector<CurvedAlgebra> algebras{CurvedAlgebra::truncated_line(2), CurvedAlgebra::truncated_line(4),
                                        CurvedAlgebra::truncated_line(6, {{2, Rational(1)}})};
    for (const auto& A : algebras) {
        HochschildWindow w(A, 5);
        CHECK(u_connection_check(w, euler_connection(w)).holds);
        auto wrong = euler_connection(w);
        wrong[-1] = wrong[-1].scaled(Rational(2));
        CHECK_FALSE(u_connection_check(w, wrong).holds);
    }
}

TEST_CASE("chain json round trip")
{
    auto A = CurvedAlgebra::truncated_line(4, {{3, Rational(2)}});
    auto j = A.to_json();
    CHECK(CurvedAlgebra::from_json(j).to_json() == j);
}
