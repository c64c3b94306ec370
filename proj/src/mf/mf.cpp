#include "chainlab/mf.hpp"

#include "chainlab/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace chainlab {

namespace {

bool same_ring(const TruncatedPolyAlgebra& a, const TruncatedPolyAlgebra& b)
{
    if (a.ngens() != b.ngens())
        return false;
    for (int i = 0; i < a.ngens(); ++i)
        if (a.generators()[i].name != b.generators()[i].name || a.generators()[i].odd != b.generators()[i].odd)
            return false;
    return true;
}

void check_shape(const PolyMatrix& m, int rows, int cols, const char* what)
{
    if (static_cast<int>(m.size()) != rows)
        throw std::invalid_argument(std::string("matrix factorization: ") + what + " has wrong row count");
    for (const auto& r : m)
        if (static_cast<int>(r.size()) != cols)
            throw std::invalid_argument(std::string("matrix factorization: ") + what + " has wrong column count");
}

PolyMatrix negate(const PolyMatrix& m)
{
    PolyMatrix out = m;
    for (auto& r : out)
        for (auto& e : r)
            e = -e;
    return out;
}

PolyMatrix retrunc(const PolyMatrix& m, AlgebraPtr ring)
{
    PolyMatrix out;
    for (const auto& r : m) {
        out.emplace_back();
        for (const auto& e : r)
            out.back().push_back(change_truncation(e, ring));
    }
    return out;
}

int max_entry_degree(const PolyMatrix& m)
{
    int d = 0;
    for (const auto& r : m)
        for (const auto& e : r)
            d = std::max(d, e.max_degree());
    return d;
}

} // namespace

PolyMatrix poly_matrix(AlgebraPtr ring, int rows, int cols)
{
    return PolyMatrix(rows, std::vector<PolyElement>(cols, PolyElement(ring)));
}

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b, AlgebraPtr ring, int inner)
{
    int rows = static_cast<int>(a.size());
    int cols = b.empty() ? 0 : static_cast<int>(b.front().size());
    PolyMatrix out = poly_matrix(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (int k = 0; k < inner; ++k)
                out[i][j] = out[i][j] + a[i][k] * b[k][j];
    return out;
}

MatrixFactorization::MatrixFactorization(AlgebraPtr ring_, PolyElement f_, int r0_, int r1_, PolyMatrix d0_,
                                         PolyMatrix d1_)
    : ring(std::move(ring_)), f(std::move(f_)), r0(r0_), r1(r1_), d0(std::move(d0_)), d1(std::move(d1_))
{
    for (const auto& g : ring->generators())
        if (g.odd)
            throw std::invalid_argument("matrix factorization: ring must have even generators only");
    if (!(*f.algebra() == *ring))
        throw std::invalid_argument("matrix factorization: potential lives in a different ring");
    check_shape(d0, r1, r0, "d0");
    check_shape(d1, r0, r1, "d1");
    for (const auto* m : {&d0, &d1})
        for (const auto& r : *m)
            for (const auto& e : r)
                if (!(*e.algebra() == *ring))
                    throw std::invalid_argument("matrix factorization: entry lives in a different ring");
}

nlohmann::json MatrixFactorization::to_json() const
{
    auto mat = [](const PolyMatrix& m) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& r : m) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& e : r)
                row.push_back(e.str());
            a.push_back(row);
        }
        return a;
    };
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& g : ring->generators())
        vars.push_back(g.name);
    return {{"ring", {{"vars", vars}, {"trunc", ring->trunc()}}},
            {"f", f.str()},
            {"ranks", {r0, r1}},
            {"d0", mat(d0)},
            {"d1", mat(d1)}};
}

MatrixFactorization MatrixFactorization::from_json(const nlohmann::json& j)
{
    const auto& rj = j.at("ring");
    AlgebraPtr ring;
    if (rj.contains("gens"))
        ring = algebra_from_json(rj);
    else
        ring = TruncatedPolyAlgebra::even(rj.at("vars").get<std::vector<std::string>>(), rj.at("trunc").get<int>());
    auto ranks = j.at("ranks").get<std::vector<int>>();
    if (ranks.size() != 2)
        throw std::invalid_argument("matrix factorization: ranks must be [r0, r1]");
    auto mat = [&](const nlohmann::json& a, int rows, int cols) {
        PolyMatrix m = poly_matrix(ring, rows, cols);
        if (!a.is_array() || static_cast<int>(a.size()) != rows)
            throw std::invalid_argument("matrix factorization: wrong row count");
        for (int r = 0; r < rows; ++r) {
            if (!a[r].is_array() || static_cast<int>(a[r].size()) != cols)
                throw std::invalid_argument("matrix factorization: wrong column count");
            for (int c = 0; c < cols; ++c)
                m[r][c] = parse_polynomial(a[r][c].is_string() ? a[r][c].get<std::string>() : a[r][c].dump(), ring);
        }
        return m;
    };
    PolyElement f = parse_polynomial(j.at("f").get<std::string>(), ring);
    return MatrixFactorization(ring, f, ranks[0], ranks[1], mat(j.at("d0"), ranks[1], ranks[0]),
                               mat(j.at("d1"), ranks[0], ranks[1]));
}

MFReport mf_validate(const MatrixFactorization& m)
{
    MFReport rep;
    auto check = [&](const PolyMatrix& prod, int n, const char* where) {
        for (int i = 0; i < n && rep.ok; ++i)
            for (int j = 0; j < n && rep.ok; ++j) {
                PolyElement want = i == j ? m.f : PolyElement(m.ring);
                if (prod[i][j] != want) {
                    rep.ok = false;
                    rep.where = where;
                    rep.row = i;
                    rep.col = j;
                    rep.expected = want.str();
                    rep.actual = prod[i][j].str();
                }
            }
    };
    check(poly_mul(m.d1, m.d0, m.ring, m.r1), m.r0, "d1*d0");
    check(poly_mul(m.d0, m.d1, m.ring, m.r0), m.r1, "d0*d1");
    return rep;
}

MatrixFactorization mf_shift(const MatrixFactorization& m)
{
    return MatrixFactorization(m.ring, m.f, m.r1, m.r0, negate(m.d1), negate(m.d0));
}

MatrixFactorization mf_zero(AlgebraPtr ring, const PolyElement& f)
{
    return MatrixFactorization(ring, f, 0, 0, {}, {});
}

MatrixFactorization mf_direct_sum(const MatrixFactorization& a, const MatrixFactorization& b)
{
    if (!(*a.ring == *b.ring) || a.f != b.f)
        throw std::invalid_argument("direct sum: objects over different (R, f)");
    int r0 = a.r0 + b.r0, r1 = a.r1 + b.r1;
    PolyMatrix d0 = poly_matrix(a.ring, r1, r0), d1 = poly_matrix(a.ring, r0, r1);
    for (int i = 0; i < a.r1; ++i)
        for (int j = 0; j < a.r0; ++j)
            d0[i][j] = a.d0[i][j];
    for (int i = 0; i < b.r1; ++i)
        for (int j = 0; j < b.r0; ++j)
            d0[a.r1 + i][a.r0 + j] = b.d0[i][j];
    for (int i = 0; i < a.r0; ++i)
        for (int j = 0; j < a.r1; ++j)
            d1[i][j] = a.d1[i][j];
    for (int i = 0; i < b.r0; ++i)
        for (int j = 0; j < b.r1; ++j)
            d1[a.r0 + i][a.r1 + j] = b.d1[i][j];
    return MatrixFactorization(a.ring, a.f, r0, r1, d0, d1);
}

MatrixFactorization mf_tensor(const MatrixFactorization& a, const MatrixFactorization& b)
{
    std::vector<Generator> gens = a.ring->generators();
    for (const auto& g : b.ring->generators()) {
        if (a.ring->has(g.name))
            throw std::invalid_argument("tensor: variable sets must be disjoint");
        gens.push_back(g);
    }
    AlgebraPtr ring = TruncatedPolyAlgebra::make(gens, std::max(a.ring->trunc(), b.ring->trunc()));
    PolyElement f = embed(a.f, ring) + embed(b.f, ring);

    // (E (x) F)_0 = E0F0 + E1F1, (E (x) F)_1 = E0F1 + E1F0; d(e (x) x) = de (x) x + (-1)^|e| e (x) dx.
    auto idx00 = [&](int i, int j) { return i * b.r0 + j; };
    auto idx11 = [&](int i, int j) { return a.r0 * b.r0 + i * b.r1 + j; };
    auto idx01 = [&](int i, int j) { return i * b.r1 + j; };
    auto idx10 = [&](int i, int j) { return a.r0 * b.r1 + i * b.r0 + j; };
    int n0 = a.r0 * b.r0 + a.r1 * b.r1, n1 = a.r0 * b.r1 + a.r1 * b.r0;
    PolyMatrix d0 = poly_matrix(ring, n1, n0), d1 = poly_matrix(ring, n0, n1);
    auto A0 = [&](int r, int c) { return embed(a.d0[r][c], ring); };
    auto A1 = [&](int r, int c) { return embed(a.d1[r][c], ring); };
    auto B0 = [&](int r, int c) { return embed(b.d0[r][c], ring); };
    auto B1 = [&](int r, int c) { return embed(b.d1[r][c], ring); };

    for (int i = 0; i < a.r0; ++i)
        for (int j = 0; j < b.r0; ++j) {
            int col = idx00(i, j);
            for (int k = 0; k < a.r1; ++k)
                d0[idx10(k, j)][col] = d0[idx10(k, j)][col] + A0(k, i);
            for (int k = 0; k < b.r1; ++k)
                d0[idx01(i, k)][col] = d0[idx01(i, k)][col] + B0(k, j);
        }
    for (int i = 0; i < a.r1; ++i)
        for (int j = 0; j < b.r1; ++j) {
            int col = idx11(i, j);
            for (int k = 0; k < a.r0; ++k)
                d0[idx01(k, j)][col] = d0[idx01(k, j)][col] + A1(k, i);
            for (int k = 0; k < b.r0; ++k)
                d0[idx10(i, k)][col] = d0[idx10(i, k)][col] - B1(k, j);
        }
    for (int i = 0; i < a.r0; ++i)
        for (int j = 0; j < b.r1; ++j) {
            int col = idx01(i, j);
            for (int k = 0; k < a.r1; ++k)
                d1[idx11(k, j)][col] = d1[idx11(k, j)][col] + A0(k, i);
            for (int k = 0; k < b.r0; ++k)
                d1[idx00(i, k)][col] = d1[idx00(i, k)][col] + B1(k, j);
        }
    for (int i = 0; i < a.r1; ++i)
        for (int j = 0; j < b.r0; ++j) {
            int col = idx10(i, j);
            for (int k = 0; k < a.r0; ++k)
                d1[idx00(k, j)][col] = d1[idx00(k, j)][col] + A1(k, i);
            for (int k = 0; k < b.r1; ++k)
                d1[idx11(i, k)][col] = d1[idx11(i, k)][col] - B0(k, j);
        }
    return MatrixFactorization(ring, f, n0, n1, d0, d1);
}

MatrixFactorization mf_retruncate(const MatrixFactorization& m, int trunc)
{
    AlgebraPtr ring = TruncatedPolyAlgebra::make(m.ring->generators(), trunc);
    return MatrixFactorization(ring, change_truncation(m.f, ring), m.r0, m.r1, retrunc(m.d0, ring),
                               retrunc(m.d1, ring));
}

MFHomComplex mf_hom_complex(const MatrixFactorization& a_in, const MatrixFactorization& b_in, int trunc, int D)
{
    if (!same_ring(*a_in.ring, *b_in.ring) || change_truncation(b_in.f, a_in.ring) != a_in.f)
        throw std::invalid_argument("hom complex: objects over different (R, f)");
    MatrixFactorization a = mf_retruncate(a_in, trunc);
    MatrixFactorization b = mf_retruncate(b_in, trunc);
    const auto& alg = *a.ring;
    const auto& rb = alg.basis();
    const int R = static_cast<int>(rb.size());

    // even: Hom(E0,Q0) [s0 x r0] then Hom(E1,Q1) [s1 x r1]; odd: Hom(E0,Q1) [s1 x r0] then Hom(E1,Q0) [s0 x r1]
    const int r0 = a.r0, r1 = a.r1, s0 = b.r0, s1 = b.r1;
    auto e00 = [&](int i, int j, int m) { return (i * r0 + j) * R + m; };
    auto e11 = [&](int i, int j, int m) { return (s0 * r0 + i * r1 + j) * R + m; };
    auto o10 = [&](int i, int j, int m) { return (i * r0 + j) * R + m; };
    auto o01 = [&](int i, int j, int m) { return (s1 * r0 + i * r1 + j) * R + m; };
    const int ne = (s0 * r0 + s1 * r1) * R, no = (s1 * r0 + s0 * r1) * R;

    MFHomComplex hc;
    hc.keep_even.resize(ne);
    hc.keep_odd.resize(no);
    for (int blk = 0; blk < ne / std::max(R, 1); ++blk)
        for (int m = 0; m < R; ++m)
            hc.keep_even[blk * R + m] = total_degree(rb[m]) <= D;
    for (int blk = 0; blk < no / std::max(R, 1); ++blk)
        for (int m = 0; m < R; ++m)
            hc.keep_odd[blk * R + m] = total_degree(rb[m]) <= D;

    Monomial out;
    auto emit = [&](std::vector<Triplet>& t, const PolyElement& p, int m, int col, const Rational& sign,
                    auto&& rowfn) {
        for (const auto& [pm, c] : p.terms()) {
            int sg = alg.multiply(pm, rb[m], out);
            if (sg == 0)
                continue;
            t.push_back({rowfn(alg.basis_index(out)), col, sign * c * Rational(sg)});
        }
    };

    // h0(phi) = lambda phi - phi delta
    std::vector<Triplet> t0;
    for (int m = 0; m < R; ++m) {
        for (int i = 0; i < s0; ++i)
            for (int j = 0; j < r0; ++j) {
                int col = e00(i, j, m);
                // lambda0 * phi0 : E0 -> Q1, entry (k, j) gets lambda0[k][i]
                for (int k = 0; k < s1; ++k)
                    emit(t0, b.d0[k][i], m, col, Rational(1), [&](int mm) { return o10(k, j, mm); });
                // - phi0 * delta1 : E1 -> Q0, entry (i, k) gets delta1[j][k]
                for (int k = 0; k < r1; ++k)
                    emit(t0, a.d1[j][k], m, col, Rational(-1), [&](int mm) { return o01(i, k, mm); });
            }
        for (int i = 0; i < s1; ++i)
            for (int j = 0; j < r1; ++j) {
                int col = e11(i, j, m);
                // lambda1 * phi1 : E1 -> Q0
                for (int k = 0; k < s0; ++k)
                    emit(t0, b.d1[k][i], m, col, Rational(1), [&](int mm) { return o01(k, j, mm); });
                // - phi1 * delta0 : E0 -> Q1
                for (int k = 0; k < r0; ++k)
                    emit(t0, a.d0[j][k], m, col, Rational(-1), [&](int mm) { return o10(i, k, mm); });
            }
    }
    // h1(psi) = lambda psi + psi delta
    std::vector<Triplet> t1;
    for (int m = 0; m < R; ++m) {
        for (int i = 0; i < s1; ++i)
            for (int j = 0; j < r0; ++j) {
                int col = o10(i, j, m);
                // lambda1 * psi0 : E0 -> Q0
                for (int k = 0; k < s0; ++k)
                    emit(t1, b.d1[k][i], m, col, Rational(1), [&](int mm) { return e00(k, j, mm); });
                // psi0 * delta1 : E1 -> Q1
                for (int k = 0; k < r1; ++k)
                    emit(t1, a.d1[j][k], m, col, Rational(1), [&](int mm) { return e11(i, k, mm); });
            }
        for (int i = 0; i < s0; ++i)
            for (int j = 0; j < r1; ++j) {
                int col = o01(i, j, m);
                // lambda0 * psi1 : E1 -> Q1
                for (int k = 0; k < s1; ++k)
                    emit(t1, b.d0[k][i], m, col, Rational(1), [&](int mm) { return e11(k, j, mm); });
                // psi1 * delta0 : E0 -> Q0
                for (int k = 0; k < r0; ++k)
                    emit(t1, a.d0[j][k], m, col, Rational(1), [&](int mm) { return e00(i, k, mm); });
            }
    }
    hc.complex.dim_even = ne;
    hc.complex.dim_odd = no;
    hc.complex.d0 = SparseMatrix::from_triplets(no, ne, std::move(t0));
    hc.complex.d1 = SparseMatrix::from_triplets(ne, no, std::move(t1));
    hc.complex.validate();
    return hc;
}

MFHomResult mf_hom_cohomology(const MatrixFactorization& a, const MatrixFactorization& b, int D)
{
    int lag = std::max({1, a.f.max_degree(), max_entry_degree(a.d0), max_entry_degree(a.d1),
                        max_entry_degree(b.d0), max_entry_degree(b.d1)});
    auto run = [&](int d) {
        MFHomComplex hc = mf_hom_complex(a, b, d + lag, d);
        return persistent_image_dims(hc.complex, hc.keep_even, hc.keep_odd);
    };
    MFHomResult r;
    r.D = D;
    r.dims = run(D);
    r.dims_next = run(D + 2);
    r.stable = r.dims == r.dims_next;
    return r;
}

} // namespace chainlab
