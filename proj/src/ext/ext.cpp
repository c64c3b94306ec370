#include "chainlab/ext.hpp"

#include "chainlab/complex.hpp"
#include "chainlab/sparse.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace chainlab {

namespace {

long long h_at(const std::map<int, long long>& m, int i)
{
    auto it = m.find(i);
    return it == m.end() ? 0 : it->second;
}

long long chi(const std::map<int, long long>& m)
{
    long long s = 0;
    for (const auto& [i, v] : m)
        s += (i % 2 ? -v : v);
    return s;
}

/// Rank of the map S_a / q S_{a-d} -> S_{a+d} / q S_a induced by multiplication with q.
long long induced_rank(const PolyElement& q, int nvars, int a)
{
    if (a < 0)
        return 0;
    SparseMatrix image = multiplication_matrix(q, nvars, a);
    SparseMatrix sub = multiplication_matrix(q, nvars, a);
    std::vector<SparseVec> cols;
    for (int j = 0; j < sub.cols(); ++j)
        cols.push_back(sub.column(j));
    for (int j = 0; j < image.cols(); ++j)
        cols.push_back(image.column(j));
    return rank(SparseMatrix::from_columns(image.rows(), cols)) - rank(sub);
}

} // namespace

std::map<int, long long> line_bundle_cohomology(int n, int p)
{
    if (n < 1)
        throw std::invalid_argument("line bundle cohomology: n must be at least 1");
    std::map<int, long long> out;
    if (p >= 0)
        out[0] = binomial(p + n, n);
    if (p <= -n - 1)
        out[n] = binomial(-p - 1, n);
    return out;
}

SparseMatrix multiplication_matrix(const PolyElement& q, int nvars, int a)
{
    const int d = q.max_degree();
    auto src = monomials_of_degree(nvars, a);
    auto dst = monomials_of_degree(nvars, a + d);
    std::map<Monomial, int> index;
    for (int i = 0; i < static_cast<int>(dst.size()); ++i)
        index[dst[i]] = i;
    std::vector<Triplet> t;
    for (int j = 0; j < static_cast<int>(src.size()); ++j)
        for (const auto& [m, c] : q.terms()) {
            Monomial r = src[j];
            for (int v = 0; v < nvars; ++v)
                r[v] += m[v];
            t.push_back({index.at(r), j, c});
        }
    return SparseMatrix::from_triplets(static_cast<int>(dst.size()), static_cast<int>(src.size()), std::move(t));
}

ProjectiveSetup ProjectiveSetup::generic(int n, std::uint64_t seed, int q_degree, int probe)
{
    if (n < 2)
        throw std::invalid_argument("projective setup: n must be at least 2");
    std::vector<std::string> names, hnames;
    for (int i = 0; i <= n; ++i) {
        hnames.push_back("x" + std::to_string(i));
        if (i < n)
            names.push_back(hnames.back());
    }
    AlgebraPtr ambient = TruncatedPolyAlgebra::even(hnames, 1);
    Monomial hx(n + 1, 0);
    hx[n] = 1;
    AlgebraPtr ring = TruncatedPolyAlgebra::even(names, q_degree);

    ProjectiveSetup s{n, q_degree, seed, 9, PolyElement::monomial(ambient, hx), PolyElement(ring), {}};
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::uint64_t cur = seed + attempt;
        std::mt19937_64 rng(cur);
        PolyElement q(ring);
        for (const auto& m : monomials_of_degree(n, q_degree)) {
            long long c = static_cast<long long>(rng() % (2 * s.coefficient_range + 1)) - s.coefficient_range;
            if (c != 0)
                q = q + PolyElement::monomial(ring, m, Rational(c));
        }
        bool ok = !q.is_zero();
        for (int a = 0; ok && a + q_degree <= probe; ++a) {
            SparseMatrix m = multiplication_matrix(q, n, a);
            if (rank(m) != std::min(m.rows(), m.cols()))
                ok = false;
        }
        if (ok) {
            s.seed = cur;
            s.q = q;
            return s;
        }
        s.log.push_back("seed " + std::to_string(cur) + " gave a degenerate q; reseeding");
    }
}

TwistCohomology ci_twist_cohomology(const ProjectiveSetup& s, int p)
{
    const int nv = s.n;      // coordinates of H
    const int m = s.n - 1;   // dim H
    const int d = s.q_degree;
    TwistCohomology r;
    r.p = p;
    auto hp = line_bundle_cohomology(m, p);
    auto hq = line_bundle_cohomology(m, p - d);
    if (p - d >= 0) {
        SparseMatrix mq = multiplication_matrix(s.q, nv, p - d);
        r.rank_h0 = rank(mq);
        if (r.rank_h0 != mq.cols())
            throw InvariantViolation("ci cohomology: multiplication by q is not injective on sections");
    }
    // H^m(O(a)) is dual to S_{-a-m-1}; the map is the transpose of multiplication by q.
    int src_dual = -p - m - 1;
    if (src_dual >= 0) {
        SparseMatrix mq = multiplication_matrix(s.q, nv, src_dual);
        r.rank_top = rank(mq);
        if (r.rank_top != mq.cols())
            throw InvariantViolation("ci cohomology: dual multiplication by q is not surjective");
    }
    auto rank_at = [&](int i) -> long long {
        if (i == 0)
            return r.rank_h0;
        if (i == m)
            return r.rank_top;
        return 0;
    };
    for (int i = 0; i <= m; ++i)
        r.dims[i] = (h_at(hp, i) - rank_at(i)) + (h_at(hq, i + 1) - rank_at(i + 1));
    r.euler_conserved = chi(r.dims) == chi(hp) - chi(hq);
    return r;
}

ExtTable ext_table(const ProjectiveSetup& s, const std::vector<std::pair<int, int>>& expected)
{
    const int d = s.q_degree;
    const int nv = s.n;
    ExtTable t;
    const std::vector<std::vector<int>> column_twists{{0}, {d, 1}, {d + 1}};
    std::map<int, TwistCohomology> by_twist;
    for (int p : {0, 1, d, d + 1}) {
        by_twist.emplace(p, ci_twist_cohomology(s, p));
        t.twists.push_back(by_twist.at(p));
    }
    const int m = s.n - 1;
    for (int col = 0; col < 3; ++col)
        for (int q = 0; q <= m; ++q) {
            long long v = 0;
            for (int tw : column_twists[col])
                v += by_twist.at(tw).dims.at(q);
            t.e2[{col, q}] = v;
        }
    // q-components of the E_1 differentials on the section row; the h-components vanish on H.
    t.e1_differentials_zero = induced_rank(s.q, nv, 0) == 0 && induced_rank(s.q, nv, 1) == 0;
    if (!expected.empty())
        for (const auto& [k, v] : t.e2)
            if (v != 0 && std::find(expected.begin(), expected.end(), k) == expected.end())
                throw InvariantViolation("ext table: unexpected nonzero slot (" + std::to_string(k.first) + ", " +
                                         std::to_string(k.second) + ")");
    t.degenerate = true;
    for (const auto& [k, v] : t.e2) {
        if (v == 0)
            continue;
        for (int r = 2; r <= m + 2; ++r) {
            auto it = t.e2.find({k.first + r, k.second - r + 1});
            if (it != t.e2.end() && it->second != 0)
                t.degenerate = false;
        }
    }
    t.ext.assign(2 + m + 1, 0);
    for (const auto& [k, v] : t.e2)
        t.ext[k.first + k.second] += v;
    while (t.ext.size() > 1 && t.ext.back() == 0)
        t.ext.pop_back();
    return t;
}

nlohmann::json ExtTable::to_json() const
{
    nlohmann::json j;
    j["e2"] = nlohmann::json::array();
    for (const auto& [k, v] : e2)
        j["e2"].push_back({{"p", k.first}, {"q", k.second}, {"dim", v}});
    j["ext"] = ext;
    j["degenerate"] = degenerate;
    j["e1_differentials_zero"] = e1_differentials_zero;
    j["twists"] = nlohmann::json::array();
    for (const auto& tw : twists) {
        nlohmann::json d = nlohmann::json::object();
        for (const auto& [i, v] : tw.dims)
            d[std::to_string(i)] = v;
        j["twists"].push_back({{"p", tw.p},
                               {"dims", d},
                               {"rank_sections", tw.rank_h0},
                               {"rank_top", tw.rank_top},
                               {"euler_conserved", tw.euler_conserved}});
    }
    return j;
}

std::string ExtTable::grid() const
{
    int pmax = 0, qmax = 0;
    for (const auto& [k, v] : e2) {
        pmax = std::max(pmax, k.first);
        qmax = std::max(qmax, k.second);
    }
    std::ostringstream os;
    for (int q = qmax; q >= 0; --q) {
        os << "q=" << q << " |";
        for (int p = 0; p <= pmax; ++p) {
            auto it = e2.find({p, q});
            std::string v = std::to_string(it == e2.end() ? 0 : it->second);
            os << std::string(5 - std::min<std::size_t>(5, v.size()), ' ') << v;
        }
        os << '\n';
    }
    os << "     +";
    for (int p = 0; p <= pmax; ++p)
        os << "-----";
    os << "\n      ";
    for (int p = 0; p <= pmax; ++p)
        os << "  p=" << p;
    os << '\n';
    return os.str();
}

} // namespace chainlab
