#include "chainlab/hochschild.hpp"

#include "chainlab/json_util.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace chainlab {

namespace {

SparseVec mult_vec(const FiniteAlgebra& a, const SparseVec& x, const SparseVec& y)
{
    SparseVec out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            sparse_axpy(out, ci * cj, a.product(i, j));
    return out;
}

int sp(const CurvedAlgebra& A, int a)
{
    return (A.algebra.parity[a] + 1) & 1;
}

Rational sgn(int e)
{
    return Rational(e % 2 ? -1 : 1);
}

void add_normalized(ChainVec& out, Chain c, const Rational& v)
{
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] == 0)
            return;
    chain_add(out, c, v);
}

SparseVec apply_d(const CurvedAlgebra& A, const SparseVec& x)
{
    SparseVec out;
    if (!A.has_d())
        return out;
    for (const auto& [i, c] : x)
        sparse_axpy(out, c, A.d[i]);
    return out;
}

} // namespace

Rational CurvedAlgebra::d_coeff(int a, int b) const
{
    if (!has_d())
        return Rational(0);
    for (const auto& [i, c] : d[a])
        if (i == b)
            return c;
    return Rational(0);
}

bool CurvedAlgebra::has_d() const
{
    return !d.empty();
}

void CurvedAlgebra::validate() const
{
    const auto& a = algebra;
    a.validate();
    if (has_d() && static_cast<int>(d.size()) != a.dim)
        throw std::invalid_argument("curved algebra: d needs one image per basis element");
    for (const auto& [i, c] : h)
        if (i < 0 || i >= a.dim || a.parity[i] != 0)
            throw InvariantViolation("curved algebra: curvature must be even");
    if (!has_d())
        return;
    for (int x = 0; x < a.dim; ++x)
        for (const auto& [i, c] : d[x])
            if (a.parity[i] == a.parity[x])
                throw InvariantViolation("curved algebra: d must be odd");
    if (!d[0].empty())
        throw InvariantViolation("curved algebra: d(1) != 0");
    for (int x = 0; x < a.dim; ++x)
        for (int y = 0; y < a.dim; ++y) {
            SparseVec lhs = apply_d(*this, a.product(x, y));
            SparseVec rhs = mult_vec(a, d[x], {{y, Rational(1)}});
            sparse_axpy(rhs, a.parity[x] ? Rational(-1) : Rational(1), mult_vec(a, {{x, Rational(1)}}, d[y]));
            if (lhs != rhs)
                throw InvariantViolation("curved algebra: Leibniz rule fails on " + a.names[x] + ", " + a.names[y]);
        }
    for (int x = 0; x < a.dim; ++x) {
        SparseVec dd = apply_d(*this, d[x]);
        SparseVec comm = mult_vec(a, h, {{x, Rational(1)}});
        sparse_axpy(comm, Rational(-1), mult_vec(a, {{x, Rational(1)}}, h));
        if (dd != comm)
            throw InvariantViolation("curved algebra: d^2 != [h, -] on " + a.names[x]);
    }
    if (!apply_d(*this, h).empty())
        throw InvariantViolation("curved algebra: d(h) != 0");
}

nlohmann::json CurvedAlgebra::to_json() const
{
    const auto& a = algebra;
    nlohmann::json basis = nlohmann::json::array();
    for (int i = 0; i < a.dim; ++i)
        basis.push_back({{"name", a.names[i]}, {"parity", a.parity[i]}, {"weight", a.weight[i]}});
    auto vec = [](const SparseVec& v) {
        nlohmann::json o = nlohmann::json::object();
        for (const auto& [i, c] : v)
            o[std::to_string(i)] = rational_to_json(c);
        return o;
    };
    nlohmann::json mult = nlohmann::json::array();
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            if (!a.product(i, j).empty())
                mult.push_back({{"a", i}, {"b", j}, {"value", vec(a.product(i, j))}});
    nlohmann::json dj = nlohmann::json::array();
    if (has_d())
        for (int i = 0; i < a.dim; ++i)
            if (!d[i].empty())
                dj.push_back({{"a", i}, {"value", vec(d[i])}});
    return {{"basis", basis}, {"mult", mult}, {"d", dj}, {"h", vec(h)}};
}

CurvedAlgebra CurvedAlgebra::from_json(const nlohmann::json& j)
{
    CurvedAlgebra c;
    auto& a = c.algebra;
    for (const auto& b : j.at("basis")) {
        a.names.push_back(b.at("name").get<std::string>());
        a.parity.push_back(b.value("parity", 0));
        a.weight.push_back(b.value("weight", 0));
    }
    a.dim = static_cast<int>(a.names.size());
    a.mult.assign(a.dim * a.dim, {});
    auto vec = [&](const nlohmann::json& o) {
        SparseVec v;
        for (const auto& [k, x] : o.items()) {
            int idx = std::stoi(k);
            if (idx < 0 || idx >= a.dim)
                throw std::invalid_argument("curved algebra: basis index out of range");
            sparse_axpy(v, rational_from_json(x), {{idx, Rational(1)}});
        }
        return v;
    };
    for (const auto& m : j.at("mult")) {
        int x = m.at("a").get<int>(), y = m.at("b").get<int>();
        if (x < 0 || y < 0 || x >= a.dim || y >= a.dim)
            throw std::invalid_argument("curved algebra: product index out of range");
        a.mult[x * a.dim + y] = vec(m.at("value"));
    }
    if (j.value("unit_implicit", true))
        for (int x = 0; x < a.dim; ++x) {
            a.mult[x] = {{x, Rational(1)}};
            a.mult[x * a.dim] = {{x, Rational(1)}};
        }
    auto dj = j.value("d", nlohmann::json::array());
    if (!dj.empty()) {
        c.d.assign(a.dim, {});
        for (const auto& e : dj)
            c.d.at(e.at("a").get<int>()) = vec(e.at("value"));
    }
    c.h = vec(j.value("h", nlohmann::json::object()));
    c.validate();
    return c;
}

CurvedAlgebra CurvedAlgebra::truncated_line(int n, const SparseVec& h)
{
    CurvedAlgebra c;
    c.algebra = FiniteAlgebra::truncated_line(n);
    c.h = h;
    return c;
}

void chain_add(ChainVec& v, const Chain& c, const Rational& x)
{
    if (x.is_zero())
        return;
    auto it = v.find(c);
    if (it == v.end()) {
        v.emplace(c, x);
        return;
    }
    it->second += x;
    if (it->second.is_zero())
        v.erase(it);
}

void chain_axpy(ChainVec& y, const Rational& a, const ChainVec& x)
{
    for (const auto& [c, v] : x)
        chain_add(y, c, a * v);
}

int chain_parity(const CurvedAlgebra& A, const Chain& c)
{
    int s = static_cast<int>(c.size()) - 1;
    for (int x : c)
        s += A.algebra.parity[x];
    return s & 1;
}

int chain_weight(const CurvedAlgebra& A, const Chain& c)
{
    int s = 0;
    for (int x : c)
        s += A.algebra.weight[x];
    return s;
}

std::string chain_str(const CurvedAlgebra& A, const Chain& c)
{
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i)
            s += ", ";
        s += A.algebra.names[c[i]];
    }
    return s + ")";
}

ChainVec hochschild_b1(const CurvedAlgebra& A, const Chain& ch)
{
    ChainVec out;
    if (!A.has_d())
        return out;
    const int n = static_cast<int>(ch.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        int pos = n - i;
        int mu = 0;
        for (int k = i + 1; k <= n; ++k)
            mu += sp(A, ch[n - k]);
        for (const auto& [t, c] : A.d[ch[pos]]) {
            Chain nc = ch;
            nc[pos] = t;
            add_normalized(out, nc, sgn(mu) * c);
        }
    }
    return out;
}

ChainVec hochschild_b2(const CurvedAlgebra& A, const Chain& ch)
{
    ChainVec out;
    const int n = static_cast<int>(ch.size()) - 1;
    const auto& alg = A.algebra;
    for (int i = 0; i < n; ++i) {
        int eps = 1;
        for (int k = i + 1; k <= n; ++k)
            eps += k < n ? sp(A, ch[n - k]) : alg.parity[ch[0]];
        for (const auto& [t, c] : alg.product(ch[n - i - 1], ch[n - i])) {
            Chain nc(ch.begin(), ch.begin() + (n - i - 1));
            nc.push_back(t);
            nc.insert(nc.end(), ch.begin() + (n - i + 1), ch.end());
            add_normalized(out, nc, sgn(eps) * c);
        }
    }
    if (n >= 1) {
        int s = alg.parity[ch[0]];
        for (int k = 1; k < n; ++k)
            s += sp(A, ch[n - k]);
        int eps = sp(A, ch[n]) * s;
        for (const auto& [t, c] : alg.product(ch[n], ch[0])) {
            Chain nc{t};
            nc.insert(nc.end(), ch.begin() + 1, ch.begin() + n);
            add_normalized(out, nc, sgn(eps) * c);
        }
    }
    return out;
}

ChainVec hochschild_b0(const CurvedAlgebra& A, const Chain& ch)
{
    ChainVec out;
    if (A.h.empty())
        return out;
    const int n = static_cast<int>(ch.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        int e = 0;
        for (int k = i; k <= n; ++k)
            e += sp(A, ch[n - k]);
        for (const auto& [t, c] : A.h) {
            Chain nc(ch.begin(), ch.begin() + (n - i + 1));
            nc.push_back(t);
            nc.insert(nc.end(), ch.begin() + (n - i + 1), ch.end());
            add_normalized(out, nc, sgn(e) * c);
        }
    }
    return out;
}

ChainVec hochschild_b(const CurvedAlgebra& A, const Chain& c)
{
    ChainVec out = hochschild_b0(A, c);
    chain_axpy(out, Rational(1), hochschild_b1(A, c));
    chain_axpy(out, Rational(1), hochschild_b2(A, c));
    return out;
}

ChainVec connes_B(const CurvedAlgebra& A, const Chain& ch)
{
    ChainVec out;
    if (ch[0] == 0)
        return out;
    const int n = static_cast<int>(ch.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        int e1 = 0, e2 = 0;
        for (int k = 0; k < i; ++k)
            e1 += sp(A, ch[n - k]);
        for (int l = i; l <= n; ++l)
            e2 += sp(A, ch[n - l]);
        Chain nc{0};
        for (int k = i - 1; k >= 0; --k)
            nc.push_back(ch[n - k]);
        for (int l = n; l >= i; --l)
            nc.push_back(ch[n - l]);
        add_normalized(out, nc, sgn(e1 * e2));
    }
    return out;
}

ChainVec apply(ChainOp op, const CurvedAlgebra& A, const ChainVec& v)
{
    ChainVec out;
    for (const auto& [c, x] : v)
        chain_axpy(out, x, op(A, c));
    return out;
}

std::vector<Chain> enumerate_chains(const CurvedAlgebra& A, int max_len)
{
    std::vector<Chain> out;
    const int dim = A.algebra.dim;
    Chain cur;
    auto rec = [&](auto&& self) -> void {
        out.push_back(cur);
        if (static_cast<int>(cur.size()) >= max_len)
            return;
        for (int t = 1; t < dim; ++t) {
            cur.push_back(t);
            self(self);
            cur.pop_back();
        }
    };
    for (int head = 0; head < dim && max_len >= 1; ++head) {
        cur = {head};
        rec(rec);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Chain& a, const Chain& b) { return a.size() < b.size(); });
    return out;
}

HochschildWindow::HochschildWindow(const CurvedAlgebra& A, int n_bar) : A_(&A), n_bar_(n_bar)
{
    A.validate();
    chains_ = enumerate_chains(A, n_bar);
    for (int i = 0; i < static_cast<int>(chains_.size()); ++i)
        index_[chains_[i]] = i;
}

int HochschildWindow::index(const Chain& c) const
{
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
}

SparseMatrix HochschildWindow::matrix(ChainOp op) const
{
    std::vector<Triplet> t;
    for (int i = 0; i < static_cast<int>(chains_.size()); ++i)
        for (const auto& [c, v] : op(*A_, chains_[i])) {
            int r = index(c);
            if (r >= 0)
                t.push_back({r, i, v});
        }
    int n = static_cast<int>(chains_.size());
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

std::vector<int> HochschildWindow::interior_indices() const
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(chains_.size()); ++i)
        if (interior(chains_[i]))
            out.push_back(i);
    return out;
}

MixedIdentityReport mixed_identity_check(const HochschildWindow& w)
{
    const auto& A = w.algebra();
    MixedIdentityReport rep;
    IdentityStatus bb, BB, bB;
    bb.name = "b^2";
    BB.name = "B^2";
    bB.name = "bB+Bb";
    auto record = [&](IdentityStatus& s, const Chain& c, const ChainVec& r) {
        ++s.chains_checked;
        s.max_length_checked = std::max(s.max_length_checked, static_cast<int>(c.size()));
        if (!r.empty() && s.holds) {
            s.holds = false;
            s.witness = chain_str(A, c);
            const auto& [rc, rv] = *r.begin();
            s.residue = rv.str() + " * " + chain_str(A, rc);
        }
    };
    for (const Chain& c : w.chains()) {
        if (!w.interior(c))
            continue;
        ChainVec v{{c, Rational(1)}};
        ChainVec b1 = apply(hochschild_b, A, v);
        ChainVec B1 = apply(connes_B, A, v);
        record(bb, c, apply(hochschild_b, A, b1));
        record(BB, c, apply(connes_B, A, B1));
        ChainVec x = apply(hochschild_b, A, B1);
        chain_axpy(x, Rational(1), apply(connes_B, A, b1));
        record(bB, c, x);
    }
    rep.identities = {bb, BB, bB};
    for (const auto& s : rep.identities)
        rep.holds = rep.holds && s.holds;
    return rep;
}

namespace {

struct ChainHash {
    std::size_t operator()(const std::pair<int, Chain>& k) const
    {
        std::size_t h = std::hash<int>()(k.first) * 1000003u;
        for (int x : k.second)
            h = h * 31u + static_cast<std::size_t>(x);
        return h;
    }
};

/// Cells (j, chain) with weight + e * j < bound.
struct Lattice {
    std::vector<std::pair<int, Chain>> cells;
    std::vector<int> q;
    std::unordered_map<std::pair<int, Chain>, int, ChainHash> index;
};

Lattice build_lattice(const CurvedAlgebra& A, int bound, int e)
{
    Lattice L;
    const auto& alg = A.algebra;
    Chain cur;
    auto rec = [&](auto&& self, int w) -> void {
        for (int j = 0; w + e * j < bound; ++j) {
            L.index[{j, cur}] = static_cast<int>(L.cells.size());
            L.cells.emplace_back(j, cur);
            L.q.push_back(w + e * j);
        }
        for (int t = 1; t < alg.dim; ++t)
            if (w + alg.weight[t] < bound) {
                cur.push_back(t);
                self(self, w + alg.weight[t]);
                cur.pop_back();
            }
    };
    for (int head = 0; head < alg.dim; ++head)
        if (alg.weight[head] < bound) {
            cur = {head};
            rec(rec, alg.weight[head]);
        }
    return L;
}

/// Image of a cell under b + uB, as (j, chain) terms.
std::vector<std::pair<std::pair<int, Chain>, Rational>> lattice_image(const CurvedAlgebra& A,
                                                                     const std::pair<int, Chain>& cell)
{
    std::vector<std::pair<std::pair<int, Chain>, Rational>> out;
    for (const auto& [c, v] : hochschild_b(A, cell.second))
        out.push_back({{cell.first, c}, v});
    for (const auto& [c, v] : connes_B(A, cell.second))
        out.push_back({{cell.first + 1, c}, v});
    return out;
}

/// Dimension of (pi Z_S + B_Q) / B_Q for one parity.
int lattice_rank_term(const CurvedAlgebra& A, const Lattice& Qp, const Lattice& Q, int N, int parity)
{
    const int nq = static_cast<int>(Q.cells.size());
    const int nqp = static_cast<int>(Qp.cells.size());
    std::vector<SparseVec> s_cols, phi_cols, bq_cols;
    for (int i = 0; i < nqp; ++i) {
        const auto& cell = Qp.cells[i];
        if (cell.first < N || chain_parity(A, cell.second) != parity)
            continue;
        SparseVec img;
        for (const auto& [key, v] : lattice_image(A, cell)) {
            auto it = Qp.index.find(key);
            if (it != Qp.index.end())
                sparse_axpy(img, v, {{it->second, Rational(1)}});
        }
        SparseVec phi = img;
        auto jt = Q.index.find(cell);
        if (jt != Q.index.end())
            phi.emplace_back(nqp + jt->second, Rational(1));
        s_cols.push_back(std::move(img));
        phi_cols.push_back(std::move(phi));
    }
    for (int i = 0; i < nq; ++i) {
        const auto& cell = Q.cells[i];
        if (chain_parity(A, cell.second) == parity)
            continue;
        SparseVec img;
        for (const auto& [key, v] : lattice_image(A, cell)) {
            auto it = Q.index.find(key);
            if (it != Q.index.end())
                sparse_axpy(img, v, {{it->second, Rational(1)}});
        }
        SparseVec phi;
        for (const auto& [r, v] : img)
            phi.emplace_back(nqp + r, -v);
        bq_cols.push_back(std::move(img));
        phi_cols.push_back(std::move(phi));
    }
    int r_phi = rank(SparseMatrix::from_columns(nqp + nq, phi_cols));
    int r_s = rank(SparseMatrix::from_columns(nqp, s_cols));
    int r_b = rank(SparseMatrix::from_columns(nq, bq_cols));
    return r_phi - r_s - r_b;
}

} // namespace

CurvedAlgebra curved_line_from_potential(const std::vector<Rational>& w_coeffs, int T)
{
    SparseVec h;
    for (int k = 0; k < static_cast<int>(w_coeffs.size()); ++k)
        if (!w_coeffs[k].is_zero() && k <= T)
            h.emplace_back(k, -w_coeffs[k]);
    return CurvedAlgebra::truncated_line(T + 1, h);
}

HPResult hp_dims(const CurvedAlgebra& A, HPParams p)
{
    A.validate();
    const auto& alg = A.algebra;
    if (!alg.weights_nondecreasing())
        throw std::invalid_argument("hp: products must not lower weight");
    if (A.has_d())
        for (int x = 0; x < alg.dim; ++x)
            for (const auto& [i, c] : A.d[x])
                if (alg.weight[i] < alg.weight[x])
                    throw std::invalid_argument("hp: d must not lower weight");
    if (p.e == 0) {
        int e = 0;
        for (const auto& [i, c] : A.h)
            e = std::max(e, alg.weight[i]);
        p.e = e > 0 ? e : 2;
    }
    if (p.lag == 0)
        p.lag = p.e + 1;

    std::map<int, Lattice> cache;
    auto lattice = [&](int bound) -> const Lattice& {
        auto it = cache.find(bound);
        if (it == cache.end())
            it = cache.emplace(bound, build_lattice(A, bound, p.e)).first;
        return it->second;
    };
    HPResult r;
    r.params = p;
    auto R = [&](int m, int parity) {
        const Lattice& Qp = lattice(m + p.lag);
        r.cells = std::max<long long>(r.cells, static_cast<long long>(Qp.cells.size()));
        return lattice_rank_term(A, Qp, lattice(m), p.N, parity);
    };
    auto hp_at = [&](int m) {
        ParityDims d;
        d.even = R(m + p.e, 0) - R(m, 0);
        d.odd = R(m + p.e, 1) - R(m, 1);
        return d;
    };
    r.dims = hp_at(p.m);
    r.dims_next = hp_at(p.m + 2);
    r.stable = r.dims == r.dims_next;
    return r;
}

UConnectionReport u_connection_check(const HochschildWindow& w, const std::map<int, SparseMatrix>& a_terms)
{
    SparseMatrix b = w.matrix(hochschild_b);
    SparseMatrix B = w.matrix(connes_B);
    const int n = static_cast<int>(w.chains().size());
    // lhs = B + sum_k u^k [a_k, b] + u^{k+1} [a_k, B]; rhs = (1/2) u^{-1} b + (1/2) B
    std::map<int, SparseMatrix> diff;
    auto acc = [&](int k, const SparseMatrix& m) {
        auto it = diff.find(k);
        if (it == diff.end())
            diff.emplace(k, m);
        else
            it->second = it->second + m;
    };
    acc(0, B.scaled(Rational(1, 2)));
    acc(-1, b.scaled(Rational(-1, 2)));
    for (const auto& [k, a] : a_terms) {
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("u-connection: matrices must act on the window basis");
        acc(k, a * b - b * a);
        acc(k + 1, a * B - B * a);
    }
    UConnectionReport rep;
    auto interior = w.interior_indices();
    for (const auto& [k, m] : diff)
        for (int c : interior)
            if (!m.column(c).empty()) {
                rep.holds = false;
                rep.witness_power = k;
                rep.witness_chain = c;
                return rep;
            }
    return rep;
}

} // namespace chainlab
