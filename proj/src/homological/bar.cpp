#include "chainlab/bar.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chainlab {

namespace {

bool module_weight_graded(const FiniteAlgebra& a, const FiniteModule& m)
{
    for (int x = 0; x < a.dim; ++x)
        for (const auto& t : m.act[x].entries())
            if (m.weight[t.row] != m.weight[t.col] + a.weight[x])
                return false;
    return true;
}

} // namespace

void AugmentedAlgebraModulePair::validate() const
{
    algebra.validate();
    for (int p : algebra.parity)
        if (p != 0)
            throw std::invalid_argument("bar complex: only even algebras are supported");
    right.validate(algebra, true);
    left.validate(algebra, false);
    if (weight_cutoff) {
        if (!algebra.is_weight_graded() || !module_weight_graded(algebra, right) ||
            !module_weight_graded(algebra, left))
            throw std::invalid_argument("bar complex: weight cutoff needs weight-graded data");
        for (int i = 1; i < algebra.dim; ++i)
            if (algebra.weight[i] < 1)
                throw std::invalid_argument("bar complex: weight cutoff needs positive weights off the unit");
    }
}

BarComplex::BarComplex(const AugmentedAlgebraModulePair& p, int window) : pair_(&p), window_(window)
{
    if (window < 0)
        throw std::invalid_argument("bar complex: negative window");
    p.validate();
    const auto& A = p.algebra;
    const auto& M = p.right;
    const auto& N = p.left;
    const int cutoff = p.weight_cutoff.value_or(std::numeric_limits<int>::max());

    chains_.assign(window + 1, {});
    lookup_.assign(window + 1, {});
    for (int len = 0; len <= window; ++len) {
        std::vector<int> bars;
        auto emit = [&](int m, int wt) {
            for (int n = 0; n < N.dim; ++n) {
                int w = wt + N.weight[n];
                if (w > cutoff)
                    continue;
                lookup_[len][{m, bars, n}] = static_cast<int>(chains_[len].size());
                chains_[len].push_back({m, bars, n, w});
            }
        };
        for (int m = 0; m < M.dim; ++m) {
            auto rec = [&](auto&& self, int depth, int wt) -> void {
                if (wt > cutoff)
                    return;
                if (depth == len) {
                    emit(m, wt);
                    return;
                }
                for (int a = 1; a < A.dim; ++a) {
                    bars.push_back(a);
                    self(self, depth + 1, wt + A.weight[a]);
                    bars.pop_back();
                }
            };
            rec(rec, 0, M.weight[m]);
        }
    }

    std::map<int, int> dims;
    std::map<int, SparseMatrix> diffs;
    for (int len = 0; len <= window; ++len)
        dims[-len] = static_cast<int>(chains_[len].size());
    for (int len = 1; len <= window; ++len) {
        std::vector<SparseVec> cols;
        cols.reserve(chains_[len].size());
        for (int i = 0; i < static_cast<int>(chains_[len].size()); ++i)
            cols.push_back(boundary(len, i));
        diffs[-len] = SparseMatrix::from_columns(dims[-len + 1], cols);
    }
    complex_ = ChainComplex(std::move(dims), std::move(diffs));
}

int BarComplex::index(int m, const std::vector<int>& bars, int n) const
{
    int len = static_cast<int>(bars.size());
    if (len > window_)
        return -1;
    auto it = lookup_[len].find({m, bars, n});
    return it == lookup_[len].end() ? -1 : it->second;
}

int BarComplex::index(const BarChain& c) const
{
    return index(c.m, c.bars, c.n);
}

SparseVec BarComplex::boundary(int len, int idx) const
{
    const auto& A = pair_->algebra;
    const auto& M = pair_->right;
    const auto& N = pair_->left;
    const BarChain& c = chains_.at(len).at(idx);
    SparseVec out;
    auto put = [&](int m, const std::vector<int>& bars, int n, const Rational& v) {
        int j = index(m, bars, n);
        if (j >= 0)
            sparse_axpy(out, v, {{j, Rational(1)}});
    };
    if (len == 0)
        return out;

    std::vector<int> rest(c.bars.begin() + 1, c.bars.end());
    for (const auto& [m2, v] : M.act[c.bars.front()].column(c.m))
        put(m2, rest, c.n, v);

    for (int i = 0; i + 1 < len; ++i) {
        Rational s(i % 2 == 0 ? -1 : 1);
        for (const auto& [k, v] : A.product(c.bars[i], c.bars[i + 1])) {
            if (k == 0)
                continue;
            std::vector<int> nb;
            nb.reserve(len - 1);
            nb.insert(nb.end(), c.bars.begin(), c.bars.begin() + i);
            nb.push_back(k);
            nb.insert(nb.end(), c.bars.begin() + i + 2, c.bars.end());
            put(c.m, nb, c.n, s * v);
        }
    }

    std::vector<int> front(c.bars.begin(), c.bars.end() - 1);
    Rational s(len % 2 == 0 ? 1 : -1);
    for (const auto& [n2, v] : N.act[c.bars.back()].column(c.n))
        put(c.m, front, n2, s * v);
    return out;
}

TorResult bar_tor_dims(const AugmentedAlgebraModulePair& p, int window)
{
    BarComplex small(p, window);
    BarComplex big(p, window + 1);
    auto h0 = cohomology_dims(small.complex());
    auto h1 = cohomology_dims(big.complex());
    TorResult r;
    for (int k = 0; k <= window; ++k) {
        int v = h0.count(-k) ? h0.at(-k) : 0;
        int w = h1.count(-k) ? h1.at(-k) : 0;
        r.dims[k] = v;
        r.certified[k] = k < window && v == w;
    }
    return r;
}

int tensor_over_algebra_dim(const AugmentedAlgebraModulePair& p)
{
    const auto& A = p.algebra;
    const auto& M = p.right;
    const auto& N = p.left;
    auto idx = [&](int m, int n) { return m * N.dim + n; };
    std::vector<SparseVec> rel;
    for (int a = 1; a < A.dim; ++a)
        for (int m = 0; m < M.dim; ++m)
            for (int n = 0; n < N.dim; ++n) {
                SparseVec v;
                for (const auto& [m2, c] : M.act[a].column(m))
                    sparse_axpy(v, c, {{idx(m2, n), Rational(1)}});
                for (const auto& [n2, c] : N.act[a].column(n))
                    sparse_axpy(v, -c, {{idx(m, n2), Rational(1)}});
                if (!v.empty())
                    rel.push_back(std::move(v));
            }
    int total = M.dim * N.dim;
    return total - rank(SparseMatrix::from_columns(total, rel));
}

AntisymMap antisymmetrization(const AugmentedAlgebraModulePair& p, const BarComplex& bar, int n)
{
    const auto& A = p.algebra;
    const auto& M = p.right;
    const auto& N = p.left;
    AntisymMap out;
    for (int a = 1; a < A.dim; ++a)
        if (M.act[a].is_zero() && N.act[a].is_zero())
            out.domain.annihilators.push_back(a);

    const auto& J = out.domain.annihilators;
    std::vector<std::vector<int>> subsets;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == n) {
            subsets.push_back(cur);
            return;
        }
        for (int i = start; i < static_cast<int>(J.size()); ++i) {
            cur.push_back(J[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);

    std::vector<SparseVec> cols;
    for (int m = 0; m < M.dim; ++m)
        for (const auto& s : subsets)
            for (int k = 0; k < N.dim; ++k) {
                out.domain.basis.emplace_back(m, s, k);
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                SparseVec v;
                do {
                    int inv = 0;
                    for (int i = 0; i < n; ++i)
                        for (int j = i + 1; j < n; ++j)
                            if (perm[i] > perm[j])
                                ++inv;
                    std::vector<int> bars(n);
                    for (int i = 0; i < n; ++i)
                        bars[i] = s[perm[i]];
                    int j = bar.index(m, bars, k);
                    if (j >= 0)
                        sparse_axpy(v, Rational(inv % 2 ? -1 : 1), {{j, Rational(1)}});
                } while (std::next_permutation(perm.begin(), perm.end()));
                cols.push_back(std::move(v));
            }
    int rows = n <= bar.window() ? static_cast<int>(bar.chains(n).size()) : 0;
    out.matrix = SparseMatrix::from_columns(rows, cols);
    return out;
}

FilteredComplex bar_length_filtration(const BarComplex& bar)
{
    const int w = bar.window();
    std::vector<std::map<int, std::vector<SparseVec>>> levels;
    for (int p = -w; p <= 1; ++p) {
        std::map<int, std::vector<SparseVec>> lv;
        for (int len = 0; len <= -p; ++len) {
            auto& vecs = lv[-len];
            for (int i = 0; i < static_cast<int>(bar.chains(len).size()); ++i)
                vecs.push_back({{i, Rational(1)}});
        }
        levels.push_back(std::move(lv));
    }
    return FilteredComplex(bar.complex(), std::move(levels), -w);
}

} // namespace chainlab
