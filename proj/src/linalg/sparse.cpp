#include "chainlab/sparse.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace chainlab {

void sparse_axpy(SparseVec& y, const Rational& a, const SparseVec& x)
{
    if (a.is_zero() || x.empty())
        return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(std::move(y[i]));
            ++i;
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, a * x[j].second);
            ++j;
        } else {
            Rational v = std::move(y[i].second);
            v.add_mul(a, x[j].second);
            if (!v.is_zero())
                out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

SparseVec sparse_scale(const SparseVec& x, const Rational& a)
{
    SparseVec out;
    if (a.is_zero())
        return out;
    out.reserve(x.size());
    for (const auto& [i, v] : x)
        out.emplace_back(i, v * a);
    return out;
}

SparseVec sparse_from_dense(const std::vector<Rational>& d)
{
    SparseVec out;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        if (!d[i].is_zero())
            out.emplace_back(i, d[i]);
    return out;
}

std::vector<Rational> sparse_to_dense(const SparseVec& v, int n)
{
    std::vector<Rational> d(n);
    for (const auto& [i, x] : v)
        d.at(i) = x;
    return d;
}

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), cols_data_(cols)
{
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("SparseMatrix: negative shape");
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries)
{
    SparseMatrix m(rows, cols);
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    for (std::size_t k = 0; k < entries.size();) {
        int r = entries[k].row, c = entries[k].col;
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("SparseMatrix: triplet outside shape");
        Rational s = entries[k].value;
        std::size_t l = k + 1;
        while (l < entries.size() && entries[l].row == r && entries[l].col == c) {
            s += entries[l].value;
            ++l;
        }
        if (!s.is_zero())
            m.cols_data_[c].emplace_back(r, std::move(s));
        k = l;
    }
    return m;
}

SparseMatrix SparseMatrix::from_columns(int rows, std::vector<SparseVec> columns)
{
    SparseMatrix m(rows, static_cast<int>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        auto& col = columns[c];
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec clean;
        for (std::size_t k = 0; k < col.size();) {
            int r = col[k].first;
            if (r < 0 || r >= rows)
                throw std::out_of_range("SparseMatrix: column entry outside shape");
            Rational s = col[k].second;
            std::size_t l = k + 1;
            while (l < col.size() && col[l].first == r)
                s += col[l++].second;
            if (!s.is_zero())
                clean.emplace_back(r, std::move(s));
            k = l;
        }
        m.cols_data_[c] = std::move(clean);
    }
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows)
{
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    SparseMatrix m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) {
            if (static_cast<int>(rows[i].size()) != c)
                throw std::invalid_argument("SparseMatrix: ragged dense input");
            if (!rows[i][j].is_zero())
                m.cols_data_[j].emplace_back(i, rows[i][j]);
        }
    return m;
}

SparseMatrix SparseMatrix::identity(int n)
{
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.cols_data_[i].emplace_back(i, Rational(1));
    return m;
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& c : cols_data_)
        n += c.size();
    return n;
}

std::vector<Triplet> SparseMatrix::entries() const
{
    std::vector<Triplet> out;
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c])
            out.push_back({r, c, v});
    return out;
}

Rational SparseMatrix::at(int r, int c) const
{
    const auto& col = cols_data_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, int key) { return e.first < key; });
    if (it != col.end() && it->first == r)
        return it->second;
    return Rational(0);
}

SparseMatrix SparseMatrix::transpose() const
{
    std::vector<SparseVec> cols(rows_);
    for (int c = 0; c < cols_; ++c)
        for (const auto& [r, v] : cols_data_[c])
            cols[r].emplace_back(c, v);
    SparseMatrix t(cols_, rows_);
    t.cols_data_ = std::move(cols);
    return t;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const
{
    std::map<int, Rational> acc;
    for (const auto& [j, x] : v) {
        if (j < 0 || j >= cols_)
            throw std::out_of_range("SparseMatrix::apply: index");
        for (const auto& [i, a] : cols_data_[j])
            acc[i].add_mul(a, x);
    }
    SparseVec out;
    for (auto& [i, a] : acc)
        if (!a.is_zero())
            out.emplace_back(i, std::move(a));
    return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const
{
    if (cols_ != o.rows_)
        throw std::invalid_argument("SparseMatrix: product shape mismatch");
    SparseMatrix p(rows_, o.cols_);
    for (int c = 0; c < o.cols_; ++c)
        p.cols_data_[c] = apply(o.cols_data_[c]);
    return p;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("SparseMatrix: sum shape mismatch");
    SparseMatrix s = *this;
    for (int c = 0; c < cols_; ++c)
        sparse_axpy(s.cols_data_[c], Rational(1), o.cols_data_[c]);
    return s;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const
{
    return *this + o.scaled(Rational(-1));
}

SparseMatrix SparseMatrix::scaled(const Rational& a) const
{
    SparseMatrix s(rows_, cols_);
    for (int c = 0; c < cols_; ++c)
        s.cols_data_[c] = sparse_scale(cols_data_[c], a);
    return s;
}

bool SparseMatrix::is_zero() const
{
    for (const auto& c : cols_data_)
        if (!c.empty())
            return false;
    return true;
}

SparseMatrix SparseMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const
{
    std::vector<int> rmap(rows_, -1);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        rmap.at(rows[i]) = i;
    SparseMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        SparseVec v;
        for (const auto& [r, x] : cols_data_.at(cols[j]))
            if (rmap[r] >= 0)
                v.emplace_back(rmap[r], x);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        s.cols_data_[j] = std::move(v);
    }
    return s;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cols_data_ == b.cols_data_;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::vector<Block> block_decomposition(const SparseMatrix& m)
{
    int R = m.rows(), C = m.cols();
    UnionFind uf(R + C);
    for (int c = 0; c < C; ++c)
        for (const auto& e : m.column(c))
            uf.unite(R + c, e.first);
    std::map<int, int> id;
    std::vector<Block> blocks;
    auto slot = [&](int x) {
        int root = uf.find(x);
        auto it = id.find(root);
        if (it != id.end())
            return it->second;
        int k = static_cast<int>(blocks.size());
        id[root] = k;
        blocks.emplace_back();
        return k;
    };
    for (int r = 0; r < R; ++r)
        blocks[slot(r)].rows.push_back(r);
    for (int c = 0; c < C; ++c)
        blocks[slot(R + c)].cols.push_back(c);
    return blocks;
}

ColumnReducer::ColumnReducer(int rows, bool track, std::vector<int> row_order)
    : rows_(rows), track_(track), pos_(rows), inv_(rows), pivot_of_(rows, -1)
{
    if (row_order.empty()) {
        row_order.resize(rows);
        std::iota(row_order.begin(), row_order.end(), 0);
    }
    if (static_cast<int>(row_order.size()) != rows)
        throw std::invalid_argument("ColumnReducer: row order size");
    for (int k = 0; k < rows; ++k) {
        pos_[row_order[k]] = k;
        inv_[k] = row_order[k];
    }
}

SparseVec ColumnReducer::reorder(const SparseVec& v) const
{
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [r, x] : v) {
        if (r < 0 || r >= rows_)
            throw std::out_of_range("ColumnReducer: row index");
        out.emplace_back(pos_[r], x);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

SparseVec ColumnReducer::reduce(SparseVec v, SparseVec* combo) const
{
    while (!v.empty()) {
        int p = pivot_of_[v.front().first];
        if (p < 0)
            break;
        Rational f = -v.front().second;
        const Pivot& piv = pivots_[p];
        sparse_axpy(v, f, piv.vec);
        if (combo)
            sparse_axpy(*combo, f, piv.combo);
    }
    return v;
}

bool ColumnReducer::add(const SparseVec& column)
{
    SparseVec v = reorder(column);
    SparseVec combo;
    if (track_)
        combo.emplace_back(inserted_, Rational(1));
    v = reduce(std::move(v), track_ ? &combo : nullptr);
    ++inserted_;
    if (v.empty()) {
        if (track_)
            kernel_.push_back(std::move(combo));
        return false;
    }
    Rational inv = v.front().second.inverse();
    if (!inv.is_one()) {
        v = sparse_scale(v, inv);
        if (track_)
            combo = sparse_scale(combo, inv);
    }
    pivot_of_[v.front().first] = static_cast<int>(pivots_.size());
    pivots_.push_back({std::move(v), std::move(combo)});
    return true;
}

std::optional<SparseVec> ColumnReducer::express(const SparseVec& v) const
{
    if (!track_)
        throw std::logic_error("ColumnReducer::express needs tracking");
    SparseVec combo;
    SparseVec r = reduce(reorder(v), &combo);
    if (!r.empty())
        return std::nullopt;
    return sparse_scale(combo, Rational(-1));
}

namespace {

int rank_block(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    if (rows.empty() || cols.empty())
        return 0;
    SparseMatrix s = m.submatrix(rows, cols);
    std::vector<int> rcount(s.rows(), 0);
    for (int c = 0; c < s.cols(); ++c)
        for (const auto& e : s.column(c))
            ++rcount[e.first];
    std::vector<int> rorder(s.rows());
    std::iota(rorder.begin(), rorder.end(), 0);
    std::stable_sort(rorder.begin(), rorder.end(), [&](int a, int b) { return rcount[a] < rcount[b]; });
    std::vector<int> corder(s.cols());
    std::iota(corder.begin(), corder.end(), 0);
    std::stable_sort(corder.begin(), corder.end(),
                     [&](int a, int b) { return s.column(a).size() < s.column(b).size(); });
    ColumnReducer red(s.rows(), false, rorder);
    int limit = std::min(s.rows(), s.cols());
    for (int c : corder) {
        red.add(s.column(c));
        if (red.rank() == limit)
            break;
    }
    return red.rank();
}

} // namespace

int rank(const SparseMatrix& m)
{
    int r = 0;
    for (const auto& b : block_decomposition(m))
        r += rank_block(m, b.rows, b.cols);
    return r;
}

int rank_of_columns(const SparseMatrix& m, const std::vector<int>& cols)
{
    std::vector<int> rows(m.rows());
    std::iota(rows.begin(), rows.end(), 0);
    return rank(m.submatrix(rows, cols));
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m)
{
    ColumnReducer red(m.rows(), true);
    for (int c = 0; c < m.cols(); ++c)
        red.add(m.column(c));
    return red.kernel();
}

int cokernel_dim(const SparseMatrix& m)
{
    return m.rows() - rank(m);
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b)
{
    ColumnReducer red(m.rows(), true);
    for (int c = 0; c < m.cols(); ++c)
        red.add(m.column(c));
    return red.express(b);
}

} // namespace chainlab
