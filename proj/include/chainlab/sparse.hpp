#pragma once

#include "chainlab/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace chainlab {

/// Sparse vector: strictly increasing indices, no stored zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

void sparse_axpy(SparseVec& y, const Rational& a, const SparseVec& x);
SparseVec sparse_scale(const SparseVec& x, const Rational& a);
SparseVec sparse_from_dense(const std::vector<Rational>& d);
std::vector<Rational> sparse_to_dense(const SparseVec& v, int n);

struct Triplet {
    int row;
    int col;
    Rational value;
};

/**
 * Column-major sparse matrix over the rationals.
 *
 * Entries are kept per column, sorted by row, with no duplicates and no
 * explicit zeros. Construction through the builder functions enforces
 * this; duplicates passed to from_triplets are summed.
 */
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);

    static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);
    static SparseMatrix from_columns(int rows, std::vector<SparseVec> columns);
    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
    static SparseMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t nnz() const;

    const SparseVec& column(int c) const { return cols_data_[c]; }
    std::vector<Triplet> entries() const;
    Rational at(int r, int c) const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    SparseMatrix scaled(const Rational& a) const;
    SparseVec apply(const SparseVec& v) const;
    bool is_zero() const;

    /// Restrict to the given rows and columns (in the given order).
    SparseMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<SparseVec> cols_data_;
};

/// Connected components of the bipartite row/column incidence graph.
struct Block {
    std::vector<int> rows;
    std::vector<int> cols;
};
std::vector<Block> block_decomposition(const SparseMatrix& m);

/**
 * Incremental column reducer.
 *
 * Columns are reduced against earlier pivots in a fixed row order. With
 * tracking enabled every reduced column remembers the combination of input
 * columns that produced it, which yields kernels and solutions.
 */
class ColumnReducer {
public:
    explicit ColumnReducer(int rows, bool track = false, std::vector<int> row_order = {});

    /// Reduce and insert a column. Returns true if it increased the rank.
    bool add(const SparseVec& column);

    /// Reduce v against the current pivots; returns the residue.
    SparseVec reduce(SparseVec v, SparseVec* combo = nullptr) const;
    bool in_span(const SparseVec& v) const { return reduce(v).empty(); }

    int rank() const { return static_cast<int>(pivots_.size()); }
    int inserted() const { return inserted_; }

    /// Kernel combinations found so far (only with tracking).
    const std::vector<SparseVec>& kernel() const { return kernel_; }

    /// Combination of inserted columns reproducing v, if v is in the span.
    std::optional<SparseVec> express(const SparseVec& v) const;

private:
    struct Pivot {
        SparseVec vec;
        SparseVec combo;
    };
    int lead(const SparseVec& v) const;
    SparseVec reorder(const SparseVec& v) const;

    int rows_;
    bool track_;
    std::vector<int> pos_;
    std::vector<int> inv_;
    std::vector<int> pivot_of_;
    std::vector<Pivot> pivots_;
    std::vector<SparseVec> kernel_;
    int inserted_ = 0;
};

int rank(const SparseMatrix& m);
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
int cokernel_dim(const SparseMatrix& m);
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);

/// Rank of the columns with the given indices.
int rank_of_columns(const SparseMatrix& m, const std::vector<int>& cols);

} // namespace chainlab
