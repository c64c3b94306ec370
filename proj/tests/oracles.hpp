#pragma once

#include "chainlab/rational.hpp"
#include "chainlab/sparse.hpp"

#include <gmpxx.h>

#include <vector>

namespace oracle {

using DenseQ = std::vector<std::vector<mpq_class>>;

inline DenseQ to_dense(const chainlab::SparseMatrix& m)
{
    DenseQ d(m.rows(), std::vector<mpq_class>(m.cols(), 0));
    for (int c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.column(c))
            d[r][c] = v.to_mpq();
    return d;
}

/// Fraction-free Bareiss elimination on an integer matrix.
inline int bareiss_rank(std::vector<std::vector<mpz_class>> a)
{
    const int rows = static_cast<int>(a.size());
    if (rows == 0)
        return 0;
    const int cols = static_cast<int>(a[0].size());
    mpz_class prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[piv], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Rank of a rational matrix by clearing denominators row by row and running Bareiss.
inline int rank_q(const DenseQ& d)
{
    std::vector<std::vector<mpz_class>> a;
    for (const auto& row : d) {
        mpz_class l = 1;
        for (const auto& x : row)
            l = lcm(l, mpz_class(x.get_den()));
        std::vector<mpz_class> z;
        for (const auto& x : row)
            z.push_back(mpz_class(x * l));
        a.push_back(std::move(z));
    }
    return bareiss_rank(std::move(a));
}

inline int rank_q(const chainlab::SparseMatrix& m)
{
    return rank_q(to_dense(m));
}

} // namespace oracle
