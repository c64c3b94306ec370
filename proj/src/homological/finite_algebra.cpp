#include "chainlab/finite_algebra.hpp"

#include "chainlab/complex.hpp"

#include <algorithm>

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

} // namespace

void FiniteAlgebra::validate() const
{
    if (dim < 1 || static_cast<int>(parity.size()) != dim || static_cast<int>(weight.size()) != dim ||
        static_cast<int>(mult.size()) != dim * dim)
        throw std::invalid_argument("FiniteAlgebra: inconsistent sizes");
    if (parity[0] != 0)
        throw InvariantViolation("FiniteAlgebra: unit must be even");
    for (int a = 0; a < dim; ++a) {
        SparseVec e{{a, Rational(1)}};
        if (product(0, a) != e || product(a, 0) != e)
            throw InvariantViolation("FiniteAlgebra: basis element 0 is not a unit");
    }
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (const auto& [c, v] : product(a, b))
                if (parity[c] != ((parity[a] + parity[b]) & 1))
                    throw InvariantViolation("FiniteAlgebra: product does not respect parity");
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c) {
                SparseVec ab = product(a, b);
                SparseVec bc = product(b, c);
                SparseVec l = mult_vec(*this, ab, {{c, Rational(1)}});
                SparseVec r = mult_vec(*this, {{a, Rational(1)}}, bc);
                if (l != r)
                    throw InvariantViolation("FiniteAlgebra: not associative");
            }
}

bool FiniteAlgebra::is_graded_commutative() const
{
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            int s = (parity[a] * parity[b]) & 1;
            SparseVec ba = product(b, a);
            if (s)
                ba = sparse_scale(ba, Rational(-1));
            if (product(a, b) != ba)
                return false;
        }
    return true;
}

bool FiniteAlgebra::is_weight_graded() const
{
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (const auto& [c, v] : product(a, b))
                if (weight[c] != weight[a] + weight[b])
                    return false;
    return true;
}

bool FiniteAlgebra::weights_nondecreasing() const
{
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (const auto& [c, v] : product(a, b))
                if (weight[c] < weight[a] + weight[b])
                    return false;
    return true;
}

FiniteAlgebra FiniteAlgebra::from_truncated(const TruncatedPolyAlgebra& alg)
{
    FiniteAlgebra a;
    const auto& basis = alg.basis();
    a.dim = static_cast<int>(basis.size());
    a.mult.resize(a.dim * a.dim);
    for (int i = 0; i < a.dim; ++i) {
        a.parity.push_back(alg.parity(basis[i]));
        a.weight.push_back(total_degree(basis[i]));
        a.names.push_back(monomial_str(alg, basis[i]));
    }
    Monomial out;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            int s = alg.multiply(basis[i], basis[j], out);
            if (s == 0)
                continue;
            int k = alg.basis_index(out);
            a.mult[i * a.dim + j] = {{k, Rational(s)}};
        }
    return a;
}

FiniteAlgebra FiniteAlgebra::truncated_line(int n)
{
    FiniteAlgebra a;
    a.dim = n;
    a.mult.resize(n * n);
    for (int i = 0; i < n; ++i) {
        a.parity.push_back(0);
        a.weight.push_back(i);
        a.names.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
        for (int j = 0; j < n; ++j)
            if (i + j < n)
                a.mult[i * n + j] = {{i + j, Rational(1)}};
    }
    return a;
}

FiniteAlgebra FiniteAlgebra::ground_field()
{
    return truncated_line(1);
}

void FiniteModule::validate(const FiniteAlgebra& a, bool right) const
{
    if (static_cast<int>(act.size()) != a.dim)
        throw std::invalid_argument("FiniteModule: need one action matrix per basis element");
    for (const auto& m : act)
        if (m.rows() != dim || m.cols() != dim)
            throw std::invalid_argument("FiniteModule: action matrix shape");
    if (!(act[0] == SparseMatrix::identity(dim)))
        throw InvariantViolation("FiniteModule: unit does not act as identity");
    for (int x = 0; x < a.dim; ++x)
        for (int y = 0; y < a.dim; ++y) {
            SparseMatrix prod(dim, dim);
            for (const auto& [k, c] : a.product(x, y))
                prod = prod + act[k].scaled(c);
            SparseMatrix comp = right ? act[y] * act[x] : act[x] * act[y];
            if (!(prod == comp))
                throw InvariantViolation("FiniteModule: action is not associative");
        }
}

FiniteModule FiniteModule::augmentation(const FiniteAlgebra& a)
{
    FiniteModule m;
    m.dim = 1;
    m.weight = {0};
    m.names = {"1"};
    for (int i = 0; i < a.dim; ++i)
        m.act.push_back(i == 0 ? SparseMatrix::identity(1) : SparseMatrix(1, 1));
    return m;
}

FiniteModule FiniteModule::regular(const FiniteAlgebra& a)
{
    FiniteModule m;
    m.dim = a.dim;
    m.weight = a.weight;
    m.names = a.names;
    for (int i = 0; i < a.dim; ++i) {
        std::vector<SparseVec> cols;
        for (int j = 0; j < a.dim; ++j)
            cols.push_back(a.product(i, j));
        m.act.push_back(SparseMatrix::from_columns(a.dim, cols));
    }
    return m;
}

FiniteModule FiniteModule::monomial_quotient(const FiniteAlgebra& a, const TruncatedPolyAlgebra& alg,
                                             const std::vector<std::string>& killed)
{
    std::vector<int> kill;
    for (const auto& k : killed)
        kill.push_back(alg.index_of(k));
    const auto& basis = alg.basis();
    std::vector<int> keep, pos(a.dim, -1);
    for (int i = 0; i < a.dim; ++i) {
        bool divisible = false;
        for (int k : kill)
            if (basis[i][k] > 0)
                divisible = true;
        if (!divisible) {
            pos[i] = static_cast<int>(keep.size());
            keep.push_back(i);
        }
    }
    FiniteModule m;
    m.dim = static_cast<int>(keep.size());
    for (int i : keep) {
        m.weight.push_back(a.weight[i]);
        m.names.push_back(a.names[i]);
    }
    for (int x = 0; x < a.dim; ++x) {
        std::vector<Triplet> t;
        for (int j = 0; j < m.dim; ++j)
            for (const auto& [k, c] : a.product(x, keep[j]))
                if (pos[k] >= 0)
                    t.push_back({pos[k], j, c});
        m.act.push_back(SparseMatrix::from_triplets(m.dim, m.dim, std::move(t)));
    }
    return m;
}

} // namespace chainlab
