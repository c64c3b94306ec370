#include "chainlab/uwindow.hpp"

#include <algorithm>
#include <random>

namespace chainlab {

UWindowScalar::UWindowScalar(int bound, const Rational& c, int exponent) : bound_(bound)
{
    set(exponent, c);
}

void UWindowScalar::check(int e) const
{
    if (e < -bound_ || e > bound_)
        throw WindowOverflow("u-exponent " + std::to_string(e) + " outside window [-" +
                             std::to_string(bound_) + ", " + std::to_string(bound_) + "]");
}

Rational UWindowScalar::coefficient(int e) const
{
    auto it = coef_.find(e);
    return it == coef_.end() ? Rational(0) : it->second;
}

void UWindowScalar::set(int exponent, const Rational& c)
{
    if (c.is_zero()) {
        coef_.erase(exponent);
        return;
    }
    check(exponent);
    coef_[exponent] = c;
}

Rational UWindowScalar::evaluate(const Rational& u) const
{
    Rational s(0);
    for (const auto& [e, c] : coef_) {
        Rational p(1);
        Rational base = e >= 0 ? u : u.inverse();
        for (int k = 0; k < std::abs(e); ++k)
            p *= base;
        s.add_mul(c, p);
    }
    return s;
}

UWindowScalar UWindowScalar::operator+(const UWindowScalar& o) const
{
    UWindowScalar r(std::max(bound_, o.bound_));
    r.coef_ = coef_;
    for (const auto& [e, c] : o.coef_)
        r.set(e, r.coefficient(e) + c);
    return r;
}

UWindowScalar UWindowScalar::operator-(const UWindowScalar& o) const
{
    UWindowScalar r(std::max(bound_, o.bound_));
    r.coef_ = coef_;
    for (const auto& [e, c] : o.coef_)
        r.set(e, r.coefficient(e) - c);
    return r;
}

UWindowScalar UWindowScalar::operator*(const UWindowScalar& o) const
{
    UWindowScalar r(std::max(bound_, o.bound_));
    for (const auto& [e1, c1] : coef_)
        for (const auto& [e2, c2] : o.coef_)
            r.set(e1 + e2, r.coefficient(e1 + e2) + c1 * c2);
    return r;
}

UWindowScalar UWindowScalar::shifted(int k) const
{
    UWindowScalar r(bound_);
    for (const auto& [e, c] : coef_)
        r.set(e + k, c);
    return r;
}

void UMatrix::add(int r, int c, const Rational& v, int exponent)
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("UMatrix: index");
    auto key = std::make_pair(r, c);
    auto it = entries_.find(key);
    UWindowScalar cur = it == entries_.end() ? UWindowScalar(bound_) : it->second;
    cur.set(exponent, cur.coefficient(exponent) + v);
    if (cur.is_zero())
        entries_.erase(key);
    else
        entries_[key] = cur;
}

UWindowScalar UMatrix::at(int r, int c) const
{
    auto it = entries_.find({r, c});
    return it == entries_.end() ? UWindowScalar(bound_) : it->second;
}

SparseMatrix UMatrix::evaluate(const Rational& u) const
{
    std::vector<Triplet> t;
    t.reserve(entries_.size());
    for (const auto& [rc, s] : entries_)
        t.push_back({rc.first, rc.second, s.evaluate(u)});
    return SparseMatrix::from_triplets(rows_, cols_, std::move(t));
}

UMatrix UMatrix::linear(const SparseMatrix& m0, const SparseMatrix& m1, int bound)
{
    if (m0.rows() != m1.rows() || m0.cols() != m1.cols())
        throw std::invalid_argument("UMatrix::linear: shape mismatch");
    UMatrix m(m0.rows(), m0.cols(), bound);
    for (const auto& t : m0.entries())
        m.add(t.row, t.col, t.value, 0);
    for (const auto& t : m1.entries())
        m.add(t.row, t.col, t.value, 1);
    return m;
}

std::vector<Rational> sample_points(int count, std::uint64_t seed, int height)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> num(-height, height);
    std::uniform_int_distribution<long long> den(1, height);
    std::vector<Rational> pts;
    while (static_cast<int>(pts.size()) < count) {
        Rational r(num(rng), den(rng));
        if (r.is_zero() || std::find(pts.begin(), pts.end(), r) != pts.end())
            continue;
        pts.push_back(r);
    }
    return pts;
}

int rank_sampled(const UMatrix& m, int samples, std::uint64_t seed)
{
    int best = 0;
    for (const Rational& u : sample_points(samples, seed))
        best = std::max(best, rank(m.evaluate(u)));
    return best;
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

Poly pmul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j].add_mul(a[i], b[j]);
    trim(r);
    return r;
}

Poly psub(Poly a, const Poly& b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

/// Exact division a / b, assuming b divides a.
Poly pdiv(Poly a, const Poly& b)
{
    if (b.empty())
        throw std::domain_error("pdiv by zero");
    if (a.empty())
        return {};
    Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
    Rational lead = b.back().inverse();
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        Rational f = a.back() * lead;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[i + shift].add_mul(-f, b[i]);
        a.pop_back();
        trim(a);
    }
    if (!a.empty())
        throw std::logic_error("pdiv: inexact division");
    trim(q);
    return q;
}

} // namespace

int rank_fraction_field(const UMatrix& m)
{
    int R = m.rows(), C = m.cols(), B = m.bound();
    std::vector<std::vector<Poly>> a(R, std::vector<Poly>(C));
    for (const auto& [rc, s] : m.entries()) {
        Poly p(2 * B + 1);
        for (const auto& [e, c] : s.coefficients())
            p[e + B] = c;
        trim(p);
        a[rc.first][rc.second] = p;
    }
    Poly prev{Rational(1)};
    int rank = 0;
    for (int col = 0; col < C && rank < R; ++col) {
        int piv = -1;
        for (int r = rank; r < R; ++r)
            if (!a[r][col].empty()) {
                piv = r;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(a[piv], a[rank]);
        for (int r = rank + 1; r < R; ++r) {
            for (int c = col + 1; c < C; ++c) {
                Poly t = psub(pmul(a[rank][col], a[r][c]), pmul(a[r][col], a[rank][c]));
                a[r][c] = pdiv(t, prev);
            }
            a[r][col].clear();
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

} // namespace chainlab
