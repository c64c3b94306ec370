#include "chainlab/complex.hpp"

#include <algorithm>
#include <numeric>

namespace chainlab {

ChainComplex::ChainComplex(std::map<int, int> dims, std::map<int, SparseMatrix> diffs)
    : dims_(std::move(dims)), diffs_(std::move(diffs))
{
    for (const auto& [n, d] : diffs_) {
        if (d.cols() != dim(n) || d.rows() != dim(n + 1))
            throw std::invalid_argument("ChainComplex: differential out of degree " + std::to_string(n) +
                                        " has wrong shape");
    }
    for (const auto& [n, d] : diffs_) {
        auto it = diffs_.find(n + 1);
        if (it == diffs_.end())
            continue;
        if (!(it->second * d).is_zero())
            throw InvariantViolation("ChainComplex: d^2 != 0 at degree " + std::to_string(n));
    }
}

int ChainComplex::lo() const
{
    return dims_.empty() ? 0 : dims_.begin()->first;
}

int ChainComplex::hi() const
{
    return dims_.empty() ? -1 : dims_.rbegin()->first;
}

int ChainComplex::dim(int n) const
{
    auto it = dims_.find(n);
    return it == dims_.end() ? 0 : it->second;
}

SparseMatrix ChainComplex::diff(int n) const
{
    auto it = diffs_.find(n);
    if (it != diffs_.end())
        return it->second;
    return SparseMatrix(dim(n + 1), dim(n));
}

std::map<int, int> cohomology_dims(const ChainComplex& c)
{
    std::map<int, int> out;
    std::map<int, int> rk;
    for (const auto& [n, d] : c.dims())
        rk[n] = c.has_diff(n) ? rank(c.diff(n)) : 0;
    for (const auto& [n, d] : c.dims()) {
        int in = rk.count(n - 1) ? rk[n - 1] : 0;
        out[n] = d - rk[n] - in;
    }
    return out;
}

long long euler_characteristic(const std::map<int, int>& dims)
{
    long long chi = 0;
    for (const auto& [n, d] : dims)
        chi += (n % 2 == 0) ? d : -d;
    return chi;
}

long long euler_characteristic(const ChainComplex& c)
{
    return euler_characteristic(c.dims());
}

ChainComplex cone(const ChainComplex& a, const ChainComplex& b, const std::map<int, SparseMatrix>& f)
{
    int lo = std::min(a.lo() - 1, b.lo());
    int hi = std::max(a.hi() - 1, b.hi());
    std::map<int, int> dims;
    for (int n = lo; n <= hi; ++n)
        dims[n] = a.dim(n + 1) + b.dim(n);
    std::map<int, SparseMatrix> diffs;
    for (int n = lo; n < hi; ++n) {
        int an = a.dim(n + 1), bn = b.dim(n);
        std::vector<Triplet> t;
        SparseMatrix da = a.diff(n + 1);
        for (const auto& e : da.entries())
            t.push_back({e.row, e.col, -e.value});
        auto it = f.find(n + 1);
        if (it != f.end()) {
            if (it->second.rows() != b.dim(n + 1) || it->second.cols() != a.dim(n + 1))
                throw std::invalid_argument("cone: map has wrong shape");
            for (const auto& e : it->second.entries())
                t.push_back({a.dim(n + 2) + e.row, e.col, e.value});
        }
        SparseMatrix db = b.diff(n);
        for (const auto& e : db.entries())
            t.push_back({a.dim(n + 2) + e.row, an + e.col, e.value});
        diffs.emplace(n, SparseMatrix::from_triplets(dims[n + 1], an + bn, std::move(t)));
    }
    return ChainComplex(std::move(dims), std::move(diffs));
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b)
{
    int lo = a.lo() + b.lo(), hi = a.hi() + b.hi();
    std::map<int, int> dims;
    std::map<std::pair<int, int>, int> offset;
    for (int n = lo; n <= hi; ++n) {
        int off = 0;
        for (int i = a.lo(); i <= a.hi(); ++i) {
            int j = n - i;
            offset[{i, j}] = off;
            off += a.dim(i) * b.dim(j);
        }
        dims[n] = off;
    }
    std::map<int, SparseMatrix> diffs;
    for (int n = lo; n < hi; ++n) {
        std::vector<Triplet> t;
        for (int i = a.lo(); i <= a.hi(); ++i) {
            int j = n - i;
            int bi = b.dim(j);
            if (a.dim(i) == 0 || bi == 0)
                continue;
            int src = offset[{i, j}];
            if (a.dim(i + 1) > 0) {
                int dst = offset[{i + 1, j}];
                for (const auto& e : a.diff(i).entries())
                    for (int y = 0; y < bi; ++y)
                        t.push_back({dst + e.row * bi + y, src + e.col * bi + y, e.value});
            }
            if (b.dim(j + 1) > 0) {
                int dst = offset[{i, j + 1}];
                int bj1 = b.dim(j + 1);
                Rational s = (i % 2 == 0) ? Rational(1) : Rational(-1);
                for (const auto& e : b.diff(j).entries())
                    for (int x = 0; x < a.dim(i); ++x)
                        t.push_back({dst + x * bj1 + e.row, src + x * bi + e.col, s * e.value});
            }
        }
        diffs.emplace(n, SparseMatrix::from_triplets(dims[n + 1], dims[n], std::move(t)));
    }
    return ChainComplex(std::move(dims), std::move(diffs));
}

namespace {

std::vector<int> indices_where(const std::vector<bool>& mask, bool value)
{
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(mask.size()); ++i)
        if (mask[i] == value)
            out.push_back(i);
    return out;
}

std::vector<int> all_indices(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void check_subcomplex(const SparseMatrix& d, const std::vector<bool>& keep_src, const std::vector<bool>& keep_dst)
{
    for (int c = 0; c < d.cols(); ++c) {
        if (keep_src[c])
            continue;
        for (const auto& e : d.column(c))
            if (keep_dst[e.first])
                throw InvariantViolation("persistent image: discarded part is not a subcomplex");
    }
}

int image_term(const SparseMatrix& dout, const SparseMatrix& din, const std::vector<bool>& keep_n,
               const std::vector<bool>& keep_next, const std::vector<bool>& keep_prev)
{
    check_subcomplex(dout, keep_n, keep_next);
    int q = static_cast<int>(std::count(keep_n.begin(), keep_n.end(), true));
    int full = rank(dout);
    int onk = rank(dout.submatrix(all_indices(dout.rows()), indices_where(keep_n, false)));
    int bq = rank(din.submatrix(indices_where(keep_n, true), indices_where(keep_prev, true)));
    return q - full + onk - bq;
}

} // namespace

std::map<int, int> persistent_image_dims(const ChainComplex& c, const std::map<int, std::vector<bool>>& keep)
{
    auto mask = [&](int n) {
        auto it = keep.find(n);
        if (it == keep.end())
            return std::vector<bool>(c.dim(n), true);
        if (static_cast<int>(it->second.size()) != c.dim(n))
            throw std::invalid_argument("persistent_image_dims: mask size mismatch");
        return it->second;
    };
    std::map<int, int> out;
    for (const auto& [n, d] : c.dims())
        out[n] = image_term(c.diff(n), c.diff(n - 1), mask(n), mask(n + 1), mask(n - 1));
    return out;
}

void PeriodicComplex::validate() const
{
    if (d0.cols() != dim_even || d0.rows() != dim_odd || d1.cols() != dim_odd || d1.rows() != dim_even)
        throw std::invalid_argument("PeriodicComplex: shape mismatch");
    if (!(d1 * d0).is_zero() || !(d0 * d1).is_zero())
        throw InvariantViolation("PeriodicComplex: d^2 != 0");
}

ParityDims cohomology_dims(const PeriodicComplex& c)
{
    int r0 = rank(c.d0), r1 = rank(c.d1);
    return {c.dim_even - r0 - r1, c.dim_odd - r1 - r0};
}

ParityDims persistent_image_dims(const PeriodicComplex& c, const std::vector<bool>& keep_even,
                                 const std::vector<bool>& keep_odd)
{
    if (static_cast<int>(keep_even.size()) != c.dim_even || static_cast<int>(keep_odd.size()) != c.dim_odd)
        throw std::invalid_argument("persistent_image_dims: mask size mismatch");
    ParityDims r;
    r.even = image_term(c.d0, c.d1, keep_even, keep_odd, keep_odd);
    r.odd = image_term(c.d1, c.d0, keep_odd, keep_even, keep_even);
    return r;
}

Subspace::Subspace(int ambient, const std::vector<SparseVec>& spanning) : ambient_(ambient)
{
    ColumnReducer red(ambient_);
    for (const auto& v : spanning)
        if (red.add(v))
            basis_.push_back(v);
}

Subspace Subspace::whole(int ambient)
{
    std::vector<SparseVec> e;
    for (int i = 0; i < ambient; ++i)
        e.push_back({{i, Rational(1)}});
    return Subspace(ambient, e);
}

bool Subspace::contains(const SparseVec& v) const
{
    ColumnReducer red(ambient_);
    for (const auto& b : basis_)
        red.add(b);
    return red.in_span(v);
}

bool Subspace::contains(const Subspace& o) const
{
    ColumnReducer red(ambient_);
    for (const auto& b : basis_)
        red.add(b);
    for (const auto& v : o.basis_)
        if (!red.in_span(v))
            return false;
    return true;
}

Subspace Subspace::operator+(const Subspace& o) const
{
    std::vector<SparseVec> all = basis_;
    all.insert(all.end(), o.basis_.begin(), o.basis_.end());
    return Subspace(ambient_, all);
}

Subspace Subspace::intersect(const Subspace& o) const
{
    ColumnReducer red(ambient_, true);
    for (const auto& b : basis_)
        red.add(b);
    for (const auto& b : o.basis_)
        red.add(b);
    std::vector<SparseVec> out;
    int na = dim();
    for (const auto& k : red.kernel()) {
        SparseVec x;
        for (const auto& [i, c] : k)
            if (i < na)
                sparse_axpy(x, c, basis_[i]);
        out.push_back(std::move(x));
    }
    return Subspace(ambient_, out);
}

Subspace Subspace::image(const SparseMatrix& m) const
{
    std::vector<SparseVec> out;
    for (const auto& b : basis_)
        out.push_back(m.apply(b));
    return Subspace(m.rows(), out);
}

Subspace Subspace::preimage_within(const SparseMatrix& m, const Subspace& target) const
{
    ColumnReducer red(m.rows(), true);
    for (const auto& b : basis_)
        red.add(m.apply(b));
    for (const auto& t : target.basis())
        red.add(t);
    std::vector<SparseVec> out;
    int na = dim();
    for (const auto& k : red.kernel()) {
        SparseVec x;
        for (const auto& [i, c] : k)
            if (i < na)
                sparse_axpy(x, c, basis_[i]);
        if (!x.empty())
            out.push_back(std::move(x));
    }
    return Subspace(ambient_, out);
}

FilteredComplex::FilteredComplex(ChainComplex ambient, std::vector<std::map<int, std::vector<SparseVec>>> levels,
                                 int first_index)
    : ambient_(std::move(ambient)), first_(first_index)
{
    for (const auto& lv : levels) {
        std::map<int, Subspace> m;
        for (const auto& [n, d] : ambient_.dims()) {
            auto it = lv.find(n);
            m.emplace(n, it == lv.end() ? Subspace(d) : Subspace(d, it->second));
        }
        levels_.push_back(std::move(m));
    }
    for (std::size_t p = 0; p < levels_.size(); ++p) {
        for (const auto& [n, s] : levels_[p]) {
            Subspace img = s.image(ambient_.diff(n));
            const Subspace& tgt = levels_[p].count(n + 1) ? levels_[p].at(n + 1) : Subspace(ambient_.dim(n + 1));
            if (!tgt.contains(img))
                throw InvariantViolation("FilteredComplex: level " + std::to_string(first_ + int(p)) +
                                         " is not closed under d in degree " + std::to_string(n));
            if (p > 0 && !levels_[p - 1].at(n).contains(s))
                throw InvariantViolation("FilteredComplex: filtration is not decreasing at level " +
                                         std::to_string(first_ + int(p)));
        }
    }
}

Subspace FilteredComplex::level(int p, int n) const
{
    int d = ambient_.dim(n);
    if (p < first_)
        return Subspace::whole(d);
    int k = p - first_;
    if (k >= static_cast<int>(levels_.size()))
        return Subspace(d);
    auto it = levels_[k].find(n);
    return it == levels_[k].end() ? Subspace(d) : it->second;
}

int SpectralPage::at(int p, int q) const
{
    for (const auto& e : entries)
        if (e.p == p && e.q == q)
            return e.dim;
    return 0;
}

int SpectralPage::total(int n) const
{
    int s = 0;
    for (const auto& e : entries)
        if (e.p + e.q == n)
            s += e.dim;
    return s;
}

namespace {

struct SSContext {
    const FilteredComplex& fc;
    std::map<std::tuple<int, int, int>, Subspace> zcache;
    std::map<std::tuple<int, int, int>, Subspace> bcache;

    // Z_r^p in degree n; r = -1 gives F^p.
    const Subspace& Z(int r, int p, int n)
    {
        auto key = std::make_tuple(r, p, n);
        auto it = zcache.find(key);
        if (it != zcache.end())
            return it->second;
        Subspace fp = fc.level(p, n);
        Subspace z = r < 0 ? fp : fp.preimage_within(fc.ambient().diff(n), fc.level(p + r, n + 1));
        return zcache.emplace(key, std::move(z)).first->second;
    }

    // B_r^p in degree n = F^p intersect d(F^{p-r}) from degree n-1.
    const Subspace& B(int r, int p, int n)
    {
        auto key = std::make_tuple(r, p, n);
        auto it = bcache.find(key);
        if (it != bcache.end())
            return it->second;
        Subspace img = fc.level(p - r, n - 1).image(fc.ambient().diff(n - 1));
        Subspace b = fc.level(p, n).intersect(img);
        return bcache.emplace(key, std::move(b)).first->second;
    }

    int E(int r, int p, int n)
    {
        const Subspace& num = Z(r, p, n);
        Subspace den = Z(r - 1, p + 1, n) + B(r - 1, p, n);
        return num.dim() - den.dim();
    }

    int drank(int r, int p, int n)
    {
        const Subspace& num = Z(r, p, n);
        Subspace ker = Z(r + 1, p, n) + Z(r - 1, p + 1, n);
        return num.dim() - ker.dim();
    }
};

} // namespace

std::vector<SpectralPage> spectral_sequence(const FilteredComplex& fc, int r_max)
{
    SSContext ctx{fc, {}, {}};
    const ChainComplex& c = fc.ambient();
    int plo = fc.first_index(), phi = fc.last_index();
    int length = phi - plo + 1;
    int r_last = std::max(r_max, length + 1);
    std::vector<SpectralPage> pages;
    for (int r = 0; r <= r_last; ++r) {
        SpectralPage pg;
        pg.r = r;
        for (int p = plo; p <= phi; ++p)
            for (const auto& [n, d] : c.dims()) {
                if (d == 0)
                    continue;
                int e = ctx.E(r, p, n);
                if (e > 0)
                    pg.entries.push_back({p, n - p, e});
                int rk = ctx.drank(r, p, n);
                if (rk > 0)
                    pg.differentials.push_back({p, n - p, rk});
            }
        pages.push_back(std::move(pg));
    }
    for (int r = r_last; r >= 0; --r) {
        bool quiet = pages[r].differentials.empty();
        bool later = r == r_last || pages[r + 1].converged;
        pages[r].converged = quiet && later;
    }
    pages.resize(r_max + 1);
    return pages;
}

std::map<std::pair<int, int>, int> associated_graded_cohomology(const FilteredComplex& fc)
{
    const ChainComplex& c = fc.ambient();
    std::map<std::pair<int, int>, int> out;
    for (const auto& [n, d] : c.dims()) {
        Subspace all = Subspace::whole(d);
        Subspace zn = all.preimage_within(c.diff(n), Subspace(c.dim(n + 1)));
        Subspace bn = Subspace::whole(c.dim(n - 1)).image(c.diff(n - 1));
        if (bn.ambient() != d)
            bn = Subspace(d);
        int base = bn.dim();
        std::vector<int> fh;
        for (int p = fc.first_index(); p <= fc.last_index() + 1; ++p) {
            Subspace zp = zn.intersect(fc.level(p, n));
            fh.push_back((zp + bn).dim() - base);
        }
        for (int p = fc.first_index(); p <= fc.last_index(); ++p) {
            int k = p - fc.first_index();
            int g = fh[k] - fh[k + 1];
            if (g > 0)
                out[{p, n - p}] = g;
        }
    }
    return out;
}

} // namespace chainlab
