#include "chainlab/twisted.hpp"

#include "chainlab/expr.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chainlab {

namespace {

using FormKey = std::pair<Monomial, std::vector<int>>;

int even_gen_count(const TruncatedPolyAlgebra& alg)
{
    for (const auto& g : alg.generators())
        if (g.odd)
            throw std::invalid_argument("twisted de Rham: only even generators are supported");
    return alg.ngens();
}

std::vector<std::vector<int>> subsets_of_size(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// sum over i in vars of dx_i ^ (d/dx_i of the coefficients)
KaehlerForm partial_d(const KaehlerForm& w, const std::vector<int>& vars)
{
    const auto& alg = w.algebra();
    int deg = w.degree() + 1;
    if (deg > alg->ngens())
        return KaehlerForm(alg, w.degree());
    KaehlerForm r(alg, deg);
    std::vector<int> sub;
    for (const auto& [k, c] : w.terms())
        for (int j : vars) {
            if (k.first[j] == 0)
                continue;
            int s = insert_sorted(k.second, j, sub);
            if (s == 0)
                continue;
            Monomial m = k.first;
            m[j] -= 1;
            Rational v = c * Rational(k.first[j]);
            r.add_term(m, sub, s > 0 ? v : -v);
        }
    return r;
}

void add_form(FormSum& s, const KaehlerForm& w, const Rational& c = Rational(1))
{
    if (w.is_zero())
        return;
    auto it = s.find(w.degree());
    if (it == s.end()) {
        s.emplace(w.degree(), w.scaled(c));
    } else {
        it->second = it->second + w.scaled(c);
        if (it->second.is_zero())
            s.erase(it);
    }
}

bool form_sums_equal(const FormSum& a, const FormSum& b)
{
    FormSum d = a;
    for (const auto& [k, w] : b)
        add_form(d, w, Rational(-1));
    return d.empty();
}

void add_uform(UForm& u, int j, const KaehlerForm& w, const Rational& c = Rational(1))
{
    if (w.is_zero())
        return;
    if (j < -u.bound || j > u.bound)
        throw WindowOverflow("u-window overflow at exponent " + std::to_string(j));
    auto it = u.terms.find(j);
    if (it == u.terms.end()) {
        u.terms.emplace(j, w.scaled(c));
    } else {
        it->second = it->second + w.scaled(c);
        if (it->second.is_zero())
            u.terms.erase(it);
    }
}

void uform_axpy(UForm& y, const Rational& a, const UForm& x)
{
    for (const auto& [j, w] : x.terms)
        add_uform(y, j, w, a);
}

} // namespace

std::vector<int> filtration_weights(const PolyElement& W)
{
    const int n = W.algebra()->ngens();
    std::vector<int> pure(n, 0);
    for (const auto& [m, c] : W.terms())
        for (int i = 0; i < n; ++i)
            if (m[i] > 0 && total_degree(m) == m[i] && (pure[i] == 0 || m[i] < pure[i]))
                pure[i] = m[i];
    std::vector<int> w(n, 1);
    if (std::count(pure.begin(), pure.end(), 0) > 0)
        return w;
    long long L = 1;
    for (int d : pure)
        L = std::lcm(L, static_cast<long long>(d));
    long long g = 0;
    for (int i = 0; i < n; ++i)
        g = std::gcd(g, L / pure[i]);
    for (int i = 0; i < n; ++i)
        w[i] = static_cast<int>(L / pure[i] / g);
    return w;
}

TwistedDeRham::TwistedDeRham(const PolyElement& W, int D)
    : n_(even_gen_count(*W.algebra())), D_(D), weights_(filtration_weights(W))
{
    if (!W.is_zero() && W.min_degree() == 0)
        throw std::invalid_argument("twisted de Rham: potential must have no constant term");
    const int wmax = n_ ? *std::max_element(weights_.begin(), weights_.end()) : 1;
    auto wt = [&](const Monomial& a) {
        int s = 0;
        for (int i = 0; i < n_; ++i)
            s += a[i] * weights_[i];
        return s;
    };
    s_ = 0;
    for (const auto& [m, c] : W.terms())
        s_ = std::max(s_, wt(m));
    std::vector<std::map<FormKey, int>> index(n_ + 1);
    for (int k = 0; k <= n_; ++k) {
        int bound = D * wmax + k * s_;
        auto& b = basis_[k];
        for (const auto& I : subsets_of_size(n_, k)) {
            int wI = 0;
            for (int i : I)
                wI += weights_[i];
            if (wI > bound)
                continue;
            for (const auto& a : monomials_up_to(n_, bound - wI))
                if (wt(a) + wI <= bound)
                    b.emplace_back(a, I);
        }
        std::sort(b.begin(), b.end(), [](const FormKey& x, const FormKey& y) {
            int dx = total_degree(x.first), dy = total_degree(y.first);
            if (dx != dy)
                return dx < dy;
            return x < y;
        });
        for (int i = 0; i < static_cast<int>(b.size()); ++i)
            index[k][b[i]] = i;
    }
    std::vector<std::vector<std::pair<Monomial, Rational>>> grad(n_);
    for (int i = 0; i < n_; ++i) {
        PolyElement g = partial_derivative(W, i);
        for (const auto& [m, c] : g.terms())
            grad[i].emplace_back(m, c);
    }

    std::vector<int> sub;
    for (int k = 0; k < n_; ++k) {
        std::vector<Triplet> tw, td;
        const auto& src = basis_[k];
        const auto& dst = index[k + 1];
        for (int col = 0; col < static_cast<int>(src.size()); ++col) {
            const auto& [a, I] = src[col];
            for (int i = 0; i < n_; ++i) {
                int s = insert_sorted(I, i, sub);
                if (s == 0)
                    continue;
                for (const auto& [m, c] : grad[i]) {
                    Monomial am = a;
                    for (int v = 0; v < n_; ++v)
                        am[v] += m[v];
                    auto it = dst.find({am, sub});
                    if (it == dst.end())
                        throw InvariantViolation("twisted de Rham: dW leaves the filtered piece");
                    tw.push_back({it->second, col, s > 0 ? -c : c});
                }
                if (a[i] > 0) {
                    Monomial am = a;
                    am[i] -= 1;
                    auto it = dst.find({am, sub});
                    if (it == dst.end())
                        throw InvariantViolation("twisted de Rham: d leaves the filtered piece");
                    Rational v(a[i]);
                    td.push_back({it->second, col, s > 0 ? v : -v});
                }
            }
        }
        int rows = static_cast<int>(basis_[k + 1].size()), cols = static_cast<int>(src.size());
        wedge_.emplace(k, SparseMatrix::from_triplets(rows, cols, std::move(tw)));
        d_.emplace(k, SparseMatrix::from_triplets(rows, cols, std::move(td)));
    }
    if (!squares_to_zero())
        throw InvariantViolation("twisted de Rham: operator does not square to zero");
}

bool TwistedDeRham::squares_to_zero() const
{
    for (int k = 0; k + 1 < n_; ++k) {
        const auto& w0 = wedge_.at(k);
        const auto& w1 = wedge_.at(k + 1);
        const auto& d0 = d_.at(k);
        const auto& d1 = d_.at(k + 1);
        if (!(w1 * w0).is_zero() || !(d1 * d0).is_zero() || !(w1 * d0 + d1 * w0).is_zero())
            return false;
    }
    return true;
}

std::map<int, int> twisted_dims(const TwistedDeRham& td, int samples, std::uint64_t seed)
{
    const int n = td.nvars();
    std::vector<int> r(n + 1, 0);
    for (int k = 0; k < n; ++k)
        r[k] = rank_sampled(td.operator_matrix(k), samples, seed);
    std::map<int, int> out;
    for (int k = 0; k <= n; ++k)
        out[k] = td.dim(k) - r[k] - (k > 0 ? r[k - 1] : 0);
    return out;
}

long long euler_characteristic(const TwistedDeRham& td)
{
    long long s = 0;
    for (int k = 0; k <= td.nvars(); ++k)
        s += (k % 2 ? -1 : 1) * static_cast<long long>(td.dim(k));
    return s;
}

TwistedResult twisted_cohomology(const PolyElement& W, int D, int samples, std::uint64_t seed)
{
    TwistedResult r;
    r.D = D;
    r.dims = twisted_dims(TwistedDeRham(W, D), samples, seed);
    r.dims_next = twisted_dims(TwistedDeRham(W, D + 2), samples, seed);
    r.stable = r.dims == r.dims_next;
    for (const auto& [k, v] : r.dims)
        (k % 2 ? r.parity.odd : r.parity.even) += v;
    return r;
}

CurvedAlgebra curved_from_potential(const PolyElement& W, int D)
{
    AlgebraPtr ring = TruncatedPolyAlgebra::make(W.algebra()->generators(), D);
    CurvedAlgebra c;
    c.algebra = FiniteAlgebra::from_truncated(*ring);
    for (const auto& [m, v] : W.terms())
        if (total_degree(m) <= D)
            sparse_axpy(c.h, -v, {{ring->basis_index(m), Rational(1)}});
    return c;
}

FormSum hkr_map(const TruncatedPolyAlgebra& ring, AlgebraPtr forms, const Chain& c)
{
    FormSum out;
    const int n = static_cast<int>(c.size()) - 1;
    if (n > forms->ngens())
        return out;
    const auto& basis = ring.basis();
    KaehlerForm w = KaehlerForm::function(PolyElement::monomial(forms, basis[c[0]]));
    for (int k = 1; k <= n; ++k) {
        KaehlerForm df = de_rham_d(KaehlerForm::function(PolyElement::monomial(forms, basis[c[k]])));
        w = w.wedge(df);
        if (w.is_zero())
            return out;
    }
    add_form(out, w, factorial(n).inverse());
    return out;
}

FormSum hkr_map(const TruncatedPolyAlgebra& ring, AlgebraPtr forms, const ChainVec& v)
{
    FormSum out;
    for (const auto& [c, x] : v)
        for (const auto& [k, w] : hkr_map(ring, forms, c))
            add_form(out, w, x);
    return out;
}

HKRReport hkr_check(const PolyElement& W, int D, int max_len)
{
    HKRReport rep;
    CurvedAlgebra A = curved_from_potential(W, D);
    AlgebraPtr ring = TruncatedPolyAlgebra::make(W.algebra()->generators(), D);
    AlgebraPtr forms = ring;
    const int s = W.is_zero() ? 0 : W.max_degree();
    KaehlerForm dW = de_rham_d(KaehlerForm::function(change_truncation(W, forms)));
    for (const Chain& c : enumerate_chains(A, max_len)) {
        if (chain_weight(A, c) + s > D)
            continue;
        ++rep.chains_checked;
        rep.max_length = std::max(rep.max_length, static_cast<int>(c.size()));
        FormSum e = hkr_map(*ring, forms, c);
        FormSum lhs_b = hkr_map(*ring, forms, hochschild_b(A, c));
        FormSum rhs_b;
        for (const auto& [k, w] : e)
            add_form(rhs_b, dW.wedge(w));
        FormSum lhs_B = hkr_map(*ring, forms, connes_B(A, c));
        FormSum rhs_B;
        for (const auto& [k, w] : e)
            add_form(rhs_B, de_rham_d(w));
        bool ok_b = form_sums_equal(lhs_b, rhs_b), ok_B = form_sums_equal(lhs_B, rhs_B);
        if ((!ok_b || !ok_B) && rep.holds) {
            rep.holds = false;
            rep.witness = chain_str(A, c);
            rep.which = ok_b ? "B" : "b";
        }
    }
    return rep;
}

PotentialFamily PotentialFamily::parse(const std::string& expr, const std::string& param, std::vector<Rational> grid,
                                       int trunc)
{
    ParsedPoly p = parse_polynomial(expr);
    std::vector<std::string> names;
    for (const auto& v : p.vars)
        if (v != param)
            names.push_back(v);
    names.push_back(param);
    AlgebraPtr ring = TruncatedPolyAlgebra::even(names, trunc);
    PolyElement W = parse_polynomial(expr, ring);
    return PotentialFamily{ring, param, W, std::move(grid)};
}

std::vector<int> PotentialFamily::fibre_vars() const
{
    std::vector<int> out;
    for (int i = 0; i < ring->ngens(); ++i)
        if (ring->generators()[i].name != param)
            out.push_back(i);
    return out;
}

int PotentialFamily::param_index() const
{
    return ring->index_of(param);
}

PolyElement PotentialFamily::at(const Rational& t0, int D) const
{
    std::vector<std::string> names;
    for (int i : fibre_vars())
        names.push_back(ring->generators()[i].name);
    AlgebraPtr target = TruncatedPolyAlgebra::even(names, D);
    return specialize(W, param, t0, target);
}

GMOperator gm_operator(const PotentialFamily& fam)
{
    GMOperator op{KaehlerForm(fam.ring, 1), KaehlerForm(fam.ring, 1), fam.fibre_vars(), fam.param_index()};
    KaehlerForm w = KaehlerForm::function(fam.W);
    op.dxW = partial_d(w, op.fibre);
    op.dtW = partial_d(w, {op.param});
    return op;
}

namespace {

UForm wedge_op(const KaehlerForm& a, const UForm& w, int shift, const Rational& c)
{
    UForm out{w.bound, {}};
    for (const auto& [j, f] : w.terms)
        add_uform(out, j + shift, a.wedge(f), c);
    return out;
}

UForm d_op(const std::vector<int>& vars, const UForm& w, int shift, const Rational& c)
{
    UForm out{w.bound, {}};
    for (const auto& [j, f] : w.terms)
        add_uform(out, j + shift, partial_d(f, vars), c);
    return out;
}

UForm sum(const UForm& a, const UForm& b)
{
    UForm out = a;
    uform_axpy(out, Rational(1), b);
    return out;
}

} // namespace

UForm gm_apply(const GMOperator& op, const UForm& w)
{
    return sum(d_op({op.param}, w, 0, Rational(1)), wedge_op(op.dtW, w, -1, Rational(-1)));
}

UForm twisted_apply(const GMOperator& op, const UForm& w)
{
    return sum(wedge_op(op.dxW, w, 0, Rational(-1)), d_op(op.fibre, w, 1, Rational(1)));
}

GMReport gm_flatness_check(const PotentialFamily& fam, int D, int bound)
{
    if (bound < 2)
        throw WindowOverflow("gm check: the u-window needs slack of at least 1 on each side of the tested exponents");
    GMReport rep;
    rep.bracket_nonzero.assign(4, 0);
    int s = std::max(1, fam.W.max_degree());
    PotentialFamily big = fam;
    big.ring = TruncatedPolyAlgebra::make(fam.ring->generators(), D + 2 * s);
    big.W = change_truncation(fam.W, big.ring);
    GMOperator op = gm_operator(big);
    const int n = big.ring->ngens();
    std::vector<int> tvar{op.param};

    // anticommutator of two odd operators given as functions
    auto anti = [](auto&& P, auto&& Q, const UForm& w) { return sum(P(Q(w)), Q(P(w))); };
    auto Wx = [&](const UForm& w) { return wedge_op(op.dxW, w, 0, Rational(1)); };
    auto Wt = [&](const UForm& w) { return wedge_op(op.dtW, w, 0, Rational(1)); };
    auto dx = [&](const UForm& w) { return d_op(op.fibre, w, 0, Rational(1)); };
    auto dt = [&](const UForm& w) { return d_op(tvar, w, 0, Rational(1)); };
    auto shift = [](const UForm& w, int k, const Rational& c) {
        UForm out{w.bound, {}};
        for (const auto& [j, f] : w.terms)
            add_uform(out, j + k, f, c);
        return out;
    };

    for (int k = 0; k <= n; ++k)
        for (const auto& I : subsets_of_size(n, k))
            for (const auto& a : monomials_up_to(n, D))
                for (int j = -(bound - 2); j <= bound - 2; ++j) {
                    KaehlerForm f(big.ring, k);
                    f.add_term(a, I, Rational(1));
                    UForm w{bound, {}};
                    add_uform(w, j, f);
                    ++rep.forms_checked;

                    UForm t1 = shift(anti(Wx, Wt, w), -1, Rational(1));
                    UForm t2 = shift(anti(dx, Wt, w), 0, Rational(-1));
                    UForm t3 = shift(anti(Wx, dt, w), 0, Rational(-1));
                    UForm t4 = shift(anti(dx, dt, w), 1, Rational(1));
                    UForm* terms[4] = {&t1, &t2, &t3, &t4};
                    for (int i = 0; i < 4; ++i)
                        if (!terms[i]->terms.empty())
                            ++rep.bracket_nonzero[i];

                    UForm comm = sum(twisted_apply(op, gm_apply(op, w)), gm_apply(op, twisted_apply(op, w)));
                    UForm expanded = sum(sum(t1, t2), sum(t3, t4));
                    UForm diff = comm;
                    uform_axpy(diff, Rational(-1), expanded);
                    if (!diff.terms.empty())
                        throw InvariantViolation("gm check: bracket expansion does not reproduce the commutator");
                    UForm sq = gm_apply(op, gm_apply(op, w));
                    if (!comm.terms.empty() && rep.commutator_zero) {
                        rep.commutator_zero = false;
                        rep.witness = f.str() + " * u^" + std::to_string(j);
                    }
                    if (!sq.terms.empty() && rep.square_zero) {
                        rep.square_zero = false;
                        if (rep.witness.empty())
                            rep.witness = f.str() + " * u^" + std::to_string(j);
                    }
                }
    rep.flat = rep.commutator_zero && rep.square_zero;
    return rep;
}

std::string FamilyScan::csv() const
{
    std::ostringstream os;
    os << "t,dim_even,dim_odd,stable\n";
    for (const auto& p : points)
        os << p.t.str() << ',' << p.dims.even << ',' << p.dims.odd << ',' << (p.stable ? "true" : "false") << '\n';
    return os.str();
}

FamilyScan family_scan(const PotentialFamily& fam, int D, int samples, std::uint64_t seed)
{
    if (fam.grid.empty())
        throw std::invalid_argument("family scan: empty grid");
    FamilyScan scan;
    for (const auto& t : fam.grid) {
        PolyElement w = fam.at(t, D);
        TwistedResult r = twisted_cohomology(w, D, samples, seed);
        scan.points.push_back({t, r.parity, r.stable});
    }
    scan.constant = true;
    for (const auto& p : scan.points)
        if (!p.stable || p.dims.total() != scan.points.front().dims.total())
            scan.constant = false;
    return scan;
}

} // namespace chainlab
