#include "chainlab/graded_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chainlab {

int total_degree(const Monomial& m)
{
    return std::accumulate(m.begin(), m.end(), 0);
}

long long binomial(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

long long sym_basis_dim(int n, int k)
{
    if (n < 1 || k < 0)
        throw std::invalid_argument("sym_basis_dim: need n >= 1, k >= 0");
    return binomial(k + n - 1, n - 1);
}

namespace {

void enumerate(int nvars, int remaining, int pos, Monomial& cur, std::vector<Monomial>& out,
               const std::vector<int>* cap)
{
    if (pos == nvars) {
        if (remaining == 0)
            out.push_back(cur);
        return;
    }
    int hi = remaining;
    if (cap && (*cap)[pos] >= 0)
        hi = std::min(hi, (*cap)[pos]);
    for (int e = hi; e >= 0; --e) {
        cur[pos] = e;
        enumerate(nvars, remaining - e, pos + 1, cur, out, cap);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(int nvars, int d)
{
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    if (nvars == 0) {
        if (d == 0)
            out.push_back(cur);
        return out;
    }
    enumerate(nvars, d, 0, cur, out, nullptr);
    return out;
}

std::vector<Monomial> monomials_up_to(int nvars, int d)
{
    std::vector<Monomial> out;
    for (int k = 0; k <= d; ++k) {
        auto part = monomials_of_degree(nvars, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

TruncatedPolyAlgebra::TruncatedPolyAlgebra(std::vector<Generator> gens, int trunc)
    : gens_(std::move(gens)), trunc_(trunc)
{
    if (trunc_ < 0)
        throw std::invalid_argument("TruncatedPolyAlgebra: negative truncation");
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (gens_[i].name == gens_[j].name)
                throw std::invalid_argument("TruncatedPolyAlgebra: duplicate generator " + gens_[i].name);
    std::vector<int> order(gens_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return gens_[a].name < gens_[b].name; });
    name_order_ = order;

    std::vector<int> cap(gens_.size(), -1);
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].odd)
            cap[i] = 1;
    int n = ngens();
    for (int k = 0; k <= trunc_; ++k) {
        std::vector<Monomial> part;
        Monomial cur(n, 0);
        if (n == 0) {
            if (k == 0)
                part.push_back(cur);
        } else {
            enumerate(n, k, 0, cur, part, &cap);
        }
        basis_.insert(basis_.end(), part.begin(), part.end());
    }
    std::stable_sort(basis_.begin(), basis_.end(),
                     [this](const Monomial& a, const Monomial& b) { return mono_less(a, b); });
    for (std::size_t i = 0; i < basis_.size(); ++i)
        index_[basis_[i]] = static_cast<int>(i);
}

std::shared_ptr<const TruncatedPolyAlgebra> TruncatedPolyAlgebra::make(std::vector<Generator> gens, int trunc)
{
    return std::make_shared<const TruncatedPolyAlgebra>(std::move(gens), trunc);
}

std::shared_ptr<const TruncatedPolyAlgebra> TruncatedPolyAlgebra::even(const std::vector<std::string>& names,
                                                                       int trunc)
{
    std::vector<Generator> g;
    for (const auto& n : names)
        g.push_back({n, 0, false});
    return make(std::move(g), trunc);
}

int TruncatedPolyAlgebra::index_of(const std::string& name) const
{
    for (int i = 0; i < ngens(); ++i)
        if (gens_[i].name == name)
            return i;
    throw std::invalid_argument("unknown generator '" + name + "'");
}

bool TruncatedPolyAlgebra::has(const std::string& name) const
{
    for (const auto& g : gens_)
        if (g.name == name)
            return true;
    return false;
}

int TruncatedPolyAlgebra::basis_index(const Monomial& m) const
{
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
}

bool TruncatedPolyAlgebra::mono_less(const Monomial& a, const Monomial& b) const
{
    int da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da < db;
    // among equal degrees, higher powers of the alphabetically first generator come first
    int n = static_cast<int>(a.size());
    for (int k = 0; k < n; ++k) {
        int i = name_order_[k];
        if (a[i] != b[i])
            return a[i] > b[i];
    }
    return false;
}

bool TruncatedPolyAlgebra::admissible(const Monomial& m) const
{
    if (static_cast<int>(m.size()) != ngens())
        return false;
    for (int i = 0; i < ngens(); ++i) {
        if (m[i] < 0)
            return false;
        if (gens_[i].odd && m[i] > 1)
            return false;
    }
    return total_degree(m) <= trunc_;
}

int TruncatedPolyAlgebra::parity(const Monomial& m) const
{
    int p = 0;
    for (int i = 0; i < ngens(); ++i)
        if (gens_[i].odd)
            p += m[i];
    return p & 1;
}

int TruncatedPolyAlgebra::degree(const Monomial& m) const
{
    int d = 0;
    for (int i = 0; i < ngens(); ++i)
        d += m[i] * gens_[i].degree;
    return d;
}

int TruncatedPolyAlgebra::multiply(const Monomial& a, const Monomial& b, Monomial& out) const
{
    int n = ngens();
    out.assign(n, 0);
    int swaps = 0;
    int odd_after = 0;
    // count pairs (i in a, j in b) of odd generators with i > j
    for (int i = n - 1; i >= 0; --i) {
        if (gens_[i].odd) {
            if (b[i] && a[i])
                return 0;
            swaps += b[i] * odd_after;
            odd_after += a[i];
        }
    }
    int tot = 0;
    for (int i = 0; i < n; ++i) {
        out[i] = a[i] + b[i];
        tot += out[i];
    }
    if (tot > trunc_)
        return 0;
    return (swaps & 1) ? -1 : 1;
}

nlohmann::json TruncatedPolyAlgebra::to_json() const
{
    nlohmann::json g = nlohmann::json::array();
    for (const auto& x : gens_)
        g.push_back({{"name", x.name}, {"degree", x.degree}, {"parity", x.odd ? "odd" : "even"}});
    return {{"gens", g}, {"trunc", trunc_}};
}

bool operator==(const TruncatedPolyAlgebra& a, const TruncatedPolyAlgebra& b)
{
    if (a.trunc_ != b.trunc_ || a.gens_.size() != b.gens_.size())
        return false;
    for (std::size_t i = 0; i < a.gens_.size(); ++i)
        if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree ||
            a.gens_[i].odd != b.gens_[i].odd)
            return false;
    return true;
}

std::string monomial_str(const TruncatedPolyAlgebra& alg, const Monomial& m)
{
    std::string out;
    for (int i = 0; i < alg.ngens(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += alg.generators()[i].name;
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

PolyElement::PolyElement(AlgebraPtr alg) : alg_(std::move(alg)), terms_(MonoCompare{alg_.get()})
{
    if (!alg_)
        throw std::invalid_argument("PolyElement: null algebra");
}

PolyElement PolyElement::constant(AlgebraPtr alg, const Rational& c)
{
    PolyElement p(alg);
    p.add_term(Monomial(alg->ngens(), 0), c);
    return p;
}

PolyElement PolyElement::generator(AlgebraPtr alg, const std::string& name)
{
    PolyElement p(alg);
    Monomial m(alg->ngens(), 0);
    m[alg->index_of(name)] = 1;
    p.add_term(m, Rational(1));
    return p;
}

PolyElement PolyElement::monomial(AlgebraPtr alg, const Monomial& m, const Rational& c)
{
    PolyElement p(alg);
    p.add_term(m, c);
    return p;
}

Rational PolyElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void PolyElement::add_term(const Monomial& m, const Rational& c)
{
    if (c.is_zero())
        return;
    if (static_cast<int>(m.size()) != alg_->ngens())
        throw std::invalid_argument("PolyElement: monomial arity mismatch");
    for (int i = 0; i < alg_->ngens(); ++i)
        if (m[i] < 0)
            throw std::invalid_argument("PolyElement: negative exponent");
    if (!alg_->admissible(m))
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

void PolyElement::check_same(const PolyElement& o) const
{
    if (alg_ != o.alg_ && !(*alg_ == *o.alg_))
        throw std::invalid_argument("PolyElement: algebra mismatch");
}

PolyElement PolyElement::operator+(const PolyElement& o) const
{
    check_same(o);
    PolyElement r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

PolyElement PolyElement::operator-(const PolyElement& o) const
{
    return *this + (-o);
}

PolyElement PolyElement::operator-() const
{
    return scaled(Rational(-1));
}

PolyElement PolyElement::scaled(const Rational& c) const
{
    PolyElement r(alg_);
    if (c.is_zero())
        return r;
    for (const auto& [m, v] : terms_)
        r.terms_.emplace(m, v * c);
    return r;
}

PolyElement PolyElement::operator*(const PolyElement& o) const
{
    check_same(o);
    PolyElement r(alg_);
    Monomial out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            int s = alg_->multiply(ma, mb, out);
            if (s == 0)
                continue;
            r.add_term(out, s > 0 ? ca * cb : -(ca * cb));
        }
    return r;
}

int PolyElement::min_degree() const
{
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int t = total_degree(m);
        if (d < 0 || t < d)
            d = t;
    }
    return d;
}

int PolyElement::max_degree() const
{
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, total_degree(m));
    return d;
}

PolyElement PolyElement::homogeneous_part(int d) const
{
    PolyElement r(alg_);
    for (const auto& [m, c] : terms_)
        if (total_degree(m) == d)
            r.terms_.emplace(m, c);
    return r;
}

int PolyElement::parity() const
{
    int p = -1;
    for (const auto& [m, c] : terms_) {
        int q = alg_->parity(m);
        if (p >= 0 && p != q)
            throw std::logic_error("PolyElement: inhomogeneous parity");
        p = q;
    }
    return p < 0 ? 0 : p;
}

std::string PolyElement::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        bool neg = a.sign() < 0;
        if (neg)
            a = -a;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool constant = total_degree(m) == 0;
        if (!a.is_one() || constant) {
            os << a;
            if (!constant)
                os << "*";
        }
        bool firstvar = true;
        for (int i = 0; i < alg_->ngens(); ++i) {
            if (m[i] == 0)
                continue;
            if (!firstvar)
                os << "*";
            firstvar = false;
            os << alg_->generators()[i].name;
            if (m[i] > 1)
                os << "^" << m[i];
        }
    }
    return os.str();
}

nlohmann::json PolyElement::to_json() const
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_)
        terms.push_back({{"mono", m}, {"coef", c.str()}});
    nlohmann::json j = alg_->to_json();
    j["terms"] = terms;
    return j;
}

bool operator==(const PolyElement& a, const PolyElement& b)
{
    if (a.terms_.size() != b.terms_.size())
        return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
        if (it->first != m || it->second != c)
            return false;
        ++it;
    }
    return true;
}

PolyElement multiply(const PolyElement& a, const PolyElement& b)
{
    return a * b;
}

PolyElement partial_derivative(const PolyElement& a, int gen)
{
    const auto& alg = a.algebra();
    if (gen < 0 || gen >= alg->ngens())
        throw std::invalid_argument("partial_derivative: unknown generator");
    bool odd = alg->generators()[gen].odd;
    PolyElement r(alg);
    for (const auto& [m, c] : a.terms()) {
        if (m[gen] == 0)
            continue;
        Monomial n = m;
        n[gen] -= 1;
        if (odd) {
            int before = 0;
            for (int i = 0; i < gen; ++i)
                if (alg->generators()[i].odd)
                    before += m[i];
            r.add_term(n, (before & 1) ? -c : c);
        } else {
            r.add_term(n, c * Rational(m[gen]));
        }
    }
    return r;
}

PolyElement partial_derivative(const PolyElement& a, const std::string& gen)
{
    return partial_derivative(a, a.algebra()->index_of(gen));
}

PolyElement change_truncation(const PolyElement& a, AlgebraPtr target)
{
    const auto& src = a.algebra()->generators();
    const auto& dst = target->generators();
    if (src.size() != dst.size())
        throw std::invalid_argument("change_truncation: generator mismatch");
    for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i].name != dst[i].name || src[i].odd != dst[i].odd)
            throw std::invalid_argument("change_truncation: generator mismatch");
    PolyElement r(target);
    for (const auto& [m, c] : a.terms())
        r.add_term(m, c);
    return r;
}

PolyElement embed(const PolyElement& a, AlgebraPtr target)
{
    const auto& src = a.algebra()->generators();
    std::vector<int> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        map[i] = target->index_of(src[i].name);
    PolyElement r(target);
    for (const auto& [m, c] : a.terms()) {
        Monomial n(target->ngens(), 0);
        for (std::size_t i = 0; i < src.size(); ++i)
            n[map[i]] = m[i];
        r.add_term(n, c);
    }
    return r;
}

PolyElement specialize(const PolyElement& a, const std::string& gen, const Rational& value, AlgebraPtr target)
{
    const auto& alg = a.algebra();
    int g = alg->index_of(gen);
    if (alg->generators()[g].odd)
        throw std::invalid_argument("specialize: odd generator");
    std::vector<int> map(alg->ngens(), -1);
    for (int i = 0; i < alg->ngens(); ++i)
        if (i != g)
            map[i] = target->index_of(alg->generators()[i].name);
    PolyElement r(target);
    for (const auto& [m, c] : a.terms()) {
        Monomial n(target->ngens(), 0);
        for (int i = 0; i < alg->ngens(); ++i)
            if (i != g)
                n[map[i]] = m[i];
        Rational p(1);
        for (int k = 0; k < m[g]; ++k)
            p *= value;
        r.add_term(n, c * p);
    }
    return r;
}

int insert_sorted(const std::vector<int>& s, int j, std::vector<int>& out)
{
    out.clear();
    int before = 0;
    bool placed = false;
    for (int x : s) {
        if (x == j)
            return 0;
        if (!placed && x > j) {
            out.push_back(j);
            placed = true;
        }
        if (!placed)
            ++before;
        out.push_back(x);
    }
    if (!placed)
        out.push_back(j);
    return (before & 1) ? -1 : 1;
}

int merge_sign(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out)
{
    out.clear();
    long inversions = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            inversions += static_cast<long>(a.size() - i);
            out.push_back(b[j++]);
        } else {
            return 0;
        }
    }
    return (inversions & 1) ? -1 : 1;
}

KaehlerForm::KaehlerForm(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree)
{
    for (const auto& g : alg_->generators())
        if (g.odd)
            throw std::invalid_argument("KaehlerForm: only even generators are supported");
    if (degree_ < 0 || degree_ > alg_->ngens())
        throw std::invalid_argument("KaehlerForm: form degree out of range");
}

KaehlerForm KaehlerForm::function(const PolyElement& f)
{
    KaehlerForm w(f.algebra(), 0);
    for (const auto& [m, c] : f.terms())
        w.add_term(m, {}, c);
    return w;
}

KaehlerForm KaehlerForm::differential(AlgebraPtr alg, const std::string& gen)
{
    KaehlerForm w(alg, 1);
    w.add_term(Monomial(alg->ngens(), 0), {alg->index_of(gen)}, Rational(1));
    return w;
}

void KaehlerForm::add_term(const Monomial& m, std::vector<int> subset, const Rational& c)
{
    if (c.is_zero())
        return;
    if (static_cast<int>(subset.size()) != degree_)
        throw std::invalid_argument("KaehlerForm: subset size differs from form degree");
    if (!std::is_sorted(subset.begin(), subset.end()) ||
        std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw std::invalid_argument("KaehlerForm: subset must be strictly increasing");
    if (!alg_->admissible(m))
        return;
    Key k{m, std::move(subset)};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

KaehlerForm KaehlerForm::operator+(const KaehlerForm& o) const
{
    if (o.degree_ != degree_)
        throw std::invalid_argument("KaehlerForm: degree mismatch");
    KaehlerForm r = *this;
    for (const auto& [k, c] : o.terms_)
        r.add_term(k.first, k.second, c);
    return r;
}

KaehlerForm KaehlerForm::operator-(const KaehlerForm& o) const
{
    return *this + o.scaled(Rational(-1));
}

KaehlerForm KaehlerForm::scaled(const Rational& c) const
{
    KaehlerForm r(alg_, degree_);
    if (c.is_zero())
        return r;
    for (const auto& [k, v] : terms_)
        r.terms_.emplace(k, v * c);
    return r;
}

KaehlerForm KaehlerForm::wedge(const KaehlerForm& o) const
{
    int deg = degree_ + o.degree_;
    if (deg > alg_->ngens())
        return KaehlerForm(alg_, degree_);
    KaehlerForm r(alg_, deg);
    Monomial prod;
    std::vector<int> sub;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            int s = merge_sign(ka.second, kb.second, sub);
            if (s == 0)
                continue;
            if (alg_->multiply(ka.first, kb.first, prod) == 0)
                continue;
            r.add_term(prod, sub, s > 0 ? ca * cb : -(ca * cb));
        }
    return r;
}

KaehlerForm KaehlerForm::times(const PolyElement& f) const
{
    return KaehlerForm::function(f).wedge(*this);
}

std::string KaehlerForm::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << PolyElement::monomial(alg_, k.first, c).str() << ")";
        for (int i : k.second)
            os << " d" << alg_->generators()[i].name;
    }
    return os.str();
}

bool operator==(const KaehlerForm& a, const KaehlerForm& b)
{
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

KaehlerForm de_rham_d(const KaehlerForm& w)
{
    const auto& alg = w.algebra();
    int deg = w.degree() + 1;
    if (deg > alg->ngens())
        return KaehlerForm(alg, w.degree());
    KaehlerForm r(alg, deg);
    std::vector<int> sub;
    for (const auto& [k, c] : w.terms()) {
        for (int j = 0; j < alg->ngens(); ++j) {
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
    }
    return r;
}

AlgebraPtr algebra_from_json(const nlohmann::json& j)
{
    std::vector<Generator> gens;
    for (const auto& g : j.at("gens")) {
        Generator x;
        x.name = g.at("name").get<std::string>();
        x.degree = g.value("degree", 0);
        std::string p = g.value("parity", std::string("even"));
        if (p != "even" && p != "odd")
            throw std::invalid_argument("generator parity must be 'even' or 'odd'");
        x.odd = p == "odd";
        gens.push_back(x);
    }
    return TruncatedPolyAlgebra::make(std::move(gens), j.at("trunc").get<int>());
}

PolyElement element_from_json(AlgebraPtr alg, const nlohmann::json& j)
{
    PolyElement p(alg);
    for (const auto& t : j.at("terms"))
        p.add_term(t.at("mono").get<Monomial>(), Rational::parse(t.at("coef").get<std::string>()));
    return p;
}

} // namespace chainlab
