#include "chainlab/dcrit.hpp"

#include "chainlab/json_util.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace chainlab {

namespace {

Rational mono_factorial(const Monomial& a)
{
    Rational r(1);
    for (int e : a)
        r *= factorial(e);
    return r;
}

Monomial unit_vec(int n, int j)
{
    Monomial m(n, 0);
    m[j] = 1;
    return m;
}

Monomial plus(Monomial a, const Monomial& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

long long draw(std::mt19937_64& rng, int range)
{
    return static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
}

Monomial embed_mono(const Monomial& m, int offset, int total)
{
    Monomial out(total, 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        out[offset + i] = m[i];
    return out;
}

/// Row vector v with nu(v, e_i) = t_i for all i.
std::vector<Rational> unpair(const SparseMatrix& pairing, const std::vector<Rational>& t)
{
    auto sol = solve(pairing.transpose(), sparse_from_dense(t));
    if (!sol)
        throw InvariantViolation("pairing is degenerate");
    return sparse_to_dense(*sol, pairing.rows());
}

} // namespace

Rational CyclicLInfinity::paired(int k, const Monomial& alpha, int j) const
{
    auto it = products.find(k);
    if (it == products.end())
        return Rational(0);
    auto jt = it->second.find(alpha);
    if (jt == it->second.end())
        return Rational(0);
    Rational s(0);
    for (int i = 0; i < u; ++i)
        s.add_mul(jt->second[i], pairing.at(i, j));
    return s;
}

int CyclicLInfinity::max_order() const
{
    return products.empty() ? 0 : products.rbegin()->first;
}

nlohmann::json CyclicLInfinity::to_json() const
{
    nlohmann::json j;
    j["u"] = u;
    j["pairing"] = matrix_to_json(pairing);
    nlohmann::json prods = nlohmann::json::array();
    for (const auto& [k, table] : products)
        for (const auto& [alpha, v] : table)
            prods.push_back({{"k", k}, {"alpha", alpha}, {"value", rational_vector_to_json(v)}});
    j["products"] = prods;
    return j;
}

CyclicLInfinity CyclicLInfinity::from_json(const nlohmann::json& j)
{
    CyclicLInfinity d;
    d.u = j.at("u").get<int>();
    if (j.contains("pairing"))
        d.pairing = matrix_from_json(j.at("pairing"), d.u, d.u);
    else
        d.pairing = SparseMatrix::identity(d.u);
    for (const auto& p : j.value("products", nlohmann::json::array())) {
        int k = p.at("k").get<int>();
        Monomial alpha = p.at("alpha").get<Monomial>();
        d.products[k][alpha] = rational_vector_from_json(p.at("value"));
    }
    validate(d);
    return d;
}

std::optional<CyclicityDefect> cyclicity_defect(const CyclicLInfinity& data)
{
    for (const auto& [k, table] : data.products) {
        std::map<Monomial, std::tuple<Monomial, int, Rational>> seen;
        for (const Monomial& alpha : monomials_of_degree(data.u, k))
            for (int j = 0; j < data.u; ++j) {
                Monomial beta = plus(alpha, unit_vec(data.u, j));
                Rational v = data.paired(k, alpha, j);
                auto it = seen.find(beta);
                if (it == seen.end()) {
                    seen.emplace(beta, std::make_tuple(alpha, j, v));
                } else if (std::get<2>(it->second) != v) {
                    return CyclicityDefect{k, std::get<0>(it->second), std::get<1>(it->second), alpha, j,
                                           std::get<2>(it->second), v};
                }
            }
    }
    return std::nullopt;
}

void validate(const CyclicLInfinity& data)
{
    if (data.pairing.rows() != data.u || data.pairing.cols() != data.u)
        throw std::invalid_argument("cyclic data: pairing must be u x u");
    if (rank(data.pairing) != data.u)
        throw InvariantViolation("cyclic data: pairing is degenerate");
    for (const auto& [k, table] : data.products) {
        if (k < 2)
            throw std::invalid_argument("cyclic data: products start at order 2");
        for (const auto& [alpha, v] : table) {
            if (static_cast<int>(alpha.size()) != data.u || total_degree(alpha) != k ||
                std::any_of(alpha.begin(), alpha.end(), [](int e) { return e < 0; }))
                throw std::invalid_argument("cyclic data: bad multi-index for l_" + std::to_string(k));
            if (static_cast<int>(v.size()) != data.u)
                throw std::invalid_argument("cyclic data: product value has wrong length");
        }
    }
}

CyclicLInfinity random_cyclic(int u, int K, std::uint64_t seed, int range)
{
    std::mt19937_64 rng(seed);
    CyclicLInfinity d;
    d.u = u;
    std::vector<Triplet> t;
    for (int i = 0; i < u; ++i) {
        t.push_back({i, i, Rational(rng() % 2 ? 1 : -1)});
        for (int j = i + 1; j < u; ++j) {
            long long v = draw(rng, 1);
            if (v)
                t.push_back({i, j, Rational(v)});
        }
    }
    d.pairing = SparseMatrix::from_triplets(u, u, t);
    for (int k = 2; k <= K; ++k) {
        std::map<Monomial, Rational> sym;
        for (const Monomial& beta : monomials_of_degree(u, k + 1))
            sym[beta] = Rational(draw(rng, range));
        for (const Monomial& alpha : monomials_of_degree(u, k)) {
            std::vector<Rational> tv(u);
            for (int j = 0; j < u; ++j)
                tv[j] = sym.at(plus(alpha, unit_vec(u, j)));
            auto v = unpair(d.pairing, tv);
            if (std::any_of(v.begin(), v.end(), [](const Rational& r) { return !r.is_zero(); }))
                d.products[k][alpha] = v;
        }
    }
    return d;
}

AlgebraPtr coordinate_algebra(int u, int D, const std::string& prefix)
{
    std::vector<std::string> names;
    for (int i = 1; i <= u; ++i)
        names.push_back(prefix + std::to_string(i));
    return TruncatedPolyAlgebra::even(names, D);
}

PolyElement potential_from_cyclic(const CyclicLInfinity& data, AlgebraPtr alg)
{
    PolyElement f(alg);
    for (const auto& [k, table] : data.products) {
        Rational scale = factorial(k) / factorial(k + 1);
        for (const auto& [alpha, v] : table)
            for (int j = 0; j < data.u; ++j) {
                Rational t = data.paired(k, alpha, j);
                if (t.is_zero())
                    continue;
                f.add_term(plus(alpha, unit_vec(data.u, j)), scale * t / mono_factorial(alpha));
            }
    }
    return f;
}

std::vector<PolyElement> adjoint_map(const CyclicLInfinity& data, AlgebraPtr alg)
{
    std::vector<PolyElement> out(data.u, PolyElement(alg));
    for (const auto& [k, table] : data.products)
        for (const auto& [alpha, v] : table)
            for (int j = 0; j < data.u; ++j) {
                Rational t = data.paired(k, alpha, j);
                if (!t.is_zero())
                    out[j].add_term(alpha, t / mono_factorial(alpha));
            }
    return out;
}

LemmaAXReport verify_lemma_AX(const CyclicLInfinity& data, int D)
{
    validate(data);
    LemmaAXReport r;
    r.cyclic = !cyclicity_defect(data).has_value();
    AlgebraPtr alg = coordinate_algebra(data.u, D);
    PolyElement f = potential_from_cyclic(data, alg);
    auto adj = adjoint_map(data, alg);
    for (int j = 0; j < data.u; ++j) {
        PolyElement df = partial_derivative(f, j);
        PolyElement diff = df - adj[j];
        for (const auto& [m, c] : diff.terms()) {
            Rational a = c.sign() < 0 ? -c : c;
            if (a > r.max_deviation)
                r.max_deviation = a;
            if (r.holds) {
                r.holds = false;
                r.witness_component = j;
                r.witness_monomial = m;
                r.witness_df = df.coefficient(m);
                r.witness_adjoint = adj[j].coefficient(m);
            }
        }
    }
    return r;
}

KoszulComplex koszul_complex(const std::vector<PolyElement>& images, int D)
{
    if (images.empty())
        throw std::invalid_argument("koszul_complex: need the ring through at least one image");
    KoszulComplex kc;
    kc.ring = images.front().algebra();
    const auto& alg = *kc.ring;
    const int n = static_cast<int>(images.size());
    const auto& rb = alg.basis();
    const int rdim = static_cast<int>(rb.size());

    std::vector<std::vector<std::vector<int>>> subsets(n + 1);
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                s.push_back(i);
        subsets[s.size()].push_back(s);
    }
    for (auto& level : subsets)
        std::sort(level.begin(), level.end());

    std::map<int, int> dims;
    std::vector<std::map<std::vector<int>, int>> subset_index(n + 1);
    for (int p = 0; p <= n; ++p) {
        for (int s = 0; s < static_cast<int>(subsets[p].size()); ++s)
            subset_index[p][subsets[p][s]] = s;
        auto& b = kc.basis[-p];
        auto& keep = kc.keep[-p];
        for (const auto& s : subsets[p])
            for (int r = 0; r < rdim; ++r) {
                b.emplace_back(s, r);
                keep.push_back(total_degree(rb[r]) <= D);
            }
        dims[-p] = static_cast<int>(b.size());
    }

    std::map<int, SparseMatrix> diffs;
    Monomial out;
    for (int p = 1; p <= n; ++p) {
        std::vector<Triplet> t;
        int col = 0;
        for (const auto& s : subsets[p])
            for (int r = 0; r < rdim; ++r, ++col)
                for (int pos = 0; pos < p; ++pos) {
                    std::vector<int> rest = s;
                    rest.erase(rest.begin() + pos);
                    int base = subset_index[p - 1].at(rest) * rdim;
                    Rational sign(pos % 2 ? -1 : 1);
                    for (const auto& [m, c] : images[s[pos]].terms()) {
                        int sg = alg.multiply(m, rb[r], out);
                        if (sg == 0)
                            continue;
                        t.push_back({base + alg.basis_index(out), col, sign * c * Rational(sg)});
                    }
                }
        diffs.emplace(-p, SparseMatrix::from_triplets(dims[-p + 1], dims[-p], std::move(t)));
    }
    kc.complex = ChainComplex(std::move(dims), std::move(diffs));
    return kc;
}

std::map<int, int> koszul_cohomology(const std::vector<PolyElement>& images, int D)
{
    KoszulComplex kc = koszul_complex(images, D);
    return persistent_image_dims(kc.complex, kc.keep);
}

int truncation_lag(int max_degree)
{
    return std::max(max_degree, 2);
}

DcritResult dcrit_cohomology(const PolyElement& f, int D)
{
    const auto& gens = f.algebra()->generators();
    for (const auto& g : gens)
        if (g.odd)
            throw std::invalid_argument("dcrit: potential must live on even generators");
    if (!f.is_zero() && f.min_degree() < 2)
        throw std::invalid_argument("dcrit: potential must vanish to order two at the origin");
    DcritResult r;
    r.D = D;
    int lag = truncation_lag(f.max_degree());
    auto run = [&](int d) {
        AlgebraPtr ring = TruncatedPolyAlgebra::make(gens, d + lag);
        PolyElement g = change_truncation(f, ring);
        if (gens.empty())
            return std::map<int, int>{{0, 1}};
        std::vector<PolyElement> images;
        for (int i = 0; i < ring->ngens(); ++i)
            images.push_back(partial_derivative(g, i));
        return koszul_cohomology(images, d);
    };
    r.dims = run(D);
    r.dims_next = run(D + 2);
    r.stable = r.dims == r.dims_next;
    return r;
}

DcritResult dcrit_cohomology(const ParsedPoly& f, int D)
{
    AlgebraPtr ring = TruncatedPolyAlgebra::even(f.vars, D);
    PolyElement p(ring);
    for (const auto& [m, c] : f.terms) {
        if (total_degree(m) > D)
            throw std::invalid_argument("dcrit: potential exceeds the truncation");
        p.add_term(m, c);
    }
    return dcrit_cohomology(p, D);
}

ParsedPoly to_parsed(const PolyElement& p)
{
    ParsedPoly out;
    const auto& gens = p.algebra()->generators();
    std::vector<int> order(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return gens[a].name < gens[b].name; });
    for (int i : order)
        out.vars.push_back(gens[i].name);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            mm[i] = m[order[i]];
        out.terms[mm] = c;
    }
    return out;
}

nlohmann::json PlusModelData::to_json() const
{
    nlohmann::json j;
    j["base"] = base.to_json();
    j["w1"] = w1;
    j["w2"] = w2;
    nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array(), c = nlohmann::json::array();
    for (const auto& [k, t] : p1)
        for (const auto& [key, v] : t)
            a.push_back({{"k", k}, {"alpha", key.first}, {"p", key.second}, {"value", rational_vector_to_json(v)}});
    for (const auto& [k, t] : p2)
        for (const auto& [key, v] : t)
            b.push_back({{"k", k}, {"alpha", key.first}, {"q", key.second}, {"value", rational_vector_to_json(v)}});
    for (const auto& [k, t] : p3)
        for (const auto& [key, v] : t)
            c.push_back({{"k", k},
                         {"alpha", std::get<0>(key)},
                         {"q", std::get<1>(key)},
                         {"p", std::get<2>(key)},
                         {"value", rational_vector_to_json(v)}});
    j["w1_to_w2"] = a;
    j["w2dual_to_w1dual"] = b;
    j["mixed_to_udual"] = c;
    return j;
}

PlusModelData PlusModelData::from_json(const nlohmann::json& j)
{
    PlusModelData d;
    d.base = CyclicLInfinity::from_json(j.at("base"));
    d.w1 = j.value("w1", 0);
    d.w2 = j.value("w2", 0);
    auto arr = [&](const char* key) { return j.value(key, nlohmann::json::array()); };
    for (const auto& e : arr("w1_to_w2"))
        d.p1[e.at("k").get<int>()][{e.at("alpha").get<Monomial>(), e.at("p").get<int>()}] =
            rational_vector_from_json(e.at("value"));
    for (const auto& e : arr("w2dual_to_w1dual"))
        d.p2[e.at("k").get<int>()][{e.at("alpha").get<Monomial>(), e.at("q").get<int>()}] =
            rational_vector_from_json(e.at("value"));
    for (const auto& e : arr("mixed_to_udual"))
        d.p3[e.at("k").get<int>()][{e.at("alpha").get<Monomial>(), e.at("q").get<int>(), e.at("p").get<int>()}] =
            rational_vector_from_json(e.at("value"));
    validate(d);
    return d;
}

namespace {

Rational p1_coef(const PlusModelData& d, const Monomial& beta, int p, int q)
{
    int k = total_degree(beta) + 1;
    auto it = d.p1.find(k);
    if (it == d.p1.end())
        return Rational(0);
    auto jt = it->second.find({beta, p});
    return jt == it->second.end() ? Rational(0) : jt->second[q];
}

Rational p2_coef(const PlusModelData& d, const Monomial& beta, int q, int p)
{
    int k = total_degree(beta) + 1;
    auto it = d.p2.find(k);
    if (it == d.p2.end())
        return Rational(0);
    auto jt = it->second.find({beta, q});
    return jt == it->second.end() ? Rational(0) : jt->second[p];
}

Rational p3_paired(const PlusModelData& d, const Monomial& alpha, int q, int p, int i)
{
    int k = total_degree(alpha) + 2;
    auto it = d.p3.find(k);
    if (it == d.p3.end())
        return Rational(0);
    auto jt = it->second.find({alpha, q, p});
    if (jt == it->second.end())
        return Rational(0);
    Rational s(0);
    for (int l = 0; l < d.base.u; ++l)
        s.add_mul(jt->second[l], d.base.pairing.at(l, i));
    return s;
}

int plus_max_order(const PlusModelData& d)
{
    int K = 1;
    for (const auto* m : {&d.p1, &d.p2})
        if (!m->empty())
            K = std::max(K, m->rbegin()->first);
    if (!d.p3.empty())
        K = std::max(K, d.p3.rbegin()->first);
    return K;
}

} // namespace

void validate(const PlusModelData& d)
{
    validate(d.base);
    const int u = d.base.u;
    auto check_alpha = [&](const Monomial& a, int deg) {
        if (static_cast<int>(a.size()) != u || total_degree(a) != deg ||
            std::any_of(a.begin(), a.end(), [](int e) { return e < 0; }))
            throw std::invalid_argument("plus data: bad multi-index");
    };
    for (const auto& [k, t] : d.p1)
        for (const auto& [key, v] : t) {
            check_alpha(key.first, k - 1);
            if (k < 2 || key.second < 0 || key.second >= d.w1 || static_cast<int>(v.size()) != d.w2)
                throw std::invalid_argument("plus data: bad W1 -> W2 entry");
        }
    for (const auto& [k, t] : d.p2)
        for (const auto& [key, v] : t) {
            check_alpha(key.first, k - 1);
            if (k < 2 || key.second < 0 || key.second >= d.w2 || static_cast<int>(v.size()) != d.w1)
                throw std::invalid_argument("plus data: bad W2dual -> W1dual entry");
        }
    for (const auto& [k, t] : d.p3)
        for (const auto& [key, v] : t) {
            check_alpha(std::get<0>(key), k - 2);
            if (k < 2 || std::get<1>(key) < 0 || std::get<1>(key) >= d.w2 || std::get<2>(key) < 0 ||
                std::get<2>(key) >= d.w1 || static_cast<int>(v.size()) != u)
                throw std::invalid_argument("plus data: bad mixed entry");
        }

    int K = plus_max_order(d);
    for (int k = 2; k <= K; ++k)
        for (const Monomial& beta : monomials_of_degree(u, k - 1))
            for (int p = 0; p < d.w1; ++p)
                for (int q = 0; q < d.w2; ++q) {
                    Rational c1 = p1_coef(d, beta, p, q);
                    if (c1 != p2_coef(d, beta, q, p))
                        throw InvariantViolation("plus data: W1 -> W2 and W2dual -> W1dual products disagree at order " +
                                                 std::to_string(k));
                    for (int i = 0; i < u; ++i) {
                        if (beta[i] == 0)
                            continue;
                        Monomial alpha = beta;
                        --alpha[i];
                        if (p3_paired(d, alpha, q, p, i) != c1)
                            throw InvariantViolation("plus data: mixed product disagrees with W1 -> W2 at order " +
                                                     std::to_string(k));
                    }
                }
    for (int k = 2; k <= K; ++k)
        for (const Monomial& alpha : monomials_of_degree(u, k - 2))
            for (int p = 0; p < d.w1; ++p)
                for (int q = 0; q < d.w2; ++q)
                    for (int i = 0; i < u; ++i)
                        if (p3_paired(d, alpha, q, p, i) != p1_coef(d, plus(alpha, unit_vec(u, i)), p, q))
                            throw InvariantViolation("plus data: mixed product has no W1 -> W2 counterpart");
}

PlusModelData random_plus(int u, int w1, int w2, int K, std::uint64_t seed, int range)
{
    PlusModelData d;
    d.base = random_cyclic(u, K, seed, 3);
    d.w1 = w1;
    d.w2 = w2;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::map<std::tuple<Monomial, int, int>, Rational> g;
    for (int k = 2; k <= K; ++k)
        for (const Monomial& beta : monomials_of_degree(u, k - 1))
            for (int p = 0; p < w1; ++p)
                for (int q = 0; q < w2; ++q)
                    g[{beta, p, q}] = Rational(draw(rng, range));
    for (const auto& [key, c] : g) {
        const auto& [beta, p, q] = key;
        int k = total_degree(beta) + 1;
        Rational v = c * mono_factorial(beta);
        auto& e1 = d.p1[k][{beta, p}];
        e1.resize(w2);
        e1[q] = v;
        auto& e2 = d.p2[k][{beta, q}];
        e2.resize(w1);
        e2[p] = v;
    }
    for (int k = 2; k <= K; ++k)
        for (const Monomial& alpha : monomials_of_degree(u, k - 2))
            for (int p = 0; p < w1; ++p)
                for (int q = 0; q < w2; ++q) {
                    std::vector<Rational> t(u);
                    for (int i = 0; i < u; ++i) {
                        Monomial beta = plus(alpha, unit_vec(u, i));
                        t[i] = g.at({beta, p, q}) * mono_factorial(beta);
                    }
                    d.p3[k][{alpha, q, p}] = unpair(d.base.pairing, t);
                }
    return d;
}

AlgebraPtr plus_ring(const PlusModelData& d, int D)
{
    std::vector<std::string> names;
    for (int i = 1; i <= d.base.u; ++i)
        names.push_back("x" + std::to_string(i));
    for (int p = 1; p <= d.w1; ++p)
        names.push_back("a" + std::to_string(p));
    for (int q = 1; q <= d.w2; ++q)
        names.push_back("b" + std::to_string(q));
    return TruncatedPolyAlgebra::even(names, D);
}

PolyElement plus_function_g(const PlusModelData& d, AlgebraPtr ring)
{
    const int u = d.base.u, n = u + d.w1 + d.w2;
    PolyElement g(ring);
    for (const auto& [k, t] : d.p1)
        for (const auto& [key, v] : t)
            for (int q = 0; q < d.w2; ++q) {
                if (v[q].is_zero())
                    continue;
                Monomial m = embed_mono(key.first, 0, n);
                ++m[u + key.second];
                ++m[u + d.w1 + q];
                g.add_term(m, v[q] / mono_factorial(key.first));
            }
    return g;
}

std::vector<PolyElement> plus_model_images(const PlusModelData& d, AlgebraPtr ring)
{
    const int u = d.base.u, n = u + d.w1 + d.w2;
    std::vector<PolyElement> images(n, PolyElement(ring));
    AlgebraPtr xalg = coordinate_algebra(u, ring->trunc());
    auto adj = adjoint_map(d.base, xalg);
    for (int i = 0; i < u; ++i)
        for (const auto& [m, c] : adj[i].terms())
            images[i].add_term(embed_mono(m, 0, n), c);
    for (const auto& [k, t] : d.p3)
        for (const auto& [key, v] : t) {
            const auto& [alpha, q, p] = key;
            for (int i = 0; i < u; ++i) {
                Rational s = p3_paired(d, alpha, q, p, i);
                if (s.is_zero())
                    continue;
                Monomial m = embed_mono(alpha, 0, n);
                ++m[u + p];
                ++m[u + d.w1 + q];
                images[i].add_term(m, s / mono_factorial(alpha));
            }
        }
    for (const auto& [k, t] : d.p1)
        for (const auto& [key, v] : t)
            for (int q = 0; q < d.w2; ++q) {
                if (v[q].is_zero())
                    continue;
                Monomial m = embed_mono(key.first, 0, n);
                ++m[u + d.w1 + q];
                images[u + key.second].add_term(m, v[q] / mono_factorial(key.first));
            }
    for (const auto& [k, t] : d.p2)
        for (const auto& [key, v] : t)
            for (int p = 0; p < d.w1; ++p) {
                if (v[p].is_zero())
                    continue;
                Monomial m = embed_mono(key.first, 0, n);
                ++m[u + p];
                images[u + d.w1 + key.second].add_term(m, v[p] / mono_factorial(key.first));
            }
    return images;
}

LemmaFGReport verify_lemma_fg(const PlusModelData& data, int D)
{
    validate(data);
    const int u = data.base.u, n = u + data.w1 + data.w2;
    LemmaFGReport r;

    AlgebraPtr probe = plus_ring(data, plus_max_order(data) + data.base.max_order() + 2);
    PolyElement f(probe);
    {
        AlgebraPtr xalg = coordinate_algebra(u, probe->trunc());
        PolyElement fx = potential_from_cyclic(data.base, xalg);
        for (const auto& [m, c] : fx.terms())
            f.add_term(embed_mono(m, 0, n), c);
    }
    PolyElement g = plus_function_g(data, probe);
    PolyElement sum = f + g;
    PolyElement prod = f * g;
    int lag = truncation_lag(sum.max_degree());

    for (int d : {D, D + 2}) {
        AlgebraPtr ring = plus_ring(data, d + lag);
        auto images = plus_model_images(data, ring);
        PolyElement w = change_truncation(sum, ring);
        for (int i = 0; i < n; ++i)
            if (partial_derivative(w, i) != images[i])
                r.differentials_agree = false;
        r.plus_dims[d] = koszul_cohomology(images, d);
        std::vector<PolyElement> dw;
        for (int i = 0; i < n; ++i)
            dw.push_back(partial_derivative(w, i));
        r.dcrit_dims[d] = koszul_cohomology(dw, d);
        if (n > 0) {
            AlgebraPtr pring = plus_ring(data, d + truncation_lag(prod.max_degree()));
            PolyElement pw = change_truncation(prod, pring);
            std::vector<PolyElement> dp;
            for (int i = 0; i < n; ++i)
                dp.push_back(partial_derivative(pw, i));
            r.product_dims[d] = koszul_cohomology(dp, d);
        }
        if (r.plus_dims[d] != r.dcrit_dims[d])
            r.holds = false;
    }
    return r;
}

} // namespace chainlab
