#include "chainlab/runner.hpp"

#include "chainlab/bar.hpp"
#include "chainlab/dcrit.hpp"
#include "chainlab/expr.hpp"
#include "chainlab/ext.hpp"
#include "chainlab/hochschild.hpp"
#include "chainlab/json_util.hpp"
#include "chainlab/mf.hpp"
#include "chainlab/twisted.hpp"
#include "chainlab/uwindow.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace chainlab {

using nlohmann::json;

namespace {

class Scenario {
public:
    Scenario(const std::string& command, const json& j, std::vector<std::string> allowed, const Overrides& ov)
        : j_(j), ov_(ov)
    {
        if (!j.is_object())
            throw UsageError("scenario must be a JSON object");
        allowed.push_back("command");
        for (const auto& [k, v] : j.items()) {
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw UsageError("unknown scenario field '" + k + "' for " + command);
        }
        if (j.contains("command") && j["command"] != command)
            throw UsageError("scenario command '" + j["command"].dump() + "' does not match " + command);
    }

    bool has(const std::string& k) const { return j_.contains(k); }
    const json& raw(const std::string& k) const { return j_.at(k); }

    int integer(const std::string& k, int def, int lo = 0) const
    {
        int v = def;
        if (j_.contains(k)) {
            if (!j_[k].is_number_integer())
                throw UsageError("field '" + k + "' must be an integer");
            v = j_[k].get<int>();
        }
        if (v < lo)
            throw UsageError("field '" + k + "' must be at least " + std::to_string(lo));
        params[k] = v;
        return v;
    }

    std::string string(const std::string& k, std::optional<std::string> def = std::nullopt) const
    {
        if (!j_.contains(k)) {
            if (!def)
                throw UsageError("missing required field '" + k + "'");
            params[k] = *def;
            return *def;
        }
        if (!j_[k].is_string())
            throw UsageError("field '" + k + "' must be a string");
        params[k] = j_[k];
        return j_[k].get<std::string>();
    }

    bool boolean(const std::string& k, bool def) const
    {
        bool v = def;
        if (j_.contains(k)) {
            if (!j_[k].is_boolean())
                throw UsageError("field '" + k + "' must be a boolean");
            v = j_[k].get<bool>();
        }
        params[k] = v;
        return v;
    }

    int trunc(const std::string& k, int builtin) const
    {
        int v = builtin;
        if (ov_.trunc)
            v = *ov_.trunc;
        else if (j_.contains(k))
            return integer(k, builtin, 0);
        else if (ov_.default_trunc)
            v = *ov_.default_trunc;
        if (v < 0)
            throw UsageError("truncation must be nonnegative");
        params[k] = v;
        return v;
    }

    int window(const std::string& k, int builtin) const
    {
        if (ov_.bar_window) {
            if (*ov_.bar_window < 1)
                throw UsageError("bar window must be positive");
            params[k] = *ov_.bar_window;
            return *ov_.bar_window;
        }
        return integer(k, builtin, 1);
    }

    std::uint64_t seed(const std::string& k, std::uint64_t builtin) const
    {
        std::uint64_t v = builtin;
        if (ov_.seed) {
            v = *ov_.seed;
        } else if (j_.contains(k)) {
            if (!j_[k].is_number_integer() || (!j_[k].is_number_unsigned() && j_[k].get<long long>() < 0))
                throw UsageError("field '" + k + "' must be a nonnegative integer");
            v = j_[k].get<std::uint64_t>();
        }
        params[k] = v;
        return v;
    }

    mutable json params = json::object();

private:
    const json& j_;
    const Overrides& ov_;
};

json dims_json(const std::map<int, int>& m)
{
    json a = json::array();
    for (const auto& [k, v] : m)
        a.push_back({{"degree", k}, {"dim", v}});
    return a;
}

json parity_json(const ParityDims& d)
{
    return {{"even", d.even}, {"odd", d.odd}};
}

std::string monomial_str(const Monomial& m)
{
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i)
        s += (i ? "," : "") + std::to_string(m[i]);
    return s + ")";
}

PolyElement parse_in_own_ring(const std::string& text, int trunc)
{
    ParsedPoly p = parse_polynomial(text);
    AlgebraPtr ring = TruncatedPolyAlgebra::even(p.vars, trunc);
    return parse_polynomial(text, ring);
}

int status_code(const std::string& s)
{
    if (s == "pass")
        return kPass;
    if (s == "unstable")
        return kUnstable;
    return kViolation;
}

struct Built {
    json result;
    std::string status = "pass";
    std::string csv;
};

using Handler = std::function<Built(const Scenario&)>;

// ext-basic

Built run_ext(const Scenario& s)
{
    int n = s.integer("n", 4, 2);
    int degree = s.integer("degree", 5, 1);
    std::uint64_t seed = s.seed("seed", 1);
    ProjectiveSetup setup = ProjectiveSetup::generic(n, seed, degree);
    ExtTable t = ext_table(setup);
    Built b;
    b.result = t.to_json();
    b.result["grid"] = t.grid();
    b.result["seed_used"] = setup.seed;
    b.result["reseed_log"] = setup.log;
    b.result["quintic_terms"] = static_cast<int>(setup.q.terms().size());
    bool euler = std::all_of(t.twists.begin(), t.twists.end(), [](const auto& x) { return x.euler_conserved; });
    bool dual = !t.ext.empty() && t.ext.front() == t.ext.back();
    b.result["euler_conserved"] = euler;
    b.result["ext0_equals_top"] = dual;
    if (!(t.degenerate && t.e1_differentials_zero && euler && dual))
        b.status = "violation";
    return b;
}

// dcrit

Built run_dcrit(const Scenario& s)
{
    std::string f = s.string("f");
    int D = s.trunc("trunc", 6);
    DcritResult r = dcrit_cohomology(parse_polynomial(f), D);
    Built b;
    b.result = {{"dims", dims_json(r.dims)}, {"dims_next", dims_json(r.dims_next)}, {"stable", r.stable}};
    if (!r.stable)
        b.status = "unstable";
    return b;
}

// lemma-ax

json ax_json(const LemmaAXReport& r)
{
    json j{{"holds", r.holds}, {"cyclic", r.cyclic}, {"max_deviation", rational_to_json(r.max_deviation)}};
    if (r.witness_component) {
        j["witness"] = {{"component", *r.witness_component},
                        {"monomial", monomial_str(*r.witness_monomial)},
                        {"df", rational_to_json(r.witness_df)},
                        {"adjoint", rational_to_json(r.witness_adjoint)}};
    }
    return j;
}

Built run_lemma_ax(const Scenario& s)
{
    int D = s.trunc("trunc", 8);
    Built b;
    if (s.has("data")) {
        CyclicLInfinity data = CyclicLInfinity::from_json(s.raw("data"));
        LemmaAXReport r = verify_lemma_AX(data, D);
        b.result = {{"instances", 1}, {"passed", r.holds ? 1 : 0}, {"reports", json::array({ax_json(r)})}};
        if (!r.holds)
            b.status = "violation";
        return b;
    }
    int count = s.integer("instances", 100, 1);
    int u = s.integer("u", 3, 1);
    int K = s.integer("K", 4, 2);
    int range = s.integer("range", 3, 1);
    std::uint64_t seed = s.seed("seed", 1);
    int passed = 0;
    json failures = json::array();
    for (int i = 0; i < count; ++i) {
        int ui = 1 + i % u;
        int Ki = K <= 2 ? K : 2 + (i / u) % (K - 1);
        CyclicLInfinity data = random_cyclic(ui, Ki, seed + static_cast<std::uint64_t>(i), range);
        LemmaAXReport r = verify_lemma_AX(data, D);
        if (r.holds) {
            ++passed;
        } else {
            json f = ax_json(r);
            f["instance"] = i;
            failures.push_back(f);
        }
    }
    b.result = {{"instances", count}, {"passed", passed}, {"failures", failures}};
    if (passed != count)
        b.status = "violation";
    return b;
}

// lemma-fg

json nested_dims(const std::map<int, std::map<int, int>>& m)
{
    json j = json::array();
    for (const auto& [D, d] : m)
        j.push_back({{"trunc", D}, {"dims", dims_json(d)}});
    return j;
}

json fg_json(const LemmaFGReport& r)
{
    return {{"holds", r.holds},
            {"plus_dims", nested_dims(r.plus_dims)},
            {"dcrit_sum_dims", nested_dims(r.dcrit_dims)},
            {"dcrit_product_dims", nested_dims(r.product_dims)},
            {"differentials_agree", r.differentials_agree}};
}

Built run_lemma_fg(const Scenario& s)
{
    int D = s.trunc("trunc", 4);
    Built b;
    if (s.has("data")) {
        PlusModelData data = PlusModelData::from_json(s.raw("data"));
        validate(data);
        LemmaFGReport r = verify_lemma_fg(data, D);
        b.result = {{"instances", 1}, {"passed", r.holds ? 1 : 0}, {"reports", json::array({fg_json(r)})}};
        if (!r.holds)
            b.status = "violation";
        return b;
    }
    int count = s.integer("instances", 21, 1);
    int u = s.integer("u", 2, 1);
    int w1 = s.integer("w1", 1, 1);
    int w2 = s.integer("w2", 1, 1);
    int K = s.integer("K", 3, 2);
    std::uint64_t seed = s.seed("seed", 1);
    int passed = 0;
    json failures = json::array();
    json first;
    for (int i = 0; i < count; ++i) {
        // instance 0 is the one-dimensional model with W1 = W2 = 1
        int ui = i == 0 ? 1 : 1 + i % u;
        int a = i == 0 ? 1 : 1 + (i / u) % w1;
        int c = i == 0 ? 1 : 1 + (i / u) % w2;
        PlusModelData data = random_plus(ui, a, c, K, seed + static_cast<std::uint64_t>(i));
        LemmaFGReport r = verify_lemma_fg(data, D);
        if (i == 0)
            first = fg_json(r);
        if (r.holds) {
            ++passed;
        } else {
            json f = fg_json(r);
            f["instance"] = i;
            failures.push_back(f);
        }
    }
    b.result = {{"instances", count}, {"passed", passed}, {"failures", failures}, {"one_dimensional", first}};
    if (passed != count)
        b.status = "violation";
    return b;
}

// mf-end

json mf_report_json(const MFReport& r)
{
    return {{"ok", r.ok}, {"where", r.where}, {"row", r.row}, {"col", r.col}, {"expected", r.expected},
            {"actual", r.actual}};
}

Built run_mf_end(const Scenario& s)
{
    int D = s.trunc("trunc", 6);
    MatrixFactorization a = MatrixFactorization::from_json(s.raw("mf"));
    s.params["mf"] = s.raw("mf");
    MatrixFactorization target = s.has("target") ? MatrixFactorization::from_json(s.raw("target")) : a;
    if (s.has("target"))
        s.params["target"] = s.raw("target");
    Built b;
    MFReport va = mf_validate(a), vb = mf_validate(target);
    b.result["valid_source"] = mf_report_json(va);
    b.result["valid_target"] = mf_report_json(vb);
    if (!va.ok || !vb.ok) {
        b.status = "violation";
        return b;
    }
    MFHomResult r = mf_hom_cohomology(a, target, D);
    b.result["dims"] = parity_json(r.dims);
    b.result["dims_next"] = parity_json(r.dims_next);
    b.result["stable"] = r.stable;
    MFHomResult shifted = mf_hom_cohomology(a, mf_shift(target), D);
    bool exchange = shifted.dims.even == r.dims.odd && shifted.dims.odd == r.dims.even;
    b.result["shift_parity_exchange"] = exchange;
    b.result["shift_dims"] = parity_json(shifted.dims);
    Monomial zero(a.ring->ngens(), 0);
    PolyMatrix one = poly_matrix(a.ring, 1, 1);
    one[0][0] = PolyElement::monomial(a.ring, zero);
    PolyMatrix fm = poly_matrix(a.ring, 1, 1);
    fm[0][0] = a.f;
    MatrixFactorization unit(a.ring, a.f, 1, 1, one, fm);
    MFHomResult triv = mf_hom_cohomology(unit, unit, D);
    bool contractible = triv.dims.total() == 0;
    b.result["unit_factorization_contractible"] = contractible;
    if (!exchange || !contractible)
        b.status = "violation";
    else if (!r.stable)
        b.status = "unstable";
    return b;
}

// hochschild-check, hp

CurvedAlgebra curved_from_scenario(const Scenario& s, int trunc_default)
{
    int given = (s.has("algebra") ? 1 : 0) + (s.has("preset") ? 1 : 0) + (s.has("potential") ? 1 : 0);
    if (given != 1)
        throw UsageError("give exactly one of 'algebra', 'preset', 'potential'");
    if (s.has("algebra")) {
        s.params["algebra"] = s.raw("algebra");
        return CurvedAlgebra::from_json(s.raw("algebra"));
    }
    if (s.has("potential")) {
        std::string w = s.string("potential");
        int T = s.trunc("trunc", trunc_default);
        return curved_from_potential(parse_in_own_ring(w, T), T);
    }
    std::string p = s.string("preset");
    if (p == "Q")
        return CurvedAlgebra::truncated_line(1);
    if (p == "dual")
        return CurvedAlgebra::truncated_line(2);
    if (p == "x6-curved")
        return CurvedAlgebra::truncated_line(6, {{2, Rational(1)}});
    throw UsageError("unknown preset '" + p + "' (Q, dual, x6-curved)");
}

Built run_hochschild(const Scenario& s)
{
    CurvedAlgebra A = curved_from_scenario(s, 6);
    A.validate();
    int nb = s.window("bar_window", 6);
    HochschildWindow w(A, nb);
    MixedIdentityReport r = mixed_identity_check(w);
    Built b;
    b.result["window_chains"] = static_cast<long long>(w.chains().size());
    b.result["interior_chains"] = static_cast<long long>(w.interior_indices().size());
    json ids = json::array();
    for (const auto& id : r.identities)
        ids.push_back({{"name", id.name},
                       {"holds", id.holds},
                       {"chains_checked", id.chains_checked},
                       {"max_length_checked", id.max_length_checked},
                       {"witness", id.witness},
                       {"residue", id.residue}});
    b.result["identities"] = ids;
    b.result["holds"] = r.holds;
    if (!r.holds)
        b.status = "violation";
    return b;
}

Built run_hp(const Scenario& s)
{
    HPParams p;
    p.m = s.integer("m", 8, 1);
    p.e = s.integer("e", 0, 0);
    p.lag = s.integer("lag", 0, 0);
    p.N = s.integer("N", 2, 1);
    int e_guess = std::max(p.e, 2);
    CurvedAlgebra A = curved_from_scenario(s, p.m + 2 + std::max(p.lag, e_guess + 1) + 2 * e_guess);
    HPResult r = hp_dims(A, p);
    Built b;
    b.result = {{"dims", parity_json(r.dims)},
                {"dims_next", parity_json(r.dims_next)},
                {"stable", r.stable},
                {"cells", r.cells},
                {"effective", {{"m", r.params.m}, {"e", r.params.e}, {"lag", r.params.lag}, {"N", r.params.N}}}};
    if (s.has("potential")) {
        int T = s.params["trunc"].get<int>();
        TwistedResult t = twisted_cohomology(parse_in_own_ring(s.raw("potential").get<std::string>(), T), 6);
        bool agree = t.total() == r.dims.total();
        b.result["twisted_total"] = t.total();
        b.result["twisted_stable"] = t.stable;
        b.result["agrees_with_twisted"] = agree;
        if (!agree && r.stable && t.stable)
            b.status = "violation";
    }
    if (b.status == "pass" && !r.stable)
        b.status = "unstable";
    return b;
}

// twisted-derham, hkr-check

Built run_twisted(const Scenario& s)
{
    std::string w = s.string("W");
    int D = s.trunc("trunc", 6);
    int samples = s.integer("samples", 3, 1);
    std::uint64_t seed = s.seed("seed", 12345);
    PolyElement W = parse_in_own_ring(w, D + 2);
    TwistedResult r = twisted_cohomology(W, D, samples, seed);
    TwistedDeRham td(W, D);
    Built b;
    b.result = {{"dims", dims_json(r.dims)},
                {"dims_next", dims_json(r.dims_next)},
                {"parity", parity_json(r.parity)},
                {"total", r.total()},
                {"stable", r.stable},
                {"filtration_weights", td.weights()},
                {"euler_characteristic", euler_characteristic(td)}};
    long long chi = 0;
    for (const auto& [k, v] : r.dims)
        chi += (k % 2 ? -v : v);
    if (chi != euler_characteristic(td))
        b.status = "violation";
    else if (!r.stable)
        b.status = "unstable";
    return b;
}

Built run_hkr(const Scenario& s)
{
    std::string w = s.string("W");
    int D = s.trunc("trunc", 8);
    int len = s.integer("max_len", 4, 1);
    HKRReport r = hkr_check(parse_in_own_ring(w, D), D, len);
    Built b;
    b.result = {{"holds", r.holds},
                {"chains_checked", r.chains_checked},
                {"max_length", r.max_length},
                {"witness", r.witness},
                {"failing_operator", r.which}};
    if (!r.holds)
        b.status = "violation";
    return b;
}

// gm-check, family-scan

std::vector<Rational> grid_from(const Scenario& s, std::vector<Rational> def)
{
    if (!s.has("grid")) {
        s.params["grid"] = rational_vector_to_json(def);
        return def;
    }
    if (!s.raw("grid").is_array())
        throw UsageError("field 'grid' must be an array");
    std::vector<Rational> g = rational_vector_from_json(s.raw("grid"));
    s.params["grid"] = rational_vector_to_json(g);
    return g;
}

Built run_gm(const Scenario& s)
{
    std::string fam = s.string("family");
    std::string param = s.string("param", std::string("t"));
    int D = s.trunc("trunc", 4);
    int bound = s.integer("u_bound", 3, 2);
    PotentialFamily f = PotentialFamily::parse(fam, param, {}, D);
    GMReport r = gm_flatness_check(f, D, bound);
    Built b;
    long long residue = (r.commutator_zero ? 0 : 1) + (r.square_zero ? 0 : 1);
    b.result = {{"flat", r.flat},
                {"commutator_zero", r.commutator_zero},
                {"square_zero", r.square_zero},
                {"residue", residue},
                {"forms_checked", r.forms_checked},
                {"bracket_terms_nonzero",
                 {{"u_inv_dW_dtW", r.bracket_nonzero[0]},
                  {"d_dtW", r.bracket_nonzero[1]},
                  {"dW_dt", r.bracket_nonzero[2]},
                  {"u_d_dt", r.bracket_nonzero[3]}}},
                {"witness", r.witness}};
    if (!r.flat)
        b.status = "violation";
    return b;
}

Built run_scan(const Scenario& s)
{
    std::string fam = s.string("family");
    std::string param = s.string("param", std::string("t"));
    int D = s.trunc("trunc", 6);
    int samples = s.integer("samples", 3, 1);
    std::uint64_t seed = s.seed("seed", 12345);
    std::vector<Rational> grid = grid_from(s, {Rational(-1), Rational(0), Rational(1), Rational(2)});
    PotentialFamily f = PotentialFamily::parse(fam, param, grid, D + 2);
    FamilyScan scan = family_scan(f, D, samples, seed);
    Built b;
    json pts = json::array();
    bool all_stable = true;
    for (const auto& p : scan.points) {
        pts.push_back({{"t", p.t.str()}, {"dim_even", p.dims.even}, {"dim_odd", p.dims.odd}, {"stable", p.stable}});
        all_stable = all_stable && p.stable;
    }
    b.result = {{"points", pts}, {"constant", scan.constant}, {"unstable_points", !all_stable}};
    b.csv = scan.csv();
    if (!all_stable)
        b.status = "unstable";
    else if (!scan.constant)
        b.status = "violation";
    return b;
}

// ss-demo, bar-tor

struct PairHolder {
    AlgebraPtr ring;
    AugmentedAlgebraModulePair pair;
};

FiniteModule module_from(const json& j, const FiniteAlgebra& A, const AlgebraPtr& ring, const std::string& which)
{
    if (j.is_string()) {
        if (j == "augmentation")
            return FiniteModule::augmentation(A);
        if (j == "regular")
            return FiniteModule::regular(A);
        throw UsageError("module '" + which + "' must be \"augmentation\", \"regular\" or {\"quotient\": [...]}");
    }
    if (j.is_object() && j.size() == 1 && j.contains("quotient") && j["quotient"].is_array()) {
        if (!ring)
            throw UsageError("quotient modules need an algebra given by 'vars'");
        return FiniteModule::monomial_quotient(A, *ring, j["quotient"].get<std::vector<std::string>>());
    }
    throw UsageError("malformed module '" + which + "'");
}

PairHolder pair_from(const Scenario& s, const json& def_alg, const json& def_right, const json& def_left)
{
    PairHolder h;
    json alg = s.has("algebra") ? s.raw("algebra") : def_alg;
    s.params["algebra"] = alg;
    if (!alg.is_object())
        throw UsageError("field 'algebra' must be an object");
    for (const auto& [k, v] : alg.items())
        if (k != "vars" && k != "trunc" && k != "line")
            throw UsageError("unknown algebra field '" + k + "'");
    if (alg.contains("line")) {
        if (!alg["line"].is_number_integer() || alg["line"].get<int>() < 1)
            throw UsageError("algebra 'line' must be a positive integer");
        h.pair.algebra = FiniteAlgebra::truncated_line(alg["line"].get<int>());
    } else {
        if (!alg.contains("vars") || !alg.contains("trunc"))
            throw UsageError("algebra needs 'vars' and 'trunc' (or 'line')");
        h.ring = TruncatedPolyAlgebra::even(alg["vars"].get<std::vector<std::string>>(), alg["trunc"].get<int>());
        h.pair.algebra = FiniteAlgebra::from_truncated(*h.ring);
    }
    json r = s.has("right") ? s.raw("right") : def_right;
    json l = s.has("left") ? s.raw("left") : def_left;
    s.params["right"] = r;
    s.params["left"] = l;
    h.pair.right = module_from(r, h.pair.algebra, h.ring, "right");
    h.pair.left = module_from(l, h.pair.algebra, h.ring, "left");
    if (s.has("weight_cutoff"))
        h.pair.weight_cutoff = s.integer("weight_cutoff", 0, 0);
    h.pair.validate();
    return h;
}

Built run_ss(const Scenario& s)
{
    json alg{{"vars", {"x", "y"}}, {"trunc", 4}};
    json killed_x{{"quotient", {"x"}}}, killed_y{{"quotient", {"y"}}};
    bool default_cutoff = !s.has("weight_cutoff") && !s.has("algebra");
    PairHolder h = pair_from(s, alg, killed_x, killed_y);
    if (default_cutoff) {
        h.pair.weight_cutoff = 3;
        s.params["weight_cutoff"] = 3;
    }
    int window = s.window("bar_window", 3);
    int r_max = s.integer("pages", 3, 1);
    BarComplex bar(h.pair, window);
    FilteredComplex fc = bar_length_filtration(bar);
    std::vector<SpectralPage> pages = spectral_sequence(fc, r_max);
    auto H = cohomology_dims(bar.complex());
    Built b;
    json pj = json::array();
    for (const auto& pg : pages) {
        json entries = json::array();
        for (const auto& e : pg.entries)
            if (e.dim != 0)
                entries.push_back({{"p", e.p}, {"q", e.q}, {"dim", e.dim}});
        pj.push_back({{"page", pg.r}, {"entries", entries}, {"converged", pg.converged}});
    }
    const SpectralPage& last = pages.back();
    bool converges = last.converged;
    json conv = json::array();
    for (const auto& [n, d] : H) {
        conv.push_back({{"degree", n}, {"e_infinity_total", last.total(n)}, {"cohomology", d}});
        converges = converges && last.total(n) == d;
    }
    int degenerate_at = -1;
    for (const auto& pg : pages)
        if (pg.converged) {
            degenerate_at = pg.r;
            break;
        }
    b.result = {{"pages", pj}, {"convergence", conv}, {"converges", converges}, {"degenerates_at", degenerate_at}};
    if (!converges)
        b.status = "violation";
    return b;
}

Built run_bar_tor(const Scenario& s)
{
    json alg{{"line", 2}};
    PairHolder h = pair_from(s, alg, "augmentation", "augmentation");
    int window = s.window("bar_window", 6);
    TorResult r = bar_tor_dims(h.pair, window);
    int oracle = tensor_over_algebra_dim(h.pair);
    Built b;
    json tor = json::array();
    bool certified_below = true;
    for (const auto& [k, v] : r.dims) {
        tor.push_back({{"degree", k}, {"dim", v}, {"certified", r.certified.at(k)}});
        if (k < window && !r.certified.at(k))
            certified_below = false;
    }
    b.result = {{"tor", tor}, {"tor0_oracle", oracle}, {"tor0_matches", r.dims.at(0) == oracle}};
    if (r.dims.at(0) != oracle)
        b.status = "violation";
    else if (!certified_below)
        b.status = "unstable";
    return b;
}

struct Entry {
    std::vector<std::string> fields;
    Handler run;
};

const std::map<std::string, Entry>& table()
{
    static const std::map<std::string, Entry> t{
        {"ext-basic", {{"n", "degree", "seed"}, run_ext}},
        {"dcrit", {{"f", "trunc"}, run_dcrit}},
        {"lemma-ax", {{"instances", "u", "K", "range", "trunc", "seed", "data"}, run_lemma_ax}},
        {"lemma-fg", {{"instances", "u", "w1", "w2", "K", "trunc", "seed", "data"}, run_lemma_fg}},
        {"mf-end", {{"mf", "target", "trunc"}, run_mf_end}},
        {"hochschild-check", {{"algebra", "preset", "potential", "trunc", "bar_window"}, run_hochschild}},
        {"hp", {{"algebra", "preset", "potential", "trunc", "m", "e", "lag", "N"}, run_hp}},
        {"twisted-derham", {{"W", "trunc", "samples", "seed"}, run_twisted}},
        {"hkr-check", {{"W", "trunc", "max_len"}, run_hkr}},
        {"gm-check", {{"family", "param", "trunc", "u_bound"}, run_gm}},
        {"family-scan", {{"family", "param", "grid", "trunc", "samples", "seed"}, run_scan}},
        {"ss-demo", {{"algebra", "right", "left", "weight_cutoff", "bar_window", "pages"}, run_ss}},
        {"bar-tor", {{"algebra", "right", "left", "weight_cutoff", "bar_window"}, run_bar_tor}},
    };
    return t;
}

} // namespace

const std::vector<std::string>& subcommands()
{
    static const std::vector<std::string> v = [] {
        std::vector<std::string> out;
        for (const auto& [k, e] : table())
            out.push_back(k);
        return out;
    }();
    return v;
}

RunOutcome run_scenario(const std::string& command, const json& scenario, const Overrides& ov)
{
    auto it = table().find(command);
    if (it == table().end())
        throw UsageError("unknown subcommand '" + command + "'");
    Scenario s(command, scenario, it->second.fields, ov);
    RunOutcome out;
    Built b;
    try {
        b = it->second.run(s);
    } catch (const UsageError&) {
        throw;
    } catch (const ParseError& e) {
        throw UsageError(std::string("cannot parse polynomial: ") + e.what());
    } catch (const json::exception& e) {
        throw UsageError(std::string("malformed scenario: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const InvariantViolation& e) {
        b.result = {{"error", e.what()}};
        b.status = "violation";
    } catch (const WindowOverflow& e) {
        b.result = {{"error", e.what()}};
        b.status = "unstable";
    }
    out.exit_code = status_code(b.status);
    out.report = {{"command", command}, {"parameters", s.params}, {"result", b.result}, {"status", b.status},
                  {"exit_code", out.exit_code}};
    out.csv = b.csv;
    return out;
}

std::string canonical_dump(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace chainlab
