#include "chainlab/dcrit.hpp"
#include "chainlab/runner.hpp"
#include "chainlab/twisted.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace chainlab;
using nlohmann::json;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

struct Criterion {
    std::string name;
    double limit_seconds;
    std::function<Verdict()> run;
};

json run(const std::string& cmd, const json& scenario, const Overrides& ov = {})
{
    return run_scenario(cmd, scenario, ov).report;
}

bool passed(const json& report)
{
    return report.at("status") == "pass" && report.at("exit_code") == 0;
}

Verdict check_ext_basic()
{
    Verdict v;
    json r = run("ext-basic", json::object());
    v.require(passed(r), "status " + r["status"].get<std::string>());
    const json& res = r["result"];
    v.require(res["ext"] == json::array({1, 59, 84, 1}), "ext " + res["ext"].dump());
    std::map<std::string, long long> want{{"0,0", 1}, {"1,0", 59}, {"2,0", 80}, {"0,2", 4}, {"1,2", 1}};
    std::map<std::string, long long> got;
    for (const auto& e : res["e2"])
        if (e["dim"].get<long long>() != 0)
            got[std::to_string(e["p"].get<int>()) + "," + std::to_string(e["q"].get<int>())] = e["dim"];
    v.require(got == want, "E2 pattern");
    v.require(res["degenerate"] == true, "degeneration");
    return v;
}

Verdict check_lemma_ax()
{
    Verdict v;
    json r = run("lemma-ax", {{"instances", 100}, {"u", 3}, {"K", 4}, {"trunc", 8}, {"seed", 1}});
    v.require(passed(r), "random instances");
    v.require(r["result"]["passed"] == 100, "passed " + r["result"]["passed"].dump());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CyclicLInfinity d = random_cyclic(2, 3, seed);
        auto& entry = d.products.at(2).begin()->second;
        entry[0] = entry[0] + Rational(1);
        json bad = run("lemma-ax", {{"data", d.to_json()}});
        v.require(bad["exit_code"] == kViolation, "negative control not rejected");
        v.require(bad["result"]["reports"][0].contains("witness"), "negative control without witness");
    }
    return v;
}

Verdict check_lemma_fg()
{
    Verdict v;
    json r = run("lemma-fg", {{"instances", 21}, {"trunc", 4}, {"seed", 1}});
    v.require(passed(r), "status");
    v.require(r["result"]["passed"] == 21, "passed " + r["result"]["passed"].dump());
    const json& one = r["result"]["one_dimensional"];
    v.require(one["holds"] == true, "one-dimensional instance");
    v.require(one["plus_dims"] == one["dcrit_sum_dims"], "plus dims differ from dCrit dims");
    v.require(one["plus_dims"].size() == 2, "two truncations");
    return v;
}

Verdict check_mf_end()
{
    Verdict v;
    json mf{{"ring", {{"vars", {"x"}}, {"trunc", 12}}}, {"f", "x^2"}, {"ranks", {1, 1}}, {"d0", {{"x"}}}, {"d1", {{"x"}}}};
    for (int D : {6, 8}) {
        json r = run("mf-end", {{"mf", mf}, {"trunc", D}});
        v.require(passed(r), "status at D=" + std::to_string(D));
        v.require(r["result"]["dims"] == json{{"even", 1}, {"odd", 1}}, "End dims at D=" + std::to_string(D));
        v.require(r["result"]["stable"] == true, "stability at D=" + std::to_string(D));
        v.require(r["result"]["shift_parity_exchange"] == true, "shift exchange");
        v.require(r["result"]["unit_factorization_contractible"] == true, "unit factorization");
    }
    return v;
}

Verdict check_mixed_identities()
{
    Verdict v;
    for (const char* preset : {"Q", "dual", "x6-curved"}) {
        json r = run("hochschild-check", {{"preset", preset}, {"bar_window", 6}});
        v.require(passed(r), std::string("identities on ") + preset);
        for (const auto& id : r["result"]["identities"])
            v.require(id["holds"] == true, id["name"].get<std::string>() + " on " + preset);
    }
    return v;
}

Verdict check_hp_and_hkr()
{
    Verdict v;
    std::vector<std::pair<std::string, int>> cases{{"x^2", 1}, {"x^3", 2}};
    for (const auto& [w, total] : cases) {
        json r = run("hp", {{"potential", w}, {"m", 6}});
        v.require(passed(r), "HP status for " + w);
        const json& res = r["result"];
        v.require(res["stable"] == true, "HP stability for " + w);
        v.require(res["twisted_stable"] == true, "twisted stability for " + w);
        v.require(res["dims"]["even"].get<int>() + res["dims"]["odd"].get<int>() == total, "HP total for " + w);
        v.require(res["twisted_total"] == total, "twisted total for " + w);
        json h = run("hkr-check", {{"W", w}, {"trunc", 8}, {"max_len", 4}});
        v.require(passed(h) && h["result"]["max_length"] == 4, "HKR for " + w);
    }
    return v;
}

std::string random_cubic_family(std::mt19937_64& rng, int nvars)
{
    const char* names[] = {"x", "y"};
    auto coef = [&]() { return std::to_string(1 + static_cast<int>(rng() % 4)); };
    std::string w;
    for (int i = 0; i < nvars; ++i)
        w += (i ? " + " : "") + coef() + "*" + names[i] + "^3";
    if (nvars == 2)
        w += " + " + coef() + "*x*y";
    for (int i = 0; i < nvars; ++i)
        w += " - " + coef() + "*t*" + names[i];
    if (rng() % 2)
        w += " + t^2*x^2";
    return w;
}

Verdict check_gm_flatness()
{
    Verdict v;
    json r = run("gm-check", {{"family", "x^3 - t*x"}});
    v.require(passed(r) && r["result"]["flat"] == true, "x^3 - t*x");
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        std::string w = random_cubic_family(rng, 1 + i % 2);
        json g = run("gm-check", {{"family", w}, {"trunc", 3}, {"u_bound", 2}});
        v.require(passed(g) && g["result"]["flat"] == true, w);
    }
    return v;
}

Verdict check_family_scan()
{
    Verdict v;
    auto out = run_scenario("family-scan", {{"family", "x^3 - t*x"}, {"grid", {-1, 0, 1, 2}}});
    v.require(out.exit_code == kPass, "status");
    for (const auto& p : out.report["result"]["points"]) {
        v.require(p["dim_even"].get<int>() + p["dim_odd"].get<int>() == 2, "total at t=" + p["t"].dump());
        v.require(p["stable"] == true, "stability at t=" + p["t"].dump());
    }
    v.require(out.report["result"]["constant"] == true, "verdict");
    v.require(out.csv.rfind("t,dim_even,dim_odd,stable\n", 0) == 0, "csv header");
    return v;
}

Verdict check_tor_and_ss()
{
    Verdict v;
    json r = run("bar-tor", {{"algebra", {{"line", 2}}}, {"bar_window", 5}});
    v.require(passed(r), "Tor status");
    for (const auto& t : r["result"]["tor"])
        if (t["degree"].get<int>() <= 4) {
            v.require(t["certified"] == true, "certification in degree " + t["degree"].dump());
            v.require(t["dim"] == 1, "Tor in degree " + t["degree"].dump());
        }
    json lines = run("bar-tor", {{"algebra", {{"vars", {"x", "y"}}, {"trunc", 4}}},
                                 {"weight_cutoff", 3},
                                 {"right", {{"quotient", {"x"}}}},
                                 {"left", {{"quotient", {"y"}}}},
                                 {"bar_window", 3}});
    v.require(lines["result"]["tor0_matches"] == true, "transversal Tor0");
    int certified_higher = 0;
    for (const auto& t : lines["result"]["tor"])
        if (t["certified"] == true && t["degree"].get<int>() != 0) {
            ++certified_higher;
            v.require(t["dim"] == 0, "transversal Tor in degree " + t["degree"].dump());
        }
    v.require(certified_higher >= 2, "transversal Tor certified only in degree 0");
    json ss = run("ss-demo", json::object());
    v.require(passed(ss) && ss["result"]["converges"] == true, "spectral sequence convergence");
    for (const auto& c : ss["result"]["convergence"])
        v.require(c["e_infinity_total"] == c["cohomology"], "E_infinity total in degree " + c["degree"].dump());
    return v;
}

Verdict check_determinism()
{
    Verdict v;
    std::vector<std::pair<std::string, json>> cases{
        {"ext-basic", json::object()},
        {"twisted-derham", {{"W", "x^3"}}},
        {"family-scan", {{"family", "x^3 - t*x"}}},
        {"hp", {{"potential", "x^2"}, {"m", 4}}},
        {"lemma-ax", {{"instances", 10}}},
        {"bar-tor", {{"bar_window", 4}}},
    };
    for (const auto& [cmd, sc] : cases) {
        auto a = run_scenario(cmd, sc);
        auto b = run_scenario(cmd, sc);
        v.require(canonical_dump(a.report) == canonical_dump(b.report), cmd + " report differs");
        v.require(a.csv == b.csv, cmd + " csv differs");
        v.require(a.report.contains("parameters"), cmd + " lacks parameters");
    }
    return v;
}

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {"ext-basic E2 pattern and Ext dimensions", 30, check_ext_basic},
        {"gradient identity on random cyclic data with negative controls", 60, check_lemma_ax},
        {"plus model matches dCrit(f + g) at D and D+2", 120, check_lemma_fg},
        {"matrix factorization endomorphisms, shift and unit", 30, check_mf_end},
        {"mixed complex identities on three algebras", 120, check_mixed_identities},
        {"HP equals twisted de Rham, HKR compatibility", 180, check_hp_and_hkr},
        {"Gauss-Manin flatness on cubic families", 60, check_gm_flatness},
        {"family scan of x^3 - t*x", 60, check_family_scan},
        {"bar Tor and spectral sequence convergence", 120, check_tor_and_ss},
        {"byte-identical reports", 60, check_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds)
            v.require(false, "time limit exceeded");
        failures += !v.ok;
        std::printf("%s [%zu] %s (%.2fs / %.0fs)%s%s\n", v.ok ? "PASS" : "FAIL", i + 1, c.name.c_str(), secs,
                    c.limit_seconds, v.detail.empty() ? "" : ": ", v.detail.c_str());
    }
    return failures == 0 ? 0 : 1;
}
