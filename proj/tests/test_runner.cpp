#include "chainlab/dcrit.hpp"
#include "chainlab/runner.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace chainlab;
using nlohmann::json;

namespace {

json load(const std::string& name)
{
    std::ifstream in(std::string(CHAINLAB_SCENARIO_DIR) + "/" + name);
    return json::parse(in);
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args)
{
    std::string cmd = std::string(CHAINLAB_CLI) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::filesystem::path scratch()
{
    auto dir = std::filesystem::temp_directory_path() / "chainlab_runner_test";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("every bundled scenario passes")
{
    for (const auto& entry : std::filesystem::directory_iterator(CHAINLAB_SCENARIO_DIR)) {
        if (entry.path().extension() != ".json")
            continue;
        std::string name = entry.path().filename().string();
        if (name == "lemma_fg.json" || name == "lemma_ax.json")
            continue;
        json sc = load(name);
        CAPTURE(name);
        RunOutcome out = run_scenario(sc.at("command").get<std::string>(), sc);
        CHECK(out.exit_code == kPass);
        CHECK(out.report.at("status") == "pass");
        CHECK(out.report.at("parameters").is_object());
    }
}

TEST_CASE("unknown fields and mismatched commands are usage errors")
{
    CHECK_THROWS_AS(run_scenario("dcrit", json{{"f", "x^3"}, {"bogus", 1}}), UsageError);
    CHECK_THROWS_AS(run_scenario("dcrit", json{{"command", "hp"}, {"f", "x^3"}}), UsageError);
    CHECK_THROWS_AS(run_scenario("dcrit", json::array()), UsageError);
    CHECK_THROWS_AS(run_scenario("dcrit", json::object()), UsageError);
    CHECK_THROWS_AS(run_scenario("dcrit", json{{"f", "x^^3"}}), UsageError);
    CHECK_THROWS_AS(run_scenario("dcrit", json{{"f", "x^3"}, {"trunc", "six"}}), UsageError);
    CHECK_THROWS_AS(run_scenario("no-such-command", json::object()), UsageError);
}

TEST_CASE("effective parameters are embedded and overrides take precedence")
{
    json sc{{"f", "x^3/3"}, {"trunc", 5}};
    auto plain = run_scenario("dcrit", sc);
    CHECK(plain.report["parameters"]["trunc"] == 5);
    Overrides ov;
    ov.trunc = 7;
    CHECK(run_scenario("dcrit", sc, ov).report["parameters"]["trunc"] == 7);
    Overrides env;
    env.default_trunc = 4;
    CHECK(run_scenario("dcrit", json{{"f", "x^3/3"}}, env).report["parameters"]["trunc"] == 4);
    CHECK(run_scenario("dcrit", sc, env).report["parameters"]["trunc"] == 5);
    CHECK(run_scenario("dcrit", json{{"f", "x^3/3"}}).report["parameters"]["trunc"] == 6);
}

TEST_CASE("exit codes follow the status")
{
    CHECK(run_scenario("dcrit", json{{"f", "x^2*y"}}).exit_code == kUnstable);
    auto data = random_cyclic(2, 3, 42);
    auto& entry = data.products[2].begin()->second;
    entry[0] = entry[0] + Rational(1);
    auto broken = run_scenario("lemma-ax", json{{"data", data.to_json()}});
    CHECK(broken.exit_code == kViolation);
    CHECK(broken.report["result"]["reports"][0].contains("witness"));
    json mf = load("mf_end_x2.json");
    mf["mf"]["d1"] = {{"x^2"}};
    CHECK(run_scenario("mf-end", mf).exit_code == kViolation);
}

TEST_CASE("reports are byte-identical across runs")
{
    for (const char* name : {"ext_basic.json", "twisted_x3.json", "family_scan_cubic.json", "bar_tor_dual.json"}) {
        json sc = load(name);
        std::string cmd = sc["command"];
        CHECK(canonical_dump(run_scenario(cmd, sc).report) == canonical_dump(run_scenario(cmd, sc).report));
    }
    std::string text = canonical_dump(run_scenario("ext-basic", load("ext_basic.json")).report);
    CHECK(text.find("time") == std::string::npos);
    CHECK(text.back() == '\n');
}

TEST_CASE("family scan produces the csv table")
{
    auto out = run_scenario("family-scan", load("family_scan_cubic.json"));
    CHECK(out.csv == "t,dim_even,dim_odd,stable\n-1,0,2,true\n0,0,2,true\n1,0,2,true\n2,0,2,true\n");
}

TEST_CASE("command line tool")
{
    const std::string dir = CHAINLAB_SCENARIO_DIR;
    auto tmp = scratch();
    CHECK(cli("dcrit --scenario " + dir + "/dcrit_cubic.json") == kPass);
    CHECK(cli("dcrit") == kUsage);
    CHECK(cli("dcrit --scenario /nonexistent.json") == kUsage);
    CHECK(cli("no-such --scenario " + dir + "/dcrit_cubic.json") == kUsage);
    CHECK(cli("hp --scenario " + dir + "/dcrit_cubic.json") == kUsage);

    auto a = tmp / "a.json", b = tmp / "b.json", c = tmp / "scan.csv";
    CHECK(cli("twisted-derham --scenario " + dir + "/twisted_x3.json --out " + a.string()) == kPass);
    CHECK(cli("twisted-derham --scenario " + dir + "/twisted_x3.json --out " + b.string()) == kPass);
    CHECK(slurp(a) == slurp(b));
    CHECK(json::parse(slurp(a))["result"]["parity"]["odd"] == 2);

    CHECK(cli("twisted-derham --scenario " + dir + "/twisted_x3.json --trunc 4 --out " + a.string()) == kPass);
    CHECK(json::parse(slurp(a))["parameters"]["trunc"] == 4);

    CHECK(cli("family-scan --scenario " + dir + "/family_scan_cubic.json --out " + c.string()) == kPass);
    CHECK(slurp(c).rfind("t,dim_even,dim_odd,stable\n", 0) == 0);

    auto unstable = tmp / "unstable.json";
    std::ofstream(unstable) << R"({"command":"dcrit","f":"x^2*y"})";
    CHECK(cli("dcrit --scenario " + unstable.string()) == kUnstable);
    auto unknown = tmp / "unknown.json";
    std::ofstream(unknown) << R"({"f":"x^3","extra":true})";
    CHECK(cli("dcrit --scenario " + unknown.string()) == kUsage);
    std::filesystem::remove_all(tmp);
}
