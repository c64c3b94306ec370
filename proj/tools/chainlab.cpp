#include "chainlab/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

int main(int argc, char** argv)
{
    using namespace chainlab;
    CLI::App app{"chainlab: exact chain-level computations with stabilization checks"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    std::optional<int> trunc, bar_window;
    std::optional<std::uint64_t> seed;
    for (const auto& name : subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--scenario", scenario_path, "scenario JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "write the report here (a .csv path writes the table form)");
        sub->add_option("--trunc", trunc, "truncation degree D");
        sub->add_option("--bar-window", bar_window, "bar or Hochschild window N");
        sub->add_option("--seed", seed, "random seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    Overrides ov;
    ov.trunc = trunc;
    ov.bar_window = bar_window;
    ov.seed = seed;
    if (const char* env = std::getenv("CHAINLAB_TRUNC")) {
        try {
            ov.default_trunc = std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "error: CHAINLAB_TRUNC must be an integer\n";
            return kUsage;
        }
    }

    nlohmann::json scenario;
    try {
        std::ifstream in(scenario_path);
        scenario = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: cannot read scenario: " << e.what() << "\n";
        return kUsage;
    }

    RunOutcome out;
    try {
        out = run_scenario(command, scenario, ov);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    std::string text = canonical_dump(out.report);
    if (out_path.empty()) {
        std::cout << text;
        if (command == "ext-basic" && out.report["result"].contains("grid"))
            std::cerr << out.report["result"]["grid"].get<std::string>();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return kUsage;
        }
        f << (ends_with(out_path, ".csv") && !out.csv.empty() ? out.csv : text);
    }
    return out.exit_code;
}
