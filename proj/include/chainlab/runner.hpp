#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace chainlab {

enum ExitCode : int { kPass = 0, kUsage = 2, kUnstable = 3, kViolation = 4 };

/// Bad scenario or arguments; maps to exit code 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Command-line values that take precedence over the scenario file.
struct Overrides {
    std::optional<int> trunc;
    std::optional<int> bar_window;
    std::optional<std::uint64_t> seed;
    /// Default truncation used when neither the command line nor the scenario sets one.
    std::optional<int> default_trunc;
};

struct RunOutcome {
    nlohmann::json report;
    int exit_code = kPass;
    /// Tabular form of the result, when the command has one.
    std::string csv;
};

const std::vector<std::string>& subcommands();

/// Runs one scenario; throws UsageError on malformed input.
RunOutcome run_scenario(const std::string& command, const nlohmann::json& scenario, const Overrides& ov = {});

/// Report text as written to disk: two-space indented JSON with sorted keys and a trailing newline.
std::string canonical_dump(const nlohmann::json& j);

} // namespace chainlab
