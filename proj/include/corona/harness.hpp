#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "corona/scenario.hpp"

namespace corona {

enum class Command { validate, identities, carleson, functional, solve, leech, all };

std::optional<Command> command_from_string(const std::string& name);
const char* command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailure = 2;
inline constexpr int kExitValidationFailure = 3;
inline constexpr int kExitConfigError = 4;

struct RunOutcome {
    int exit_code = kExitOk;
    nlohmann::json report;
    std::string summary;  // human-readable, one line per check
};

/// Execute the named suite(s) on one scenario. The hypothesis check always
/// runs first; scenarios marked expect_fail pass exactly when validation
/// fails, and their remaining suites are skipped.
RunOutcome run_scenario(const Scenario& scenario, Command command);

/// Entry point used by the CLI: accepts either a single scenario object or
/// {"scenarios": [...]}, applies the optional slack override, and runs
/// scenarios (in parallel when jobs > 1; reports are assembled in input
/// order). The combined exit code is the maximum of the per-scenario codes.
RunOutcome run_config(const nlohmann::json& config, Command command,
                      std::optional<double> slack_override = std::nullopt,
                      std::optional<std::uint64_t> seed_override = std::nullopt, int jobs = 1);

/// Mirror the numeric tables of a report into CSV files under dir.
void export_csv(const nlohmann::json& report, const std::string& dir);

const char* version_string();

}  // namespace corona
