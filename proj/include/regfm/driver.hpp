#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace regfm {

inline constexpr const char* kToolName = "regfm";
inline constexpr const char* kToolVersion = "0.1.0";

struct CheckResult {
    std::string name;
    bool pass = false;
    std::optional<bool> exact_zero;
    std::optional<double> norm;
    std::string detail;
};

// Runs one job described by a JSON config; module errors become failed
// checks, configuration problems throw ConfigError.
nlohmann::json run(const nlohmann::json& config);

// Writes the golden V formulas, canonical multiplication matrices and
// reference chain files under dir.
void emit_fixtures(const std::string& dir);

// Full command-line entry: parses flags, merges the config file, dispatches,
// writes the report. Returns the process exit code (0 pass, 1 check failure,
// 2 config error).
int cli_main(int argc, char** argv);

}  // namespace regfm
