#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwyw/experiments.hpp"
#include "pwyw/game.hpp"
#include "pwyw/population.hpp"

namespace pwyw {

// JSON run configuration for the CLI. Every field has a documented
// default except population.seed, which is required so runs are
// reproducible by construction.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), json_path(path) {}
    std::string json_path;
};

enum class OutputFormat { Csv, Json };

struct OutputConfig {
    std::string path;  // defaults to pwyw_results.csv / pwyw_results.json
    OutputFormat format = OutputFormat::Csv;
    int precision = 9;  // significant decimal digits, in [1, 17]
};

struct SweepSection {
    SweepParameter parameter = SweepParameter::Lambda;
    std::vector<double> grid;
};

struct RunConfig {
    PopulationSpec population;
    std::vector<StrategyCell> strategies;      // at least one
    std::vector<std::string> strategy_labels;  // parallel to strategies
    BehaviorMode mode;
    std::optional<SweepSection> sweep;
    OutputConfig output;
};

// Parses and validates a configuration document. Throws ConfigError whose
// message starts with the JSON path of the offending field.
RunConfig parse_run_config(const std::string& json_text);

// Reads the file and parses it. Unreadable file -> IoError; invalid
// content -> ConfigError.
RunConfig load_run_config(const std::string& path);

}  // namespace pwyw
