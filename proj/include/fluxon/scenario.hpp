#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fluxon/config.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/io.hpp"
#include "fluxon/params.hpp"

namespace fluxon {

/// Thrown (with the original error nested) when a module fails inside a scenario.
class ScenarioError : public Error {
public:
    using Error::Error;
};

struct RunContext {
    std::optional<std::filesystem::path> output_dir;  ///< overrides config.output_dir
    unsigned threads = 1;
};

struct RunManifest {
    nlohmann::json config;
    DerivedParams derived;
    std::string tool_version;
    double wall_clock_seconds = 0.0;
    std::filesystem::path output_dir;
    std::vector<io::WrittenFile> outputs;  ///< data files; excludes manifest.json itself
};

/// Runs the configured scenario, writes its data files and manifest.json into the
/// output directory and returns the manifest. Data files depend only on the config.
RunManifest run_scenario(const ScenarioConfig& config, const RunContext& context = {});

void to_json(nlohmann::json& j, const RunManifest& m);

}  // namespace fluxon
