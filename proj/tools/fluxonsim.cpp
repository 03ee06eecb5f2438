#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "fluxon/config.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/scenario.hpp"
#include "fluxon/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void print_nested(const std::exception& e, int depth = 0) {
    std::cerr << std::string(2 * static_cast<std::size_t>(depth), ' ') << e.what() << '\n';
    try {
        std::rethrow_if_nested(e);
    } catch (const std::exception& inner) {
        print_nested(inner, depth + 1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fluxon time-delay readout simulator"};
    app.set_version_flag("--version", std::string(fluxon::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    unsigned threads = 1;

    auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    run->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);

    auto* validate = app.add_subcommand("validate", "Check a config file and print it with defaults applied");
    validate->add_option("--config", config_path, "JSON config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const fluxon::ScenarioConfig config = fluxon::load_config(config_path);
        if (validate->parsed()) {
            const nlohmann::json echo = config;
            std::cout << echo.dump(2) << '\n';
            return kExitOk;
        }
        fluxon::RunContext ctx;
        if (out_dir) ctx.output_dir = std::filesystem::path(*out_dir);
        ctx.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
        const auto manifest = fluxon::run_scenario(config, ctx);
        std::cout << "wrote " << manifest.outputs.size() << " data files and manifest.json to "
                  << manifest.output_dir.string() << '\n';
        return kExitOk;
    } catch (const fluxon::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kExitConfig;
    } catch (const fluxon::Error& e) {
        print_nested(e);
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
