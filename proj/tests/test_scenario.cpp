#include "catch_amalgamated.hpp"

#include "fluxon/config.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/io.hpp"
#include "fluxon/scenario.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace fluxon;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "fluxon_test_scenario" / name;
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

RunManifest run(const json& doc, const fs::path& dir, unsigned threads = 1) {
    return run_scenario(validate_config(doc), RunContext{dir, threads});
}

void check_manifest(const RunManifest& m) {
    const json j = json::parse(slurp(m.output_dir / "manifest.json"));
    CHECK(j["tool"] == "fluxonsim");
    CHECK(j["outputs"].size() == m.outputs.size());
    for (const auto& f : j["outputs"]) {
        const std::string body = slurp(m.output_dir / f["file"].get<std::string>());
        CHECK(f["sha256"] == io::sha256_hex(body));
        CHECK(f["bytes"] == body.size());
    }
    CHECK(j["config"].contains("circuit"));
    CHECK(j["derived"].contains("eta_c"));
}

}  // namespace

TEST_CASE("params-dump writes derived quantities", "[scenario]") {
    const auto dir = fresh_dir("params");
    const auto m = run({{"scenario", "params-dump"}}, dir);
    REQUIRE(m.outputs.size() == 1);
    check_manifest(m);
    const json d = json::parse(slurp(dir / "derived.json"));
    CHECK_THAT(d["derived"]["p"].get<double>(), Catch::Matchers::WithinRel(0.049370499224230417, 1e-12));
    CHECK(d["regime"]["pinning_at_eta_c"]["pinned"] == false);
    CHECK(d["regime"]["levels"].size() >= 2);
}

TEST_CASE("decay-curve is reproducible byte for byte", "[scenario]") {
    const json doc = {{"scenario", "decay-curve"}, {"decay_curve", {{"frequency_hz", {1e9, 3.7e9, 2e10}}, {"alpha", 1e-5}}}};
    const auto a = run(doc, fresh_dir("decay_a"));
    const auto b = run(doc, fresh_dir("decay_b"));
    check_manifest(a);
    REQUIRE(a.outputs.size() == b.outputs.size());
    for (std::size_t i = 0; i < a.outputs.size(); ++i) CHECK(a.outputs[i].sha256 == b.outputs[i].sha256);

    const std::string csv = slurp(a.output_dir / "decay_curve.csv");
    CHECK(first_line(csv) == "omega_over_2pi_Hz,rate_exact_Hz,rate_underdamped_Hz,rate_dissipationless_Hz");
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    bool found = false;
    while (std::getline(lines, line)) {
        if (std::stod(line.substr(0, line.find(','))) != 3.7e9) continue;
        found = true;
        const double rate = std::stod(line.substr(line.find(',') + 1));
        CHECK_THAT(rate, Catch::Matchers::WithinRel(0.087, 0.05));
    }
    CHECK(found);
}

TEST_CASE("transitions scenario", "[scenario]") {
    const auto dir = fresh_dir("transitions");
    const auto m = run({{"scenario", "transitions"}, {"transitions", {{"u0", {0.01, 0.05}}, {"max_level", 2}}}}, dir);
    check_manifest(m);
    const std::string q = slurp(dir / "transitions_qubit.csv");
    CHECK(first_line(q) == "u0,probability,weak_coupling_ok");
    const std::string t = slurp(dir / "transitions.csv");
    CHECK(first_line(t) == "u0,n_i,direction,omega_over_2pi_Hz,probability");
    // Per velocity: up from 0, 1, 2 and down from 1, 2.
    CHECK(std::count(t.begin(), t.end(), '\n') == 1 + 2 * 5);
}

TEST_CASE("delay-sweep does not depend on the thread count", "[scenario]") {
    const json doc = {{"scenario", "delay-sweep"},
                      {"delay_sweep", {{"u0", {0.05, 0.1}}, {"alpha", {1e-6, 1e-3}}}}};
    const auto a = run(doc, fresh_dir("sweep_1"), 1);
    const auto b = run(doc, fresh_dir("sweep_2"), 2);
    check_manifest(b);
    REQUIRE(a.outputs.size() == 4);
    for (std::size_t i = 0; i < a.outputs.size(); ++i) {
        CHECK(a.outputs[i].name == b.outputs[i].name);
        CHECK(a.outputs[i].sha256 == b.outputs[i].sha256);
    }
    const json th = json::parse(slurp(a.output_dir / "delay_thresholds.json"));
    CHECK(th["thresholds"][0]["bound"] == "below-grid");
    CHECK(first_line(slurp(a.output_dir / "delay_sweep.csv")) == "u0,alpha,eta,tau_delay,T_delay_ps,regime_ok");
}

TEST_CASE("module failures are wrapped with context", "[scenario]") {
    const json doc = {{"scenario", "decay-curve"}, {"decay_curve", {{"frequency_hz", {1e9, 6e10}}}}};
    try {
        (void)run(doc, fresh_dir("decay_fail"));
        FAIL("expected a ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(std::string(e.what()).find("decay-curve f=6e+10") != std::string::npos);
        try {
            std::rethrow_if_nested(e);
            FAIL("expected a nested error");
        } catch (const DomainError&) {
        }
    }
}

TEST_CASE("unwritable output directory is a configuration error", "[scenario]") {
    const auto dir = fresh_dir("blocker");
    fs::create_directories(dir.parent_path());
    std::ofstream(dir) << "file in the way";
    CHECK_THROWS_AS(run({{"scenario", "params-dump"}}, dir / "sub"), ConfigError);
    fs::remove(dir);
}
