#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fluxon/params.hpp"
#include "fluxon/pde.hpp"

namespace fluxon {

enum class ScenarioKind { ParamsDump, DelaySweep, Separation, PdeVsOde, DecayCurve, Transitions };

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);

/// ODE delay sweep over u0 x alpha, with eta = +-eta_c.
struct DelaySweepConfig {
    std::vector<double> u0;     ///< default logspace(0.002, 0.1, 20)
    std::vector<double> alpha;  ///< default {1e-6, 1e-5, 1e-4, 1e-3}
    double dtau = 0.01;
    double launch = -10.0;
    double probe = 10.0;
    double deviation_limit = 0.1;  ///< relative deviation defining the threshold velocity
};

/// Two PDE runs that differ only in the launch position, under a stepped bias.
struct SeparationConfig {
    double xi_min = 0.0;
    double xi_max = 100.0;
    double dxi = 0.025;
    double dtau = 0.01;
    double u0 = 0.01;
    double alpha = 1.0e-6;
    std::vector<double> xi0{5.75, 5.85};
    pde::PiecewiseConstant gamma{0.0, {{15.0, -0.1}}};
    pde::Boundary boundary = pde::Boundary::fixed(0.0, 2.0 * 3.141592653589793);
    std::vector<double> snapshot_times{0.0, 100.0, 200.0, 300.0, 350.0, 380.0, 400.0, 420.0};
    double tau_end = 420.0;
    int record_every = 10;
    std::vector<double> arrival_probes{20.0, 40.0, 60.0, 80.0};
};

/// PDE arrival-time delay against the ODE and the closed form.
struct PdeVsOdeConfig {
    std::vector<double> u0{0.01, 0.02, 0.05};
    std::vector<double> alpha{1.0e-6};
    double half_width = 20.0;
    double dxi = 0.025;
    double dtau = 0.01;
    double ode_dtau = 0.01;
    double launch = -10.0;
    double probe = 10.0;
};

struct DecayCurveConfig {
    std::vector<double> frequency_hz;  ///< default 0.5 GHz to 50 GHz in 0.1 GHz steps
    std::optional<double> alpha;       ///< defaults to circuit.alpha
};

struct TransitionsConfig {
    std::vector<double> u0;  ///< default logspace(0.002, 0.1, 20)
    int max_level = 3;
};

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::ParamsDump;
    CircuitParams circuit;
    std::filesystem::path output_dir = "out";
    DelaySweepConfig delay_sweep;
    SeparationConfig separation;
    PdeVsOdeConfig pde_vs_ode;
    DecayCurveConfig decay_curve;
    TransitionsConfig transitions;
};

/// Geometric grid of n points from a to b inclusive (a, b > 0).
std::vector<double> logspace(double a, double b, int n);
std::vector<double> linspace(double a, double b, int n);

/// Applies defaults and checks every field; collects all violations before throwing ConfigError.
ScenarioConfig validate_config(const nlohmann::json& document);

/// Reads and validates a JSON file. Unreadable or malformed files raise ConfigError.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Fully defaulted echo of the configuration.
void to_json(nlohmann::json& j, const ScenarioConfig& c);

}  // namespace fluxon
