#include "fluxon/scenario.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numbers>

#include "fluxon/analytics.hpp"
#include "fluxon/kgtl.hpp"
#include "fluxon/kink.hpp"
#include "fluxon/ode.hpp"
#include "fluxon/pde.hpp"
#include "fluxon/version.hpp"

namespace fluxon {

using nlohmann::json;
using io::CsvWriter;
using io::format_double;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPico = 1e12;

/// Runs `f`, nesting any module error inside a ScenarioError carrying `context`.
template <class F>
auto with_context(const std::string& context, F&& f) {
    try {
        return f();
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        std::throw_with_nested(ScenarioError(context + ": " + e.what()));
    }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Outputs {
public:
    explicit Outputs(std::filesystem::path dir) : dir_(std::move(dir)) {}
    void csv(const std::string& name, const CsvWriter& w) { files_.push_back(io::write_file(dir_, name, w.str())); }
    void json_file(const std::string& name, const json& j) {
        files_.push_back(io::write_file(dir_, name, j.dump(2) + "\n"));
    }
    std::vector<io::WrittenFile> take() { return std::move(files_); }

private:
    std::filesystem::path dir_;
    std::vector<io::WrittenFile> files_;
};

void params_dump(const DerivedParams& d, Outputs& out) {
    json regime;
    regime["E_J_over_E_C"] = d.E_J_tr / d.E_C_tr;
    regime["adiabaticity_ratio"] = analytics::adiabaticity_ratio(d);
    regime["pinning_at_eta_c"] = analytics::pinning_report(d.eta_c);
    regime["pinning_at_minus_eta_c"] = analytics::pinning_report(-d.eta_c);
    json levels = json::array();
    for (int n = 0; (n + 2) * d.p < 1.0 && n < 4; ++n) {
        levels.push_back({{"n", n},
                          {"eta_multilevel", eta_multilevel(n, d)},
                          {"sw_validity_ratio", sw_validity_ratio(n, d.p)}});
    }
    regime["levels"] = levels;
    out.json_file("derived.json", {{"circuit", d.circuit}, {"derived", d}, {"regime", regime}});
}

struct Threshold {
    double u0 = kNaN;
    std::string bound;
    double max_deviation_above = 0.0;
};

/// Smallest grid u0 above which every point deviates by at most `limit`.
Threshold find_threshold(const std::vector<double>& u0, const std::vector<double>& deviation, double limit) {
    std::size_t i = u0.size();
    while (i > 0 && deviation[i - 1] <= limit) --i;
    Threshold t;
    if (i == u0.size()) {
        t.bound = "above-grid";
        return t;
    }
    t.u0 = u0[i];
    t.bound = i == 0 ? "below-grid" : "in-grid";
    for (std::size_t k = i; k < u0.size(); ++k) t.max_deviation_above = std::max(t.max_deviation_above, deviation[k]);
    return t;
}

void delay_sweep(const DelaySweepConfig& c, const DerivedParams& d, unsigned threads, Outputs& out) {
    const std::size_t nu = c.u0.size();
    const std::size_t na = c.alpha.size();
    std::vector<ode::DelayMeasurement> results(nu * na);
    const ode::DelayGeometry geometry{c.launch, c.probe};
    io::parallel_for(results.size(), threads, [&](std::size_t k) {
        const double a = c.alpha[k / nu];
        const double u = c.u0[k % nu];
        results[k] = with_context("delay-sweep u0=" + format_double(u) + " alpha=" + format_double(a), [&] {
            return ode::measure_delay(u, {a, 0.0, d.eta_c}, {a, 0.0, -d.eta_c}, c.dtau, geometry);
        });
    });

    CsvWriter sweep({"u0", "alpha", "eta", "tau_delay", "T_delay_ps", "regime_ok"});
    std::vector<std::string> wide_header{"u0", "tau_analytic", "T_analytic_ps"};
    for (double a : c.alpha) wide_header.push_back("T_delay_ps_alpha_" + format_double(a));
    CsvWriter wide(wide_header);
    CsvWriter analytic({"u0", "tau_analytic", "T_analytic_ps", "exceeds_detector"});

    std::vector<double> tau_an(nu);
    for (std::size_t i = 0; i < nu; ++i) {
        const auto r = analytics::time_delay_qubit(c.u0[i], d);
        tau_an[i] = r.tau_d;
        analytic.row({c.u0[i], r.tau_d, r.T_d * kPico, r.exceeds_detector});
    }
    for (std::size_t ia = 0; ia < na; ++ia) {
        for (std::size_t i = 0; i < nu; ++i) {
            const auto& m = results[ia * nu + i];
            sweep.row({c.u0[i], c.alpha[ia], d.eta_c, m.tau_d, m.tau_d / d.omega_p.rad_per_s * kPico, m.regime_ok});
        }
    }
    for (std::size_t i = 0; i < nu; ++i) {
        std::vector<CsvWriter::Cell> row{c.u0[i], tau_an[i], tau_an[i] / d.omega_p.rad_per_s * kPico};
        for (std::size_t ia = 0; ia < na; ++ia) row.emplace_back(results[ia * nu + i].tau_d / d.omega_p.rad_per_s * kPico);
        wide.row(std::move(row));
    }

    json thresholds = json::array();
    for (std::size_t ia = 0; ia < na; ++ia) {
        std::vector<double> dev(nu);
        for (std::size_t i = 0; i < nu; ++i) {
            const double t = results[ia * nu + i].tau_d;
            dev[i] = std::isfinite(t) ? std::abs(t - tau_an[i]) / tau_an[i] : std::numeric_limits<double>::infinity();
        }
        const Threshold th = find_threshold(c.u0, dev, c.deviation_limit);
        json devs = json::array();
        for (double v : dev) devs.push_back(number_or_null(v));
        thresholds.push_back({{"alpha", c.alpha[ia]},
                              {"threshold_u0", number_or_null(th.u0)},
                              {"bound", th.bound},
                              {"max_deviation_above_threshold", th.max_deviation_above},
                              {"relative_deviation", devs}});
    }

    out.csv("delay_sweep.csv", sweep);
    out.csv("delay_sweep_wide.csv", wide);
    out.csv("delay_analytic.csv", analytic);
    out.json_file("delay_thresholds.json",
                  {{"deviation_limit", c.deviation_limit}, {"u0", c.u0}, {"thresholds", thresholds}});
}

double max_abs_step(const pde::PiecewiseConstant& g) {
    double best = g.base;
    for (const auto& s : g.steps) {
        if (std::abs(s.value) > std::abs(best)) best = s.value;
    }
    return best;
}

void separation(const SeparationConfig& c, const DerivedParams& d, unsigned threads, Outputs& out) {
    pde::Grid grid = pde::Grid::span(c.xi_min, c.xi_max, c.dxi, c.boundary);
    const pde::BiasProfile bias{c.gamma, pde::PiecewiseConstant::constant(c.alpha)};
    pde::RunOptions opt;
    opt.dtau = c.dtau;
    opt.tau_end = c.tau_end;
    opt.snapshot_times = c.snapshot_times;
    opt.record_every = c.record_every;

    std::vector<pde::Trajectory> runs(c.xi0.size());
    io::parallel_for(runs.size(), threads, [&](std::size_t i) {
        runs[i] = with_context("separation xi0=" + format_double(c.xi0[i]), [&] {
            const auto initial = pde::init_kink(grid, KinkSpec{c.u0, c.xi0[i], +1});
            return pde::run(initial, grid, bias, std::nullopt, opt);
        });
    });

    bool winding_conserved = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& t = runs[i];
        CsvWriter snaps({"tau", "xi", "voltage_dimensionless"});
        for (const auto& s : t.snapshots) {
            for (std::size_t n = 0; n < s.voltage.size(); ++n) snaps.row({s.tau, grid.xi(n), s.voltage[n]});
            winding_conserved = winding_conserved && s.winding == 1;
        }
        for (int w : t.record_winding) winding_conserved = winding_conserved && w == 1;

        json series = json::array();
        for (std::size_t k = 0; k < t.record_tau.size(); ++k) {
            series.push_back({t.record_tau[k], number_or_null(t.record_centroid[k]), t.record_winding[k]});
        }
        json arrivals = json::array();
        for (double x : c.arrival_probes) {
            double ta = kNaN;
            try {
                ta = pde::arrival_time(t, x);
            } catch (const NoCrossingError&) {
            }
            arrivals.push_back({{"xi", x}, {"tau", number_or_null(ta)}});
        }
        const std::string tag = "xi0_" + std::to_string(i);
        out.csv("snapshots_" + tag + ".csv", snaps);
        out.json_file("trajectory_" + tag + ".json",
                      {{"parameters",
                        {{"u0", c.u0}, {"xi0", c.xi0[i]}, {"alpha", c.alpha}, {"dxi", grid.dxi}, {"dtau", c.dtau}}},
                       {"centroid_series_columns", {"tau", "centroid", "winding"}},
                       {"centroid_series", series},
                       {"arrival_times", arrivals}});
    }

    json snapshots = json::array();
    if (!runs.empty()) {
        for (std::size_t k = 0; k < runs[0].snapshots.size(); ++k) {
            json centroids = json::array();
            json widths = json::array();
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            double width = 0.0;
            bool located = true;
            for (const auto& t : runs) {
                const auto& s = t.snapshots[k];
                centroids.push_back(s.centroid ? json(*s.centroid) : json(nullptr));
                widths.push_back(s.width);
                width = std::max(width, s.width);
                if (!s.centroid) {
                    located = false;
                    continue;
                }
                lo = std::min(lo, *s.centroid);
                hi = std::max(hi, *s.centroid);
            }
            json entry{{"tau", runs[0].snapshots[k].tau}, {"centroids", centroids}, {"widths", widths}};
            if (located) {
                entry["spread"] = hi - lo;
                entry["overlap"] = hi - lo < width;
                entry["separated"] = hi - lo > width;
            } else {
                entry["spread"] = nullptr;
                entry["overlap"] = nullptr;
                entry["separated"] = nullptr;
            }
            snapshots.push_back(std::move(entry));
        }
    }
    const double gamma = max_abs_step(c.gamma);
    json condition = nullptr;
    if (c.u0 > 0.0) condition = analytics::separation_condition(gamma, c.alpha, c.u0, d.eta_c);
    out.json_file("separation.json", {{"gamma", gamma},
                                      {"eta", d.eta_c},
                                      {"separation_condition", condition},
                                      {"winding_conserved", winding_conserved},
                                      {"snapshots", snapshots}});
}

void pde_vs_ode(const PdeVsOdeConfig& c, const DerivedParams& d, unsigned threads, Outputs& out) {
    struct Point {
        double u0, alpha;
    };
    std::vector<Point> points;
    for (double a : c.alpha) {
        for (double u : c.u0) points.push_back({u, a});
    }
    std::vector<double> arrival(2 * points.size());
    io::parallel_for(arrival.size(), threads, [&](std::size_t k) {
        const Point& p = points[k / 2];
        const double eta = k % 2 == 0 ? d.eta_c : -d.eta_c;
        pde::DelaySetup setup{p.u0, p.alpha, c.half_width, c.dxi, c.dtau, c.launch, c.probe};
        arrival[k] = with_context("pde-vs-ode u0=" + format_double(p.u0) + " eta=" + format_double(eta),
                                  [&] { return pde::coupled_arrival_time(setup, eta); });
    });
    CsvWriter w({"u0", "alpha", "eta", "tau_pde", "tau_ode", "tau_analytic", "rel_diff_pde_ode"});
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& p = points[i];
        const auto m = with_context("pde-vs-ode ode u0=" + format_double(p.u0), [&] {
            return ode::measure_delay(p.u0, {p.alpha, 0.0, d.eta_c}, {p.alpha, 0.0, -d.eta_c}, c.ode_dtau,
                                      {c.launch, c.probe});
        });
        const double tau_pde = arrival[2 * i + 1] - arrival[2 * i];
        const double tau_an = analytics::time_delay_qubit(p.u0, d).tau_d;
        w.row({p.u0, p.alpha, d.eta_c, tau_pde, m.tau_d, tau_an, (tau_pde - m.tau_d) / m.tau_d});
    }
    out.csv("pde_vs_ode.csv", w);
}

void decay_curve(const DecayCurveConfig& c, const DerivedParams& d, Outputs& out) {
    kgtl::DecaySpec spec = kgtl::DecaySpec::from(d);
    spec.alpha = c.alpha.value_or(d.circuit.alpha);
    kgtl::DecaySpec lossless = spec;
    lossless.alpha = 0.0;
    CsvWriter w({"omega_over_2pi_Hz", "rate_exact_Hz", "rate_underdamped_Hz", "rate_dissipationless_Hz"});
    for (double f : c.frequency_hz) {
        const auto omega = AngularFrequency::from_hz(f);
        auto guarded = [&](auto&& fn) {
            try {
                return fn();
            } catch (const RegimeError&) {
                return kNaN;
            } catch (const DomainError&) {
                return kNaN;
            }
        };
        const auto ctx = "decay-curve f=" + format_double(f);
        const double exact = with_context(ctx, [&] { return kgtl::decay_rate(omega, spec); });
        const double under = with_context(ctx, [&] {
            return guarded([&] { return kgtl::decay_rate_underdamped_approx(omega, spec); });
        });
        const double free = with_context(ctx, [&] {
            return guarded([&] { return kgtl::decay_rate_dissipationless_approx(omega, lossless); });
        });
        w.row({f, exact, under, free});
    }
    out.csv("decay_curve.csv", w);
}

void transitions(const TransitionsConfig& c, const DerivedParams& d, Outputs& out) {
    CsvWriter qubit({"u0", "probability", "weak_coupling_ok"});
    CsvWriter multi({"u0", "n_i", "direction", "omega_over_2pi_Hz", "probability"});
    for (double u : c.u0) {
        const auto ctx = "transitions u0=" + format_double(u);
        qubit.row({u, with_context(ctx, [&] { return analytics::transition_probability_qubit(u, d); }),
                   analytics::weak_coupling_ok(u, d)});
        for (int n = 0; n <= c.max_level; ++n) {
            for (auto dir : {analytics::Direction::Up, analytics::Direction::Down}) {
                if (dir == analytics::Direction::Down && n == 0) continue;
                const int level = dir == analytics::Direction::Up ? n + 1 : n;
                const double p = with_context(ctx + " n_i=" + std::to_string(n), [&] {
                    return analytics::transition_probability_multilevel(n, dir, u, d);
                });
                multi.row({u, static_cast<long long>(n), std::string(dir == analytics::Direction::Up ? "up" : "down"),
                           transition_frequency(level, d).hz(), p});
            }
        }
    }
    out.csv("transitions_qubit.csv", qubit);
    out.csv("transitions.csv", multi);
}

void ensure_writable(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError({"output_dir: cannot create " + dir.string() + " (" + ec.message() + ")"});
    const auto probe = dir / ".write_test";
    {
        std::ofstream f(probe);
        if (!f) throw ConfigError({"output_dir: " + dir.string() + " is not writable"});
    }
    std::filesystem::remove(probe, ec);
}

}  // namespace

RunManifest run_scenario(const ScenarioConfig& config, const RunContext& context) {
    const auto start = std::chrono::steady_clock::now();
    RunManifest m;
    m.output_dir = context.output_dir.value_or(config.output_dir);
    m.tool_version = std::string(kVersion);
    m.config = config;
    ensure_writable(m.output_dir);
    const unsigned threads = std::max(1u, context.threads);

    m.derived = with_context(std::string(to_string(config.scenario)), [&] { return derive(config.circuit); });
    Outputs out(m.output_dir);
    switch (config.scenario) {
        case ScenarioKind::ParamsDump: params_dump(m.derived, out); break;
        case ScenarioKind::DelaySweep: delay_sweep(config.delay_sweep, m.derived, threads, out); break;
        case ScenarioKind::Separation: separation(config.separation, m.derived, threads, out); break;
        case ScenarioKind::PdeVsOde: pde_vs_ode(config.pde_vs_ode, m.derived, threads, out); break;
        case ScenarioKind::DecayCurve: decay_curve(config.decay_curve, m.derived, out); break;
        case ScenarioKind::Transitions: transitions(config.transitions, m.derived, out); break;
    }
    m.outputs = out.take();
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j = m;
    io::write_file(m.output_dir, "manifest.json", j.dump(2) + "\n");
    return m;
}

void to_json(json& j, const RunManifest& m) {
    json files = json::array();
    for (const auto& f : m.outputs) files.push_back({{"file", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    j = json{{"tool", std::string(kToolName)},
             {"version", m.tool_version},
             {"config", m.config},
             {"derived", m.derived},
             {"wall_clock_seconds", m.wall_clock_seconds},
             {"outputs", files}};
}

}  // namespace fluxon
