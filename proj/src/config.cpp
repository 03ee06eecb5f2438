#include "fluxon/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fluxon/errors.hpp"
#include "fluxon/io.hpp"

namespace fluxon {

using nlohmann::json;

namespace {

constexpr std::pair<ScenarioKind, std::string_view> kScenarioNames[] = {
    {ScenarioKind::ParamsDump, "params-dump"}, {ScenarioKind::DelaySweep, "delay-sweep"},
    {ScenarioKind::Separation, "separation"},  {ScenarioKind::PdeVsOde, "pde-vs-ode"},
    {ScenarioKind::DecayCurve, "decay-curve"}, {ScenarioKind::Transitions, "transitions"},
};

using Rule = std::pair<std::function<bool(double)>, std::string>;

Rule positive() { return {[](double v) { return v > 0.0; }, "must be > 0"}; }
Rule non_negative() { return {[](double v) { return v >= 0.0; }, "must be >= 0"}; }
Rule any_finite() { return {[](double) { return true; }, ""}; }
Rule velocity() { return {[](double v) { return v > -1.0 && v < 1.0; }, "violates -1 < u0 < 1"}; }
Rule bias() { return {[](double v) { return std::abs(v) < 1.0; }, "violates |gamma| < 1"}; }

std::string fmt(double v) { return io::format_double(v); }

/// One JSON object being read against a schema; records violations and unknown keys.
class Block {
public:
    Block(const json& doc, std::string path, std::vector<std::string>& out) : path_(std::move(path)), out_(out) {
        if (doc.is_null()) return;
        if (!doc.is_object()) {
            fail(path_, "must be an object");
            return;
        }
        j_ = &doc;
    }

    void fail(const std::string& where, const std::string& what) { out_.push_back(where + ": " + what); }
    std::string at(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

    const json* get(std::string_view key) {
        seen_.insert(std::string(key));
        if (!j_) return nullptr;
        auto it = j_->find(std::string(key));
        return it == j_->end() ? nullptr : &*it;
    }

    bool read_number(const json& v, const std::string& where, double& out) {
        if (!v.is_number()) {
            fail(where, "must be a number");
            return false;
        }
        out = v.get<double>();
        if (!std::isfinite(out)) {
            fail(where, "must be finite");
            return false;
        }
        return true;
    }

    void number(std::string_view key, double& dst, const Rule& rule) {
        const json* v = get(key);
        if (!v) return;
        double x = 0.0;
        if (!read_number(*v, at(key), x)) return;
        if (!rule.first(x)) {
            fail(at(key), rule.second + " (got " + fmt(x) + ")");
            return;
        }
        dst = x;
    }

    void integer(std::string_view key, int& dst, int lo, int hi) {
        const json* v = get(key);
        if (!v) return;
        if (!v->is_number_integer()) {
            fail(at(key), "must be an integer");
            return;
        }
        const auto x = v->get<long long>();
        if (x < lo || x > hi) {
            fail(at(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] (got " +
                              std::to_string(x) + ")");
            return;
        }
        dst = static_cast<int>(x);
    }

    /// A list of numbers, or {"logspace": [a, b, n]} / {"linspace": [a, b, n]}.
    /// Must be non-empty and strictly ascending; every element must satisfy `rule`.
    void grid(std::string_view key, std::vector<double>& dst, const Rule& rule) {
        const json* v = get(key);
        if (!v) return;
        const std::string where = at(key);
        std::vector<double> values;
        if (v->is_array()) {
            bool ok = true;
            for (std::size_t i = 0; i < v->size(); ++i) {
                double x = 0.0;
                if (!read_number((*v)[i], where + "[" + std::to_string(i) + "]", x)) ok = false;
                values.push_back(x);
            }
            if (!ok) return;
        } else if (v->is_object() && v->size() == 1 && (v->contains("logspace") || v->contains("linspace"))) {
            const bool log = v->contains("logspace");
            const json& spec = log ? v->at("logspace") : v->at("linspace");
            const std::string sub = where + (log ? ".logspace" : ".linspace");
            if (!spec.is_array() || spec.size() != 3 || !spec[0].is_number() || !spec[1].is_number() ||
                !spec[2].is_number_integer()) {
                fail(sub, "must be [start, stop, count] with an integer count");
                return;
            }
            const double a = spec[0].get<double>();
            const double b = spec[1].get<double>();
            const auto n = spec[2].get<long long>();
            if (n < 1 || n > 1'000'000) {
                fail(sub, "count must lie in [1, 1000000]");
                return;
            }
            if (log && !(a > 0.0 && b > 0.0)) {
                fail(sub, "endpoints must be > 0");
                return;
            }
            values = log ? logspace(a, b, static_cast<int>(n)) : linspace(a, b, static_cast<int>(n));
        } else {
            fail(where, "must be a list of numbers or {\"logspace\"|\"linspace\": [start, stop, count]}");
            return;
        }
        if (values.empty()) {
            fail(where, "must not be empty");
            return;
        }
        bool ok = true;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!rule.first(values[i])) {
                fail(where + "[" + std::to_string(i) + "]", fmt(values[i]) + " " + rule.second);
                ok = false;
            }
            if (i > 0 && !(values[i] > values[i - 1])) {
                fail(where, "must be sorted in strictly ascending order");
                ok = false;
                break;
            }
        }
        if (ok) dst = std::move(values);
    }

    void finish() {
        if (!j_) return;
        for (const auto& [k, _] : j_->items()) {
            if (!seen_.contains(k)) fail(at(k), "unknown key");
        }
    }

    bool present() const { return j_ != nullptr; }

private:
    const json* j_ = nullptr;
    std::string path_;
    std::vector<std::string>& out_;
    std::set<std::string> seen_;
};

const json& sub(const json& doc, std::string_view key) {
    static const json null_value;
    if (!doc.is_object()) return null_value;
    auto it = doc.find(std::string(key));
    return it == doc.end() ? null_value : *it;
}

void read_circuit(const json& doc, CircuitParams& c, std::vector<std::string>& out) {
    Block b(doc, "circuit", out);
    const std::size_t before = out.size();
    b.number("ell", c.ell, positive());
    b.number("c_J", c.c_J, positive());
    b.number("i_c", c.i_c, positive());
    b.number("C_Sigma", c.C_Sigma, positive());
    b.number("I_c_tr", c.I_c_tr, positive());
    b.number("C_c", c.C_c, positive());
    b.number("alpha", c.alpha, non_negative());
    b.number("R_in", c.R_in, positive());
    b.number("L_in", c.L_in, non_negative());
    b.number("l", c.l, positive());
    b.finish();
    if (out.size() != before) return;
    try {
        (void)derive(c);
    } catch (const Error& e) {
        out.push_back(std::string("circuit: ") + e.what());
    }
}

void read_delay_sweep(const json& doc, DelaySweepConfig& c, std::vector<std::string>& out) {
    Block b(doc, "delay_sweep", out);
    b.grid("u0", c.u0, velocity());
    for (std::size_t i = 0; i < c.u0.size(); ++i) {
        if (!(c.u0[i] > 0.0)) {
            b.fail(b.at("u0") + "[" + std::to_string(i) + "]", "must be > 0 for a delay measurement");
        }
    }
    b.grid("alpha", c.alpha, non_negative());
    b.number("dtau", c.dtau, {[](double v) { return v > 0.0 && v <= 0.1; }, "must lie in (0, 0.1]"});
    b.number("launch", c.launch, any_finite());
    b.number("probe", c.probe, any_finite());
    b.number("deviation_limit", c.deviation_limit, positive());
    if (!(c.launch < 0.0 && c.probe > 0.0)) b.fail("delay_sweep", "requires launch < 0 < probe");
    b.finish();
}

void read_boundary(const json* v, pde::Boundary& bc, const std::string& where, std::vector<std::string>& out) {
    if (!v) return;
    if (v->is_string()) {
        if (*v == "open") {
            bc = pde::Boundary::open();
        } else if (*v == "fixed") {
            bc = pde::Boundary::fixed(0.0, 2.0 * std::numbers::pi);
        } else {
            out.push_back(where + ": must be \"open\", \"fixed\" or {\"fixed\": [left, right]}");
        }
        return;
    }
    if (v->is_object() && v->size() == 1 && v->contains("fixed")) {
        const json& f = v->at("fixed");
        if (f.is_array() && f.size() == 2 && f[0].is_number() && f[1].is_number()) {
            bc = pde::Boundary::fixed(f[0].get<double>(), f[1].get<double>());
            return;
        }
    }
    out.push_back(where + ": must be \"open\", \"fixed\" or {\"fixed\": [left, right]}");
}

void read_gamma(const json* v, pde::PiecewiseConstant& g, const std::string& where, std::vector<std::string>& out) {
    if (!v) return;
    Block b(*v, where, out);
    pde::PiecewiseConstant result{0.0, {}};
    b.number("base", result.base, bias());
    if (const json* steps = b.get("steps")) {
        if (!steps->is_array()) {
            b.fail(b.at("steps"), "must be a list of {\"xi\": x, \"value\": g}");
        } else {
            for (std::size_t i = 0; i < steps->size(); ++i) {
                Block s((*steps)[i], b.at("steps") + "[" + std::to_string(i) + "]", out);
                double xi = std::numeric_limits<double>::quiet_NaN();
                double value = std::numeric_limits<double>::quiet_NaN();
                s.number("xi", xi, any_finite());
                s.number("value", value, bias());
                s.finish();
                if (!s.present() || std::isnan(xi) || std::isnan(value)) {
                    s.fail(b.at("steps") + "[" + std::to_string(i) + "]", "requires numeric xi and value");
                    continue;
                }
                if (!result.steps.empty() && !(xi > result.steps.back().xi)) {
                    b.fail(b.at("steps"), "must be sorted by xi in strictly ascending order");
                }
                result.steps.push_back({xi, value});
            }
        }
    }
    b.finish();
    g = std::move(result);
}

void read_separation(const json& doc, SeparationConfig& c, std::vector<std::string>& out) {
    Block b(doc, "separation", out);
    b.number("xi_min", c.xi_min, any_finite());
    b.number("xi_max", c.xi_max, any_finite());
    b.number("dxi", c.dxi, positive());
    b.number("dtau", c.dtau, positive());
    b.number("u0", c.u0, velocity());
    b.number("alpha", c.alpha, non_negative());
    b.grid("xi0", c.xi0, any_finite());
    read_gamma(b.get("gamma"), c.gamma, b.at("gamma"), out);
    read_boundary(b.get("boundary"), c.boundary, b.at("boundary"), out);
    b.number("tau_end", c.tau_end, positive());
    b.grid("snapshot_times", c.snapshot_times, non_negative());
    b.integer("record_every", c.record_every, 1, 1'000'000);
    b.grid("arrival_probes", c.arrival_probes, any_finite());
    b.finish();

    if (!(c.xi_max > c.xi_min)) b.fail("separation", "requires xi_max > xi_min");
    if (c.dtau > 0.5 * c.dxi) b.fail("separation.dtau", "must satisfy dtau <= 0.5 dxi");
    if (!c.snapshot_times.empty() && c.snapshot_times.back() > c.tau_end) {
        b.fail("separation.snapshot_times", "must not exceed tau_end");
    }
    for (double x : c.xi0) {
        if (x - 5.0 < c.xi_min || x + 5.0 > c.xi_max) {
            b.fail("separation.xi0", "launch positions must lie at least 5 units inside the domain");
            break;
        }
    }
}

void read_pde_vs_ode(const json& doc, PdeVsOdeConfig& c, std::vector<std::string>& out) {
    Block b(doc, "pde_vs_ode", out);
    b.grid("u0", c.u0, velocity());
    for (std::size_t i = 0; i < c.u0.size(); ++i) {
        if (!(c.u0[i] > 0.0)) b.fail(b.at("u0") + "[" + std::to_string(i) + "]", "must be > 0 for a delay measurement");
    }
    b.grid("alpha", c.alpha, non_negative());
    b.number("half_width", c.half_width, positive());
    b.number("dxi", c.dxi, positive());
    b.number("dtau", c.dtau, positive());
    b.number("ode_dtau", c.ode_dtau, {[](double v) { return v > 0.0 && v <= 0.1; }, "must lie in (0, 0.1]"});
    b.number("launch", c.launch, any_finite());
    b.number("probe", c.probe, any_finite());
    b.finish();
    if (c.dtau > 0.5 * c.dxi) b.fail("pde_vs_ode.dtau", "must satisfy dtau <= 0.5 dxi");
    if (!(c.launch < 0.0 && c.probe > 0.0)) b.fail("pde_vs_ode", "requires launch < 0 < probe");
    if (c.launch - 5.0 < -c.half_width || c.probe + 1.0 > c.half_width) {
        b.fail("pde_vs_ode", "launch and probe must lie inside the domain [-half_width, half_width] with margin");
    }
}

void read_decay_curve(const json& doc, DecayCurveConfig& c, std::vector<std::string>& out) {
    Block b(doc, "decay_curve", out);
    b.grid("frequency_hz", c.frequency_hz, positive());
    if (b.get("alpha")) {
        double a = -1.0;
        b.number("alpha", a, non_negative());
        if (a >= 0.0) c.alpha = a;
    }
    b.finish();
}

void read_transitions(const json& doc, TransitionsConfig& c, std::vector<std::string>& out) {
    Block b(doc, "transitions", out);
    b.grid("u0", c.u0, velocity());
    for (std::size_t i = 0; i < c.u0.size(); ++i) {
        if (!(c.u0[i] > 0.0)) b.fail(b.at("u0") + "[" + std::to_string(i) + "]", "must be > 0");
    }
    b.integer("max_level", c.max_level, 0, 64);
    b.finish();
}

json boundary_json(const pde::Boundary& bc) {
    if (bc.kind == pde::Boundary::Kind::Open) return "open";
    return json{{"fixed", {bc.left, bc.right}}};
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
    for (const auto& [k, name] : kScenarioNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
    for (const auto& [k, n] : kScenarioNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

std::vector<double> logspace(double a, double b, int n) {
    if (n == 1) return {a};
    std::vector<double> out(static_cast<std::size_t>(n));
    const double la = std::log(a);
    const double lb = std::log(b);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
    out.front() = a;
    out.back() = b;
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    if (n == 1) return {a};
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    out.back() = b;
    return out;
}

ScenarioConfig validate_config(const json& doc) {
    std::vector<std::string> violations;
    ScenarioConfig c;
    c.delay_sweep.u0 = logspace(0.002, 0.1, 20);
    c.delay_sweep.alpha = {1e-6, 1e-5, 1e-4, 1e-3};
    c.transitions.u0 = logspace(0.002, 0.1, 20);
    for (int k = 5; k <= 500; ++k) c.decay_curve.frequency_hz.push_back(k * 1e8);

    Block top(doc, "", violations);
    if (!top.present()) throw ConfigError({"document: must be a JSON object"});

    if (const json* s = top.get("scenario")) {
        const auto kind = s->is_string() ? parse_scenario_kind(s->get<std::string>()) : std::nullopt;
        if (kind) {
            c.scenario = *kind;
        } else {
            std::string names;
            for (const auto& [_, n] : kScenarioNames) names += (names.empty() ? "" : ", ") + std::string(n);
            violations.push_back("scenario: must be one of " + names);
        }
    } else {
        violations.push_back("scenario: required");
    }
    if (const json* o = top.get("output_dir")) {
        if (o->is_string() && !o->get<std::string>().empty()) {
            c.output_dir = o->get<std::string>();
        } else {
            violations.push_back("output_dir: must be a non-empty string");
        }
    }
    (void)top.get("circuit");
    read_circuit(sub(doc, "circuit"), c.circuit, violations);
    (void)top.get("delay_sweep");
    read_delay_sweep(sub(doc, "delay_sweep"), c.delay_sweep, violations);
    (void)top.get("separation");
    read_separation(sub(doc, "separation"), c.separation, violations);
    (void)top.get("pde_vs_ode");
    read_pde_vs_ode(sub(doc, "pde_vs_ode"), c.pde_vs_ode, violations);
    (void)top.get("decay_curve");
    read_decay_curve(sub(doc, "decay_curve"), c.decay_curve, violations);
    (void)top.get("transitions");
    read_transitions(sub(doc, "transitions"), c.transitions, violations);
    top.finish();

    if (!violations.empty()) throw ConfigError(std::move(violations));
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read " + path.string()});
    std::stringstream buf;
    buf << in.rdbuf();
    const json doc = json::parse(buf.str(), nullptr, false);
    if (doc.is_discarded()) throw ConfigError({path.string() + ": not valid JSON"});
    return validate_config(doc);
}

void to_json(json& j, const ScenarioConfig& c) {
    json steps = json::array();
    for (const auto& s : c.separation.gamma.steps) steps.push_back({{"xi", s.xi}, {"value", s.value}});
    json decay = {{"frequency_hz", c.decay_curve.frequency_hz}};
    decay["alpha"] = c.decay_curve.alpha.value_or(c.circuit.alpha);
    j = json{
        {"scenario", std::string(to_string(c.scenario))},
        {"circuit", c.circuit},
        {"output_dir", c.output_dir.string()},
        {"delay_sweep",
         {{"u0", c.delay_sweep.u0},
          {"alpha", c.delay_sweep.alpha},
          {"dtau", c.delay_sweep.dtau},
          {"launch", c.delay_sweep.launch},
          {"probe", c.delay_sweep.probe},
          {"deviation_limit", c.delay_sweep.deviation_limit}}},
        {"separation",
         {{"xi_min", c.separation.xi_min},
          {"xi_max", c.separation.xi_max},
          {"dxi", c.separation.dxi},
          {"dtau", c.separation.dtau},
          {"u0", c.separation.u0},
          {"alpha", c.separation.alpha},
          {"xi0", c.separation.xi0},
          {"gamma", {{"base", c.separation.gamma.base}, {"steps", steps}}},
          {"boundary", boundary_json(c.separation.boundary)},
          {"tau_end", c.separation.tau_end},
          {"snapshot_times", c.separation.snapshot_times},
          {"record_every", c.separation.record_every},
          {"arrival_probes", c.separation.arrival_probes}}},
        {"pde_vs_ode",
         {{"u0", c.pde_vs_ode.u0},
          {"alpha", c.pde_vs_ode.alpha},
          {"half_width", c.pde_vs_ode.half_width},
          {"dxi", c.pde_vs_ode.dxi},
          {"dtau", c.pde_vs_ode.dtau},
          {"ode_dtau", c.pde_vs_ode.ode_dtau},
          {"launch", c.pde_vs_ode.launch},
          {"probe", c.pde_vs_ode.probe}}},
        {"decay_curve", decay},
        {"transitions", {{"u0", c.transitions.u0}, {"max_level", c.transitions.max_level}}},
    };
}

}  // namespace fluxon
