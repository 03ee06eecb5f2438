#include "fluxon/analytics.hpp"

#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/kink.hpp"
#include "fluxon/math.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fluxon::analytics {

namespace {

void require_velocity(double u0) {
    if (!(u0 > 0.0 && u0 < 1.0)) throw DomainError("initial velocity must satisfy 0 < u0 < 1");
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// 2 (n+1) pi^2 n0^2 (C_c/C_Sigma)^2 sech^2(pi sqrt(1-u0^2) omega / (2 u0 omega_p)).
double golden_rule(double prefactor, double omega, double u0, const DerivedParams& d) {
    const double ratio = d.circuit.C_c / d.circuit.C_Sigma;
    const double arg = 0.5 * std::numbers::pi * std::sqrt(1.0 - u0 * u0) * omega / (u0 * d.omega_p.rad_per_s);
    const double s = math::sech(arg);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return clamp_probability(2.0 * prefactor * pi2 * d.n0_tr * d.n0_tr * ratio * ratio * s * s);
}

}  // namespace

DelayResult time_delay_qubit(double u0, const DerivedParams& d) {
    require_velocity(u0);
    DelayResult r;
    r.tau_d = d.eta_c * (1.0 - u0 * u0) / u0;
    r.T_d = r.tau_d / d.omega_p.rad_per_s;
    r.exceeds_detector = r.T_d > constants::detector_resolution;
    return r;
}

double time_delay_qubit_circuit_form(double u0, const DerivedParams& d) {
    require_velocity(u0);
    const auto& c = d.circuit;
    return (1.0 - u0 * u0) / (u0 * (1.0 - d.p)) * (c.C_c * c.C_c / c.C_Sigma) * d.Z_J;
}

double MultilevelDelay::magnitude() const { return std::abs(tau); }

MultilevelDelay time_delay_multilevel(int n, double u0, const DerivedParams& d) {
    require_velocity(u0);
    if (n < 0) throw DomainError("level index must be non-negative");
    const double nn = static_cast<double>(n);
    const double p = d.p;
    if ((nn + 2.0) * p >= 1.0) throw DomainError("multilevel delay requires (n+2) p < 1");
    const double denom = u0 * (1.0 - nn * p) * (1.0 - (nn + 1.0) * p) * (1.0 - (nn + 2.0) * p);
    MultilevelDelay r;
    r.tau = -(1.0 - u0 * u0) * p * d.coupling_bare / denom;
    r.T = r.tau / d.omega_p.rad_per_s;
    return r;
}

PinningReport pinning_report(double eta) {
    if (eta == 0.0 || !std::isfinite(eta)) throw DomainError("pinning report needs a finite, non-zero eta");
    PinningReport r;
    r.required_sech2 = -2.0 / eta;
    r.pinned = r.required_sech2 > 0.0 && r.required_sech2 <= 1.0;
    return r;
}

double transition_probability_qubit(double u0, const DerivedParams& d) {
    require_velocity(u0);
    return golden_rule(1.0, d.omega_q.rad_per_s, u0, d);
}

double transition_probability_multilevel(int n_i, Direction dir, double u0, const DerivedParams& d) {
    require_velocity(u0);
    if (n_i < 0) throw DomainError("level index must be non-negative");
    if (dir == Direction::Up) {
        const double omega = transition_frequency(n_i + 1, d).rad_per_s;
        return golden_rule(static_cast<double>(n_i + 1), omega, u0, d);
    }
    if (n_i == 0) throw DomainError("no level below the ground state");
    const double omega = transition_frequency(n_i, d).rad_per_s;
    return golden_rule(static_cast<double>(n_i), omega, u0, d);
}

bool weak_coupling_ok(double u0, const DerivedParams& d) {
    require_velocity(u0);
    return kMuchGreater * coupling_peak(KinkSpec{u0, 0.0, 1}, d) <= d.omega_q.rad_per_s;
}

double adiabaticity_ratio(const DerivedParams& d) { return adiabaticity_ratio(d.omega_p, d.omega_q); }

double adiabaticity_ratio(AngularFrequency omega_p, AngularFrequency omega_q) {
    if (!(omega_p.rad_per_s > 0.0 && omega_q.rad_per_s > 0.0)) throw DomainError("frequencies must be positive");
    return 2.0 * omega_p.rad_per_s / (std::numbers::pi * omega_q.rad_per_s);
}

SeparationReport separation_condition(double gamma, double alpha, double u0, double eta) {
    if (!(eta > 0.0)) throw DomainError("separation condition needs eta > 0");
    if (!(u0 > 0.0)) throw DomainError("separation condition needs u0 > 0");
    if (alpha < 0.0) throw DomainError("damping must be non-negative");
    SeparationReport r;
    const double num = std::abs(gamma) * eta;
    if (alpha == 0.0) {
        r.margin = num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
        r.margin = num / (alpha * u0);
    }
    r.satisfied = r.margin >= kMuchGreater;
    return r;
}

double spatial_delay_width(double u0, double tau_d) { return u0 * tau_d; }

void to_json(nlohmann::json& j, const DelayResult& r) {
    j = {{"tau_d", r.tau_d}, {"T_d_s", r.T_d}, {"exceeds_detector", r.exceeds_detector}};
}

void to_json(nlohmann::json& j, const PinningReport& r) {
    j = {{"pinned", r.pinned}, {"required_sech2", r.required_sech2}};
}

void to_json(nlohmann::json& j, const SeparationReport& r) {
    j = {{"satisfied", r.satisfied}, {"margin", r.margin}, {"threshold", kMuchGreater}};
}

}  // namespace fluxon::analytics
