#include "fluxon/params.hpp"

#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>

namespace fluxon {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be finite and strictly positive");
    }
}

}  // namespace

DerivedParams derive(const CircuitParams& c) {
    require_positive(c.ell, "ell");
    require_positive(c.c_J, "c_J");
    require_positive(c.i_c, "i_c");
    require_positive(c.C_Sigma, "C_Sigma");
    require_positive(c.I_c_tr, "I_c_tr");
    require_positive(c.C_c, "C_c");
    require_positive(c.l, "l");
    if (!(c.alpha >= 0.0) || !std::isfinite(c.alpha)) throw DomainError("alpha must be >= 0");
    if (!(c.R_in >= 0.0) || !std::isfinite(c.R_in)) throw DomainError("R_in must be >= 0");
    if (!(c.L_in >= 0.0) || !std::isfinite(c.L_in)) throw DomainError("L_in must be >= 0");

    using namespace constants;
    const double phi0 = reduced_flux_quantum;

    DerivedParams d;
    d.circuit = c;
    d.lambda_J = std::sqrt(phi0 / (c.ell * c.i_c));
    d.omega_p = {std::sqrt(c.i_c / (phi0 * c.c_J))};
    d.c_bar = 1.0 / std::sqrt(c.ell * c.c_J);
    d.Z_J = std::sqrt(c.ell / c.c_J);

    d.E_C_tr = elementary_charge * elementary_charge / (2.0 * c.C_Sigma);
    d.E_J_tr = phi0 * c.I_c_tr;
    const double ratio = d.E_J_tr / d.E_C_tr;
    if (ratio < kMinTransmonRatio) {
        throw RegimeError("E_J/E_C = " + std::to_string(ratio) + " is below the transmon regime (>= 20)");
    }

    d.omega_tr = {std::sqrt(8.0 * d.E_J_tr * d.E_C_tr) / hbar};
    d.omega_q = {(hbar * d.omega_tr.rad_per_s - d.E_C_tr) / hbar};
    d.phi0_tr = std::pow(8.0 * d.E_C_tr / d.E_J_tr, 0.25);
    d.n0_tr = std::pow(d.E_J_tr / (8.0 * d.E_C_tr), 0.25);
    d.p = std::sqrt(d.E_C_tr / (8.0 * d.E_J_tr));

    d.coupling_bare = c.C_c * c.C_c / (d.lambda_J * c.c_J * c.C_Sigma);
    d.eta_c = d.coupling_bare / (1.0 - d.p);
    if (d.eta_c >= kMaxCouplingEta) {
        throw RegimeError("eta_c = " + std::to_string(d.eta_c) + " is outside the perturbative regime (< 0.1)");
    }

    // alpha = g_J sqrt(phi0 / (i_c c_J)) and sqrt(phi0/(i_c c_J)) = 1/(omega_p c_J).
    d.g_J = c.alpha * d.omega_p.rad_per_s * c.c_J;
    return d;
}

double transmon_level_energy(int n, const DerivedParams& d) {
    if (n < 0) throw DomainError("level index must be non-negative");
    const double nn = static_cast<double>(n);
    return constants::hbar * d.omega_tr.rad_per_s * nn - 0.5 * d.E_C_tr * nn * (nn + 1.0);
}

AngularFrequency transition_frequency(int n, const DerivedParams& d) {
    if (n < 1) throw DomainError("transition frequency needs n >= 1");
    return {(transmon_level_energy(n, d) - transmon_level_energy(n - 1, d)) / constants::hbar};
}

double eta_multilevel(int n, const DerivedParams& d) {
    if (n < 0) throw DomainError("level index must be non-negative");
    const double nn = static_cast<double>(n);
    if ((nn + 1.0) * d.p >= 1.0) throw DomainError("eta_multilevel requires (n+1) p < 1");
    return -d.coupling_bare / ((1.0 - nn * d.p) * (1.0 - (nn + 1.0) * d.p));
}

double sw_validity_ratio(int n, double p) {
    if (n < 0) throw DomainError("level index must be non-negative");
    const double nn = static_cast<double>(n);
    if ((nn + 2.0) * p >= 1.0) throw DomainError("sw_validity_ratio requires (n+2) p < 1");
    const double lhs = (1.0 - (nn + 2.0) * p) / (p * (1.0 - nn * p));
    const double rhs = 0.5 * std::sqrt((nn + 1.0) * (nn + 2.0));
    return lhs / rhs;
}

void to_json(nlohmann::json& j, const CircuitParams& c) {
    j = nlohmann::json{{"ell", c.ell},         {"c_J", c.c_J}, {"i_c", c.i_c},       {"C_Sigma", c.C_Sigma},
                       {"I_c_tr", c.I_c_tr},   {"C_c", c.C_c}, {"alpha", c.alpha},   {"R_in", c.R_in},
                       {"L_in", c.L_in},       {"l", c.l}};
}

void from_json(const nlohmann::json& j, CircuitParams& c) {
    c = CircuitParams::reference();
    auto take = [&](const char* key, double& field) {
        if (j.contains(key)) field = j.at(key).get<double>();
    };
    take("ell", c.ell);
    take("c_J", c.c_J);
    take("i_c", c.i_c);
    take("C_Sigma", c.C_Sigma);
    take("I_c_tr", c.I_c_tr);
    take("C_c", c.C_c);
    take("alpha", c.alpha);
    take("R_in", c.R_in);
    take("L_in", c.L_in);
    take("l", c.l);
}

void to_json(nlohmann::json& j, const DerivedParams& d) {
    j = nlohmann::json{
        {"lambda_J_m", d.lambda_J},
        {"omega_p_rad_per_s", d.omega_p.rad_per_s},
        {"c_bar_m_per_s", d.c_bar},
        {"Z_J_ohm", d.Z_J},
        {"E_C_tr_J", d.E_C_tr},
        {"E_J_tr_J", d.E_J_tr},
        {"E_C_tr_over_h_Hz", d.E_C_tr / constants::planck},
        {"E_J_tr_over_h_Hz", d.E_J_tr / constants::planck},
        {"omega_tr_rad_per_s", d.omega_tr.rad_per_s},
        {"omega_q_rad_per_s", d.omega_q.rad_per_s},
        {"omega_q_over_2pi_Hz", d.omega_q.hz()},
        {"phi0_tr", d.phi0_tr},
        {"n0_tr", d.n0_tr},
        {"p", d.p},
        {"coupling_bare", d.coupling_bare},
        {"eta_c", d.eta_c},
        {"g_J_S_per_m", d.g_J},
    };
}

}  // namespace fluxon
