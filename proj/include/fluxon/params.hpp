#pragma once

#include "fluxon/units.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fluxon {

/// Physical circuit constants of the JTL, the transmon and their coupling (SI units).
struct CircuitParams {
    double ell = 1.8e-6;       ///< inductance per unit length (H/m)
    double c_J = 3.0e-8;       ///< capacitance per unit length (F/m)
    double i_c = 1.25;         ///< critical current per unit length (A/m)
    double C_Sigma = 100e-15;  ///< transmon total capacitance (F)
    double I_c_tr = 20e-9;     ///< transmon critical current (A)
    double C_c = 10e-15;       ///< coupling capacitance (F)
    double alpha = 1.0e-6;     ///< dimensionless damping coefficient
    double R_in = 50.0;        ///< termination resistance (Ohm)
    double L_in = 0.0;         ///< termination inductance (H)
    double l = 1.0e-3;         ///< JTL physical length (m)

    /// The reference device: a 250 A/cm^2 LJJ with a 100 fF transmon and 10 fF coupler.
    static CircuitParams reference() { return {}; }
};

/// Every derived and dimensionless quantity the other modules consume.
struct DerivedParams {
    CircuitParams circuit;

    double lambda_J = 0.0;       ///< Josephson penetration depth (m)
    AngularFrequency omega_p;    ///< plasma frequency
    double c_bar = 0.0;          ///< Swihart velocity (m/s)
    double Z_J = 0.0;            ///< characteristic impedance sqrt(ell/c_J) (Ohm)
    double E_C_tr = 0.0;         ///< transmon charging energy (J)
    double E_J_tr = 0.0;         ///< transmon Josephson energy (J)
    AngularFrequency omega_tr;   ///< bare transmon frequency sqrt(8 E_J E_C)/hbar
    AngularFrequency omega_q;    ///< qubit frequency E_1/hbar
    double phi0_tr = 0.0;        ///< phase zero-point fluctuation
    double n0_tr = 0.0;          ///< Cooper-pair number zero-point fluctuation
    double p = 0.0;              ///< anharmonicity ratio sqrt(E_C/(8 E_J))
    double coupling_bare = 0.0;  ///< C_c^2 / (lambda_J c_J C_Sigma)
    double eta_c = 0.0;          ///< coupling_bare / (1 - p)
    double g_J = 0.0;            ///< subgap conductance per length from alpha (S/m)
};

/// Smallest E_J/E_C accepted as the transmon regime.
inline constexpr double kMinTransmonRatio = 20.0;
/// eta_c at or above this is outside the perturbative regime.
inline constexpr double kMaxCouplingEta = 0.1;

/// Throws DomainError for non-positive inputs, RegimeError when the transmon
/// ratio or the coupling strength leave the perturbative regime.
DerivedParams derive(const CircuitParams& params);

/// E_n = hbar omega_tr n - (E_C/2) n (n+1), in joules.
double transmon_level_energy(int n, const DerivedParams& d);

/// Transition frequency (E_n - E_{n-1})/hbar between neighbouring levels, n >= 1.
AngularFrequency transition_frequency(int n, const DerivedParams& d);

/// State-dependent coupling of Fock level n; negative for small n p.
double eta_multilevel(int n, const DerivedParams& d);

/// Ratio of diagonal to off-diagonal Schrieffer-Wolff terms for level n.
/// Values >= 10 mean the off-diagonal correction is negligible.
double sw_validity_ratio(int n, double p);

void to_json(nlohmann::json& j, const CircuitParams& c);
void from_json(const nlohmann::json& j, CircuitParams& c);
void to_json(nlohmann::json& j, const DerivedParams& d);

}  // namespace fluxon
