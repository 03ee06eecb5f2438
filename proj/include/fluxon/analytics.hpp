#pragma once

#include "fluxon/params.hpp"

#include <nlohmann/json_fwd.hpp>

namespace fluxon::analytics {

/// Factor used to read "much greater than" in the regime flags below.
inline constexpr double kMuchGreater = 10.0;

struct DelayResult {
    double tau_d = 0.0;             ///< dimensionless delay
    double T_d = 0.0;               ///< seconds, tau_d / omega_p
    bool exceeds_detector = false;  ///< T_d > 5 ps
};

/// Two-level delay tau_d = eta_c (1 - u0^2) / u0.
DelayResult time_delay_qubit(double u0, const DerivedParams& d);

/// Same delay evaluated through the circuit form (1-u0^2)/(u0 (1-p)) (C_c^2/C_Sigma) Z_J, in seconds.
double time_delay_qubit_circuit_form(double u0, const DerivedParams& d);

struct MultilevelDelay {
    double tau = 0.0;  ///< signed tau_|n> - tau_|n+1>, as derived (negative)
    double T = 0.0;    ///< seconds
    double magnitude() const;
};

/// tau_|n> - tau_|n+1> for a multi-level transmon. Requires (n+2) p < 1.
MultilevelDelay time_delay_multilevel(int n, double u0, const DerivedParams& d);

struct PinningReport {
    bool pinned = false;
    double required_sech2 = 0.0;  ///< value sech^2(Xi) would need for u = 0
};

/// Solvability of sech^2(Xi) = -2/eta. Requires eta != 0.
PinningReport pinning_report(double eta);

/// Symmetric nonadiabatic transition probability of the two-level qubit, clamped to [0, 1].
double transition_probability_qubit(double u0, const DerivedParams& d);

enum class Direction { Up, Down };

/// Neighbouring-level transition out of Fock state n_i. Down from n_i = 0 throws DomainError.
double transition_probability_multilevel(int n_i, Direction dir, double u0, const DerivedParams& d);

/// max |g_c| * 10 <= omega_q.
bool weak_coupling_ok(double u0, const DerivedParams& d);

/// 2 omega_p / (pi omega_q): sqrt(1-u0^2)/u0 must greatly exceed this for adiabatic passage.
double adiabaticity_ratio(const DerivedParams& d);
double adiabaticity_ratio(AngularFrequency omega_p, AngularFrequency omega_q);

struct SeparationReport {
    bool satisfied = false;
    double margin = 0.0;  ///< |gamma| eta / (alpha u0)
};

/// Bias strength needed to pull two delayed pulses apart; satisfied when margin >= 10.
SeparationReport separation_condition(double gamma, double alpha, double u0, double eta);

/// u0 * tau_d.
double spatial_delay_width(double u0, double tau_d);

void to_json(nlohmann::json& j, const DelayResult& r);
void to_json(nlohmann::json& j, const PinningReport& r);
void to_json(nlohmann::json& j, const SeparationReport& r);

}  // namespace fluxon::analytics
