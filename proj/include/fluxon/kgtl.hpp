#pragma once

#include "fluxon/params.hpp"
#include "fluxon/units.hpp"

#include <complex>
#include <optional>

namespace fluxon::kgtl {

using Impedance = std::complex<double>;

/// Linearised JTL of length half_length, terminated by Z0 = R_in + i omega L_in at x = 0
/// and capacitively coupled to the transmon at x = half_length.
struct DecaySpec {
    DerivedParams d;
    double R_in = 50.0;
    double L_in = 0.0;
    double half_length = 0.5e-3;  ///< metres
    double alpha = 0.0;

    /// Termination, half of the line length and damping taken from d.circuit.
    static DecaySpec from(const DerivedParams& d);

    /// Subgap conductance per length, the inverse of alpha = g_J sqrt(phi0 / (i_c c_J)).
    double g_J() const;
    /// Throws DomainError unless half_length > 0, R_in >= 0, L_in >= 0, alpha >= 0.
    void validate() const;
};

/// Closed-form solution of dZ/dx + X0 Z^2 = i omega ell with Z(0) = Z0, written as
/// lambda0 (1 + rho e^{-2kx}) / (1 - rho e^{-2kx}), k = lambda0 X0, Re k >= 0, so no
/// growing exponential is formed. Throws SingularityError at omega = omega_p.
Impedance impedance(double x, AngularFrequency omega, const DecaySpec& spec);

/// X0 = g_J - i omega c_J (omega_p^2/omega^2 - 1).
std::complex<double> shunt_admittance(AngularFrequency omega, const DecaySpec& spec);

/// Propagation constant lambda0 X0 with non-negative real part.
std::complex<double> propagation_constant(AngularFrequency omega, const DecaySpec& spec);

/// Z_J / sqrt(omega_p^2/omega^2 - 1), defined below the gap.
double effective_impedance(AngularFrequency omega, const DerivedParams& d);

/// Re[1/Z_eff]/C_Sigma with Z_eff = Z(l/2) - i/(omega C_c). Requires 0 < omega < omega_p.
double decay_rate(AngularFrequency omega_q, const DecaySpec& spec);

/// 4 omega^2 (C_c^2/C_Sigma) (Z~^2/R_in) e^{-l/lambda_J}. Needs alpha = 0, L_in = 0 and
/// Z~ at least ten times below both R_in and 1/(omega C_c) (RegimeError otherwise).
double decay_rate_dissipationless_approx(AngularFrequency omega_q, const DecaySpec& spec);

/// alpha (omega^3 / 2 omega_p) (C_c^2/C_Sigma) Z~. RegimeError for alpha >= 0.1.
double decay_rate_underdamped_approx(AngularFrequency omega_q, const DecaySpec& spec);

/// omega(k) = sqrt(omega_p^2 + c_bar^2 k^2).
AngularFrequency dispersion(double k, const DerivedParams& d);

/// Non-negative wavenumber with dispersion(k) = omega, or nullopt inside the gap.
std::optional<double> wavenumber(AngularFrequency omega, const DerivedParams& d);

}  // namespace fluxon::kgtl
