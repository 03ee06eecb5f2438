#pragma once

#include "fluxon/params.hpp"

namespace fluxon {

/// Initial data of a free sine-Gordon kink in dimensionless units.
struct KinkSpec {
    double u0 = 0.0;    ///< velocity in units of the Swihart velocity, |u0| < 1
    double xi0 = 0.0;   ///< centroid at tau = 0, in units of lambda_J
    int polarity = +1;  ///< +1 kink (phase 0 -> 2 pi), -1 the mirrored solution

    /// Throws DomainError unless |u0| < 1 and polarity is +-1.
    void validate() const;
    double contraction() const;  ///< sqrt(1 - u0^2)
};

/// 4 arctan(exp(+-(xi - u0 tau - xi0)/sqrt(1 - u0^2))).
double kink_phase(double xi, double tau, const KinkSpec& k);

/// Exact d(phase)/d(tau) of the free kink.
double kink_phase_rate(double xi, double tau, const KinkSpec& k);

/// Dimensionless voltage -d(phase)/d(tau); multiply by phi0 omega_p for volts.
double kink_voltage_dimensionless(double xi, double tau, const KinkSpec& k);

/// SFQ pulse in volts: (hbar omega_p / e) u0/sqrt(1-u0^2) sech(...), signed by polarity.
double kink_voltage(double xi, double tau, const KinkSpec& k, const DerivedParams& d);

/// Volts per unit of dimensionless voltage, phi0 * omega_p.
double voltage_unit(const DerivedParams& d);

/// Coupling amplitude g_c(t) (1/s) seen by a transmon at xi = 0 while the kink passes.
/// Peaks at t = -xi0 / (u0 omega_p).
double coupling_profile(double t, const KinkSpec& k, const DerivedParams& d);

/// Peak of coupling_profile.
double coupling_peak(const KinkSpec& k, const DerivedParams& d);

}  // namespace fluxon
