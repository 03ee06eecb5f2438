#include "fluxon/kink.hpp"

#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/math.hpp"

#include <cmath>
#include <numbers>

namespace fluxon {

void KinkSpec::validate() const {
    if (!(std::abs(u0) < 1.0)) throw DomainError("kink velocity must satisfy -1 < u0 < 1");
    if (polarity != 1 && polarity != -1) throw DomainError("kink polarity must be +1 or -1");
    if (!std::isfinite(xi0)) throw DomainError("kink centroid must be finite");
}

double KinkSpec::contraction() const { return std::sqrt(1.0 - u0 * u0); }

namespace {

double comoving(double xi, double tau, const KinkSpec& k) {
    return (xi - k.u0 * tau - k.xi0) / k.contraction();
}

}  // namespace

double kink_phase(double xi, double tau, const KinkSpec& k) {
    const double theta = k.polarity * comoving(xi, tau, k);
    // 4 atan(e^t) = 2 pi - 4 atan(e^-t); use the branch that keeps the exponent non-positive.
    if (theta > 0.0) return 2.0 * std::numbers::pi - 4.0 * std::atan(std::exp(-theta));
    return 4.0 * std::atan(std::exp(theta));
}

double kink_phase_rate(double xi, double tau, const KinkSpec& k) {
    const double w = k.contraction();
    return -2.0 * k.polarity * (k.u0 / w) * math::sech(comoving(xi, tau, k));
}

double kink_voltage_dimensionless(double xi, double tau, const KinkSpec& k) {
    return -kink_phase_rate(xi, tau, k);
}

double voltage_unit(const DerivedParams& d) {
    return constants::reduced_flux_quantum * d.omega_p.rad_per_s;
}

double kink_voltage(double xi, double tau, const KinkSpec& k, const DerivedParams& d) {
    const double amplitude = constants::hbar * d.omega_p.rad_per_s / constants::elementary_charge;
    return k.polarity * amplitude * (k.u0 / k.contraction()) * math::sech(comoving(xi, tau, k));
}

double coupling_peak(const KinkSpec& k, const DerivedParams& d) {
    const auto& c = d.circuit;
    return std::numbers::sqrt2 * d.n0_tr * (c.C_c / c.C_Sigma) * k.u0 * d.omega_p.rad_per_s /
           k.contraction();
}

double coupling_profile(double t, const KinkSpec& k, const DerivedParams& d) {
    const double arg = (k.u0 * d.omega_p.rad_per_s * t + k.xi0) / k.contraction();
    return coupling_peak(k, d) * math::sech(arg);
}

}  // namespace fluxon
