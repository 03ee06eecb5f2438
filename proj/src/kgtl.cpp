#include "fluxon/kgtl.hpp"

#include "fluxon/errors.hpp"

#include <cmath>

namespace fluxon::kgtl {

namespace {

using namespace std::complex_literals;

constexpr double kGapTolerance = 1e-12;

void require_below_gap(AngularFrequency omega, const DerivedParams& d) {
    if (!(omega.rad_per_s > 0.0) || !(omega.rad_per_s < d.omega_p.rad_per_s)) {
        throw DomainError("decay rate needs 0 < omega < omega_p");
    }
}

}  // namespace

DecaySpec DecaySpec::from(const DerivedParams& d) {
    return {d, d.circuit.R_in, d.circuit.L_in, 0.5 * d.circuit.l, d.circuit.alpha};
}

double DecaySpec::g_J() const { return alpha * d.omega_p.rad_per_s * d.circuit.c_J; }

void DecaySpec::validate() const {
    if (!(half_length > 0.0)) throw DomainError("line length must be positive");
    if (!(R_in >= 0.0)) throw DomainError("R_in must be non-negative");
    if (!(L_in >= 0.0)) throw DomainError("L_in must be non-negative");
    if (!(alpha >= 0.0)) throw DomainError("alpha must be non-negative");
}

std::complex<double> shunt_admittance(AngularFrequency omega, const DecaySpec& spec) {
    const double w = omega.rad_per_s;
    const double wp = spec.d.omega_p.rad_per_s;
    if (!(w > 0.0)) throw DomainError("frequency must be positive");
    if (std::abs(w - wp) <= kGapTolerance * wp) throw SingularityError("impedance is singular at omega = omega_p");
    return spec.g_J() - 1i * w * spec.d.circuit.c_J * (wp * wp / (w * w) - 1.0);
}

std::complex<double> propagation_constant(AngularFrequency omega, const DecaySpec& spec) {
    const auto x0 = shunt_admittance(omega, spec);
    // Principal square root has Re >= 0.
    return std::sqrt(1i * omega.rad_per_s * spec.d.circuit.ell * x0);
}

Impedance impedance(double x, AngularFrequency omega, const DecaySpec& spec) {
    spec.validate();
    if (!(x >= 0.0)) throw DomainError("position must be non-negative");
    const auto x0 = shunt_admittance(omega, spec);
    const auto k = propagation_constant(omega, spec);
    const auto lambda0 = k / x0;
    const Impedance z0 = spec.R_in + 1i * omega.rad_per_s * spec.L_in;
    if (z0 + lambda0 == 0.0) throw DomainError("termination cancels the line impedance");
    if (x == 0.0) return z0;

    const auto rho = (z0 - lambda0) / (z0 + lambda0);
    const auto decay = rho * std::exp(-2.0 * k * x);
    return lambda0 + 2.0 * lambda0 * decay / (1.0 - decay);
}

double effective_impedance(AngularFrequency omega, const DerivedParams& d) {
    require_below_gap(omega, d);
    const double r = d.omega_p.rad_per_s / omega.rad_per_s;
    return d.Z_J / std::sqrt(r * r - 1.0);
}

double decay_rate(AngularFrequency omega_q, const DecaySpec& spec) {
    require_below_gap(omega_q, spec.d);
    const auto z = impedance(spec.half_length, omega_q, spec);
    const Impedance z_eff = z - 1i / (omega_q.rad_per_s * spec.d.circuit.C_c);
    return (1.0 / z_eff).real() / spec.d.circuit.C_Sigma;
}

double decay_rate_dissipationless_approx(AngularFrequency omega_q, const DecaySpec& spec) {
    spec.validate();
    if (spec.alpha != 0.0) throw DomainError("dissipationless approximation needs alpha = 0");
    if (spec.L_in != 0.0) throw DomainError("dissipationless approximation needs L_in = 0");
    const auto& c = spec.d.circuit;
    const double w = omega_q.rad_per_s;
    const double zt = effective_impedance(omega_q, spec.d);
    if (10.0 * zt > spec.R_in || 10.0 * zt > 1.0 / (w * c.C_c)) {
        throw RegimeError("dissipationless approximation needs Z~ << R_in and Z~ << 1/(omega C_c)");
    }
    const double full_length = 2.0 * spec.half_length;
    return 4.0 * w * w * (c.C_c * c.C_c / c.C_Sigma) * (zt * zt / spec.R_in) *
           std::exp(-full_length / spec.d.lambda_J);
}

double decay_rate_underdamped_approx(AngularFrequency omega_q, const DecaySpec& spec) {
    spec.validate();
    if (spec.alpha >= 0.1) throw RegimeError("underdamped approximation needs alpha << 1");
    const auto& c = spec.d.circuit;
    const double w = omega_q.rad_per_s;
    const double zt = effective_impedance(omega_q, spec.d);
    return spec.alpha * (w * w * w / (2.0 * spec.d.omega_p.rad_per_s)) * (c.C_c * c.C_c / c.C_Sigma) * zt;
}

AngularFrequency dispersion(double k, const DerivedParams& d) {
    const double wp = d.omega_p.rad_per_s;
    return {std::sqrt(wp * wp + d.c_bar * d.c_bar * k * k)};
}

std::optional<double> wavenumber(AngularFrequency omega, const DerivedParams& d) {
    const double w = omega.rad_per_s;
    const double wp = d.omega_p.rad_per_s;
    if (w < wp) return std::nullopt;
    return std::sqrt((w - wp) * (w + wp)) / d.c_bar;
}

}  // namespace fluxon::kgtl
