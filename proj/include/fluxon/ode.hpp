#pragma once

#include <optional>
#include <vector>

namespace fluxon::ode {

/// Modulation parameters of a perturbed kink.
struct KinkState {
    double u = 0.0;   ///< velocity
    double Xi = 0.0;  ///< centroid
    double tau = 0.0;
};

/// Already-integrated perturbations: uniform bias, damping and a delta coupling at xi = 0.
struct PerturbationSpec {
    double alpha = 0.0;
    double gamma = 0.0;
    double eta = 0.0;  ///< signed coupling, e.g. eta_c * sigma_z

    /// Throws DomainError unless |gamma| < 1, alpha >= 0, |eta| < 0.1.
    void validate() const;
};

struct Derivative {
    double du = 0.0;
    double dXi = 0.0;
};

/// du/dtau = -pi gamma (1-u^2)^{3/2}/4 - alpha u (1-u^2) - eta u^2 sech^3(T) sinh(T)/2,
/// dXi/dtau = u + eta u^3 T sech^3(T) sinh(T) / (2 sqrt(1-u^2)),  T = Xi/sqrt(1-u^2).
Derivative rhs(const KinkState& s, const PerturbationSpec& p);

/// One classical RK4 step.
KinkState rk4_step(const KinkState& s, const PerturbationSpec& p, double dtau);

/// Fixed-step RK4 from `initial` to tau_end; the returned trajectory starts with
/// `initial` and ends exactly at tau_end. Throws RangeError if |u| reaches 1 - 1e-12.
std::vector<KinkState> integrate(const KinkState& initial, const PerturbationSpec& p, double dtau,
                                 double tau_end);

/// -sign(gamma) [1 + (4 alpha / (pi gamma))^2]^{-1/2}; zero for gamma = 0.
/// Throws DomainError when alpha = 0 and gamma != 0, or both vanish.
double steady_state_velocity(double gamma, double alpha);

/// Positive root u of sqrt(1-u^2) = sqrt(1-u0^2) [1 - eta u0^2 sech^2(Theta0) / (4 sqrt(1-u0^2))].
double analytic_velocity(double u0, double eta, double Theta0);

/// Launch and probe positions for delay measurements. The defaults keep the
/// neglected coupling tail below eta * sech^2(10) ~ 1e-8 eta.
struct DelayGeometry {
    double launch = -10.0;
    double probe = 10.0;
};

/// Integrates until the centroid passes `probe` and returns the (cubic Hermite
/// interpolated) crossing time, or nullopt if the kink stalls first.
std::optional<double> probe_crossing_time(double u0, const PerturbationSpec& p, double dtau,
                                          const DelayGeometry& geometry = {});

struct DelayMeasurement {
    double tau_d = 0.0;       ///< tau_down - tau_up; +inf if either kink stalled
    double tau_up = 0.0;
    double tau_down = 0.0;
    bool reached = true;      ///< both kinks reached the probe
    bool regime_ok = true;    ///< alpha < |eta| u0
};

/// Delay between two runs that differ only in the coupling, measured at the probe.
DelayMeasurement measure_delay(double u0, const PerturbationSpec& p_up, const PerturbationSpec& p_down,
                               double dtau, const DelayGeometry& geometry = {});

}  // namespace fluxon::ode
