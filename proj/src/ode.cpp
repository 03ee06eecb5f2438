#include "fluxon/ode.hpp"

#include "fluxon/errors.hpp"
#include "fluxon/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fluxon::ode {

namespace {

constexpr double kLightConeGuard = 1.0 - 1e-12;
constexpr double kMaxStep = 0.1;
// A kink slower than this fraction of its launch speed is treated as stalled.
constexpr double kStallFraction = 1e-3;
// Hard cap on the integration window in units of the free travel time.
constexpr double kMaxTravelFactor = 1e3;

void check_step(double dtau) {
    if (!(dtau > 0.0) || dtau > kMaxStep) throw DomainError("ODE step must satisfy 0 < dtau <= 0.1");
}

void guard_light_cone(const KinkState& s) {
    if (!(std::abs(s.u) < kLightConeGuard)) {
        throw RangeError("kink velocity reached the light cone at tau = " + std::to_string(s.tau));
    }
}

// Cubic Hermite interpolation of Xi between two RK4 nodes; returns the tau where Xi = target.
double hermite_crossing(const KinkState& a, const Derivative& da, const KinkState& b, const Derivative& db,
                        double target) {
    const double h = b.tau - a.tau;
    auto xi_at = [&](double t) {
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * a.Xi + (t3 - 2 * t2 + t) * h * da.dXi + (-2 * t3 + 3 * t2) * b.Xi +
               (t3 - t2) * h * db.dXi;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (xi_at(mid) < target) lo = mid;
        else hi = mid;
    }
    return a.tau + 0.5 * (lo + hi) * h;
}

}  // namespace

void PerturbationSpec::validate() const {
    if (!(std::abs(gamma) < 1.0)) throw DomainError("bias must satisfy |gamma| < 1");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("damping must satisfy alpha >= 0");
    if (!(std::abs(eta) < 0.1)) throw DomainError("coupling must satisfy |eta| < 0.1");
}

Derivative rhs(const KinkState& s, const PerturbationSpec& p) {
    const double u = s.u;
    const double one_minus_u2 = 1.0 - u * u;
    const double w = std::sqrt(one_minus_u2);
    Derivative d;
    d.du = -0.25 * std::numbers::pi * p.gamma * one_minus_u2 * w - p.alpha * u * one_minus_u2;
    d.dXi = u;
    if (p.eta != 0.0) {
        const double theta = s.Xi / w;
        const double shape = math::sech3_sinh(theta);
        d.du -= 0.5 * p.eta * u * u * shape;
        d.dXi += 0.5 * p.eta * (u * u * u / w) * theta * shape;
    }
    return d;
}

KinkState rk4_step(const KinkState& s, const PerturbationSpec& p, double h) {
    auto shifted = [&](const Derivative& k, double f) {
        return KinkState{s.u + f * h * k.du, s.Xi + f * h * k.dXi, s.tau + f * h};
    };
    const Derivative k1 = rhs(s, p);
    const Derivative k2 = rhs(shifted(k1, 0.5), p);
    const Derivative k3 = rhs(shifted(k2, 0.5), p);
    const Derivative k4 = rhs(shifted(k3, 1.0), p);
    return {s.u + h / 6.0 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du),
            s.Xi + h / 6.0 * (k1.dXi + 2 * k2.dXi + 2 * k3.dXi + k4.dXi), s.tau + h};
}

std::vector<KinkState> integrate(const KinkState& initial, const PerturbationSpec& p, double dtau,
                                 double tau_end) {
    check_step(dtau);
    p.validate();
    guard_light_cone(initial);
    if (tau_end < initial.tau) throw DomainError("tau_end precedes the initial time");

    const double span = tau_end - initial.tau;
    const auto n = static_cast<long long>(std::ceil(span / dtau - 1e-9));
    std::vector<KinkState> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    out.push_back(initial);
    KinkState s = initial;
    for (long long k = 1; k <= n; ++k) {
        const double h = (k == n) ? (tau_end - s.tau) : dtau;
        s = rk4_step(s, p, h);
        if (k == n) s.tau = tau_end;
        guard_light_cone(s);
        out.push_back(s);
    }
    return out;
}

double steady_state_velocity(double gamma, double alpha) {
    if (alpha < 0.0) throw DomainError("damping must be non-negative");
    if (gamma == 0.0) {
        if (alpha > 0.0) return 0.0;
        throw DomainError("steady state needs alpha > 0 or gamma != 0");
    }
    if (alpha == 0.0) throw DomainError("undamped biased kink has no steady state (|u| -> 1)");
    const double r = 4.0 * alpha / (std::numbers::pi * gamma);
    return -std::copysign(1.0, gamma) / std::sqrt(1.0 + r * r);
}

double analytic_velocity(double u0, double eta, double Theta0) {
    if (!(std::abs(u0) < 1.0)) throw DomainError("analytic_velocity needs -1 < u0 < 1");
    const double w0 = std::sqrt(1.0 - u0 * u0);
    const double s = math::sech(Theta0);
    const double w = w0 * (1.0 - 0.25 * eta * u0 * u0 / w0 * s * s);
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("coupling too strong: no real velocity");
    return std::sqrt((1.0 - w) * (1.0 + w));
}

std::optional<double> probe_crossing_time(double u0, const PerturbationSpec& p, double dtau,
                                          const DelayGeometry& g) {
    check_step(dtau);
    p.validate();
    if (!(u0 > 0.0 && u0 < 1.0)) throw DomainError("delay measurement needs 0 < u0 < 1");
    if (!(g.probe > g.launch)) throw DomainError("probe must lie ahead of the launch point");

    const double tau_cap = kMaxTravelFactor * (g.probe - g.launch) / u0;
    const double stall = kStallFraction * u0;
    KinkState s{u0, g.launch, 0.0};
    Derivative ds = rhs(s, p);
    while (s.tau < tau_cap) {
        const KinkState next = rk4_step(s, p, dtau);
        guard_light_cone(next);
        const Derivative dn = rhs(next, p);
        if (next.Xi >= g.probe) return hermite_crossing(s, ds, next, dn, g.probe);
        if (next.u <= stall) return std::nullopt;
        s = next;
        ds = dn;
    }
    return std::nullopt;
}

DelayMeasurement measure_delay(double u0, const PerturbationSpec& p_up, const PerturbationSpec& p_down,
                               double dtau, const DelayGeometry& g) {
    DelayMeasurement m;
    const auto up = probe_crossing_time(u0, p_up, dtau, g);
    const auto down = probe_crossing_time(u0, p_down, dtau, g);
    const double eta = std::max(std::abs(p_up.eta), std::abs(p_down.eta));
    const double alpha = std::max(p_up.alpha, p_down.alpha);
    m.regime_ok = alpha < eta * u0;
    m.reached = up.has_value() && down.has_value();
    m.tau_up = up.value_or(std::numeric_limits<double>::infinity());
    m.tau_down = down.value_or(std::numeric_limits<double>::infinity());
    m.tau_d = m.reached ? m.tau_down - m.tau_up : std::numeric_limits<double>::infinity();
    return m;
}

}  // namespace fluxon::ode
