#include "catch_amalgamated.hpp"

#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"
#include "fluxon/kink.hpp"
#include "fluxon/params.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace fluxon;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPi = std::numbers::pi;

// Half-maximum half-width of sech(x/w) is w * acosh(2).
double half_width(double u0) { return std::sqrt(1.0 - u0 * u0) * std::acosh(2.0); }

}  // namespace

TEST_CASE("kink phase is pi at the centroid and has the right asymptotes", "[kink]") {
    const KinkSpec k{0.3, 2.0, +1};
    for (double tau : {0.0, 1.0, 7.5}) CHECK_THAT(kink_phase(k.xi0 + k.u0 * tau, tau, k), WithinRel(kPi, 1e-15));
    CHECK_THAT(kink_phase(1e3, 0.0, k), WithinAbs(2.0 * kPi, 1e-15));
    CHECK_THAT(kink_phase(-1e3, 0.0, k), WithinAbs(0.0, 1e-15));

    const KinkSpec anti{0.3, 2.0, -1};
    CHECK_THAT(kink_phase(1e3, 0.0, anti) - kink_phase(-1e3, 0.0, anti), WithinAbs(-2.0 * kPi, 1e-12));
}

TEST_CASE("kink phase matches the arctan-exp formula", "[kink]") {
    const KinkSpec k{0.01, 5.75, +1};
    const double w = k.contraction();
    for (int i = -5; i <= 4; ++i) {
        const double xi = 5.75 + w * std::asinh(0.7 * i);
        const double direct = 4.0 * std::atan(std::exp((xi - k.xi0) / w));
        CHECK_THAT(kink_phase(xi, 0.0, k), WithinRel(direct, 1e-14));
    }
}

TEST_CASE("kink phase is monotone and winds by 2 pi polarity", "[kink][property]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> vel(-0.99, 0.99);
    std::uniform_real_distribution<double> pos(-20.0, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        const KinkSpec k{vel(rng), pos(rng), trial % 2 == 0 ? 1 : -1};
        const double tau = std::abs(pos(rng));
        CHECK_THAT(kink_phase(1e4, tau, k) - kink_phase(-1e4, tau, k), WithinAbs(2.0 * kPi * k.polarity, 1e-12));
        if (k.polarity == 1) {
            double prev = kink_phase(-60.0, tau, k);
            for (double xi = -59.5; xi < 60.0; xi += 0.5) {
                const double v = kink_phase(xi, tau, k);
                CHECK(v >= prev);
                CHECK(v > 0.0);
                CHECK(v < 2.0 * kPi + 1e-15);
                prev = v;
            }
        }
    }
}

TEST_CASE("kink spec validation", "[kink][errors]") {
    CHECK_THROWS_AS((KinkSpec{1.0, 0.0, 1}.validate()), DomainError);
    CHECK_THROWS_AS((KinkSpec{-1.5, 0.0, 1}.validate()), DomainError);
    CHECK_THROWS_AS((KinkSpec{0.1, 0.0, 0}.validate()), DomainError);
    CHECK_NOTHROW((KinkSpec{-0.999, 0.0, -1}.validate()));
}

TEST_CASE("kink voltage peak, symmetry and static limit", "[kink]") {
    const auto d = derive(CircuitParams::reference());
    const KinkSpec k{0.2, 1.0, +1};
    const double peak = constants::hbar * d.omega_p.rad_per_s / constants::elementary_charge * 0.2 / std::sqrt(0.96);
    CHECK_THAT(kink_voltage(1.0, 0.0, k, d), WithinRel(peak, 1e-14));
    for (double dx : {0.1, 0.7, 3.0}) {
        CHECK_THAT(kink_voltage(1.0 + dx, 0.0, k, d), WithinRel(kink_voltage(1.0 - dx, 0.0, k, d), 1e-14));
    }
    const KinkSpec rest{0.0, 0.0, +1};
    for (double xi : {-2.0, 0.0, 0.5}) CHECK(kink_voltage(xi, 3.0, rest, d) == 0.0);
    CHECK_THAT(voltage_unit(d), WithinRel(0.12e-3, 0.03));
}

TEST_CASE("kink voltage equals -phi0 omega_p times the phase rate", "[kink]") {
    const auto d = derive(CircuitParams::reference());
    const KinkSpec k{0.4, 0.0, +1};
    const double h = 1e-5;
    for (double xi : {0.0, 0.3, -0.8}) {
        const double rate = (kink_phase(xi, h, k) - kink_phase(xi, -h, k)) / (2.0 * h);
        CHECK_THAT(kink_voltage(xi, 0.0, k, d), WithinRel(-voltage_unit(d) * rate, 1e-6));
        CHECK_THAT(kink_phase_rate(xi, 0.0, k), WithinRel(rate, 1e-6));
    }
}

TEST_CASE("kink voltage integrates to one flux quantum", "[kink]") {
    const auto d = derive(CircuitParams::reference());
    const KinkSpec k{0.05, 0.0, +1};
    // Pass the pulse through xi = 0: integrate over t in seconds with Simpson's rule.
    const double t_unit = 1.0 / d.omega_p.rad_per_s;
    const int n = 20000;
    const double tau_lo = -400.0;
    const double tau_hi = 400.0;
    const double h = (tau_hi - tau_lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += wgt * kink_voltage(0.0, tau_lo + i * h, k, d);
    }
    const double flux = sum * h / 3.0 * t_unit;
    CHECK_THAT(flux, WithinRel(2.0 * kPi * constants::reduced_flux_quantum, 1e-3));
    CHECK_THAT(flux, WithinRel(2.07e-15, 2e-3));
}

TEST_CASE("voltage pulse contracts as sqrt(1 - u0^2)", "[kink]") {
    auto fwhm = [](double u0) {
        const KinkSpec k{u0, 0.0, +1};
        const double peak = kink_voltage_dimensionless(0.0, 0.0, k);
        double lo = 0.0;
        double hi = 10.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (kink_voltage_dimensionless(mid, 0.0, k) > 0.5 * peak ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    CHECK_THAT(fwhm(0.1) / fwhm(0.9), WithinRel(std::sqrt(0.99 / 0.19), 1e-9));
    CHECK_THAT(fwhm(0.1), WithinRel(half_width(0.1), 1e-9));
}

TEST_CASE("coupling profile", "[kink]") {
    const auto d = derive(CircuitParams::reference());
    const KinkSpec k{0.01, 0.0, +1};
    const double peak = std::sqrt(2.0) * d.n0_tr * 0.1 * 0.01 * d.omega_p.rad_per_s / std::sqrt(1.0 - 1e-4);
    CHECK_THAT(coupling_peak(k, d), WithinRel(peak, 1e-14));
    CHECK_THAT(coupling_peak(k, d), WithinRel(8.1e8, 0.02));
    CHECK_THAT(coupling_profile(0.0, k, d), WithinRel(peak, 1e-14));
    for (double t : {1e-12, 5e-11}) {
        CHECK_THAT(coupling_profile(t, k, d), WithinRel(coupling_profile(-t, k, d), 1e-12));
        CHECK(coupling_profile(t, k, d) < peak);
    }

    const KinkSpec offset{0.02, -3.0, +1};
    const double t_peak = 3.0 / (0.02 * d.omega_p.rad_per_s);
    CHECK_THAT(coupling_profile(t_peak, offset, d), WithinRel(coupling_peak(offset, d), 1e-12));

    const KinkSpec rest{0.0, 0.0, +1};
    CHECK(coupling_profile(1e-12, rest, d) == 0.0);

    const KinkSpec fast{0.1, 0.0, +1};
    CHECK_THAT(coupling_peak(fast, d), WithinRel(8.1e9, 0.02));
    CHECK(coupling_peak(fast, d) < d.omega_q.rad_per_s);
}
