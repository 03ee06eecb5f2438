#include "catch_amalgamated.hpp"

#include "fluxon/errors.hpp"
#include "fluxon/kgtl.hpp"
#include "fluxon/params.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace fluxon;
using namespace fluxon::kgtl;
using namespace std::complex_literals;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const DerivedParams& reference_derived() {
    static const DerivedParams d = derive(CircuitParams::reference());
    return d;
}

DecaySpec spec_with(double alpha, double full_length = 1e-3) {
    auto s = DecaySpec::from(reference_derived());
    s.alpha = alpha;
    s.half_length = 0.5 * full_length;
    return s;
}

const AngularFrequency kNominalQubit = AngularFrequency::from_hz(3.7e9);

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

TEST_CASE("impedance meets its termination at x = 0", "[kgtl][impedance]") {
    auto s = spec_with(1e-5);
    s.L_in = 1e-9;
    const Impedance z = impedance(0.0, kNominalQubit, s);
    CHECK(z.real() == s.R_in);
    CHECK_THAT(z.imag(), WithinRel(kNominalQubit.rad_per_s * 1e-9, 1e-14));
}

TEST_CASE("impedance solves the Riccati equation", "[kgtl][impedance][property]") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    std::uniform_real_distribution<double> pos(0.0, 5.0);
    std::uniform_real_distribution<double> log_alpha(-7.0, -2.0);
    const auto& d = reference_derived();
    for (int i = 0; i < 20; ++i) {
        auto s = spec_with(std::pow(10.0, log_alpha(rng)));
        const AngularFrequency w{frac(rng) * d.omega_p.rad_per_s};
        const double x = (0.01 + pos(rng)) * d.lambda_J;
        const double h = 1e-4 * d.lambda_J;
        const Impedance dz = (impedance(x + h, w, s) - impedance(x - h, w, s)) / (2.0 * h);
        const Impedance z = impedance(x, w, s);
        const Impedance iwl = 1i * w.rad_per_s * d.circuit.ell;
        const Impedance residual = dz + shunt_admittance(w, s) * z * z - iwl;
        CHECK(std::abs(residual) < 1e-6 * std::abs(iwl));
    }
}

TEST_CASE("deep in a lossless line the impedance is i Z~", "[kgtl][impedance]") {
    const auto& d = reference_derived();
    const auto s = spec_with(0.0);
    const Impedance z = impedance(0.5e-3, d.omega_q, s);
    const double zt = effective_impedance(d.omega_q, d);
    CHECK_THAT(z.imag(), WithinRel(zt, 1e-12));
    CHECK(std::abs(z.real()) < 1e-30);
    CHECK_THAT(zt, WithinRel(0.50, 0.03));
}

TEST_CASE("impedance never forms a growing exponential", "[kgtl][impedance]") {
    const auto s = spec_with(1e-5);
    const Impedance z = impedance(1.0, kNominalQubit, s);
    CHECK(std::isfinite(z.real()));
    CHECK(std::isfinite(z.imag()));
}

TEST_CASE("impedance is passive", "[kgtl][property]") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> frac(0.01, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& d = reference_derived();
    for (int i = 0; i < 500; ++i) {
        auto s = spec_with(unit(rng) < 0.2 ? 0.0 : std::pow(10.0, -8.0 + 7.0 * unit(rng)));
        s.R_in = 200.0 * unit(rng);
        s.L_in = unit(rng) < 0.5 ? 0.0 : 1e-9 * unit(rng);
        const double f = frac(rng);
        if (std::abs(f - 1.0) < 1e-6) continue;
        const AngularFrequency w{f * d.omega_p.rad_per_s};
        const double x = 20.0 * d.lambda_J * unit(rng);
        CHECK(impedance(x, w, s).real() >= -1e-12 * std::abs(impedance(x, w, s)));
    }
}

TEST_CASE("gap edge and invalid inputs", "[kgtl][errors]") {
    const auto& d = reference_derived();
    const auto s = spec_with(1e-5);
    CHECK_THROWS_AS(impedance(1e-4, d.omega_p, s), SingularityError);
    CHECK_THROWS_AS(impedance(1e-4, AngularFrequency{0.0}, s), DomainError);
    CHECK_THROWS_AS(impedance(-1e-4, kNominalQubit, s), DomainError);
    CHECK_THROWS_AS(decay_rate(AngularFrequency{1.1 * d.omega_p.rad_per_s}, s), DomainError);
    CHECK_THROWS_AS(decay_rate_underdamped_approx(kNominalQubit, spec_with(0.1)), RegimeError);
    CHECK_THROWS_AS(decay_rate_dissipationless_approx(kNominalQubit, spec_with(1e-5)), DomainError);
    auto low = spec_with(0.0);
    low.R_in = 1.0;
    CHECK_THROWS_AS(decay_rate_dissipationless_approx(kNominalQubit, low), RegimeError);
}

TEST_CASE("decay rate of the reference circuit", "[kgtl][decay]") {
    // Reference values evaluated at 40 significant digits.
    CHECK_THAT(decay_rate(kNominalQubit, spec_with(1e-5)), WithinRel(0.089951474521197021, 1e-9));
    CHECK_THAT(decay_rate(reference_derived().omega_q, spec_with(1e-5)), WithinRel(0.092888564300341606, 1e-9));
    CHECK_THAT(decay_rate_underdamped_approx(kNominalQubit, spec_with(1e-5)),
               WithinRel(0.089546365681447212, 1e-12));
    CHECK_THAT(decay_rate(kNominalQubit, spec_with(1e-5)), WithinRel(0.087, 0.05));
    CHECK_THAT(decay_rate_underdamped_approx(kNominalQubit, spec_with(1e-5)), WithinRel(0.087, 0.05));
}

TEST_CASE("lossless decay is exponentially suppressed", "[kgtl][decay]") {
    const double exact = decay_rate(kNominalQubit, spec_with(0.0));
    CHECK(exact < 1e-30);
    CHECK(exact > 0.0);
    CHECK_THAT(exact, WithinRel(1.6352958241770804e-32, 1e-6));
    CHECK_THAT(decay_rate_dissipationless_approx(kNominalQubit, spec_with(0.0)),
               WithinRel(1.3702849979494469e-32, 1e-12));
}

TEST_CASE("decay rate is linear in alpha", "[kgtl][decay]") {
    std::vector<double> la;
    std::vector<double> lr;
    for (double e = -6.0; e <= -3.0 + 1e-9; e += 0.25) {
        la.push_back(e * std::log(10.0));
        lr.push_back(std::log(decay_rate(kNominalQubit, spec_with(std::pow(10.0, e)))));
    }
    CHECK_THAT(slope(la, lr), WithinAbs(1.0, 0.02));
    CHECK_THAT(decay_rate_underdamped_approx(kNominalQubit, spec_with(1e-3)),
               WithinRel(100.0 * decay_rate_underdamped_approx(kNominalQubit, spec_with(1e-5)), 1e-12));
    CHECK_THAT(decay_rate_underdamped_approx(kNominalQubit, spec_with(1e-3)), WithinRel(8.7, 0.05));
}

TEST_CASE("underdamped approximation tracks the exact rate", "[kgtl][decay]") {
    for (double alpha : {1e-6, 1e-5, 1e-4}) {
        for (AngularFrequency w : {kNominalQubit, reference_derived().omega_q}) {
            const auto s = spec_with(alpha);
            CHECK_THAT(decay_rate_underdamped_approx(w, s), WithinRel(decay_rate(w, s), 0.1));
        }
    }
}

TEST_CASE("lossless rate decays as exp(-l / lambda_J)", "[kgtl][decay]") {
    const auto& d = reference_derived();
    std::vector<double> len;
    std::vector<double> log_exact;
    std::vector<double> log_approx;
    for (double n = 20.0; n <= 90.0; n += 5.0) {
        const double l = n * d.lambda_J;
        len.push_back(l);
        log_exact.push_back(std::log(decay_rate(kNominalQubit, spec_with(0.0, l))));
        log_approx.push_back(std::log(decay_rate_dissipationless_approx(kNominalQubit, spec_with(0.0, l))));
    }
    CHECK_THAT(slope(len, log_approx), WithinRel(-1.0 / d.lambda_J, 1e-12));
    CHECK_THAT(slope(len, log_exact), WithinRel(-1.0 / d.lambda_J, 0.01));
}

TEST_CASE("lossless approximation against the exact rate", "[kgtl][decay]") {
    const auto& d = reference_derived();
    const double wr = kNominalQubit.rad_per_s / d.omega_p.rad_per_s;
    const double k_exact = std::sqrt(1.0 - wr * wr) / d.lambda_J;
    for (double n = 20.0; n <= 90.0; n += 2.5) {
        const double l = n * d.lambda_J;
        const double exact = decay_rate(kNominalQubit, spec_with(0.0, l));
        const double approx = decay_rate_dissipationless_approx(kNominalQubit, spec_with(0.0, l));
        // The closed form uses 1/lambda_J for the decay constant; the exact one is k_exact.
        CHECK_THAT(exact / approx, WithinRel(std::exp((1.0 / d.lambda_J - k_exact) * l), 0.01));
        if (n <= 80.0) CHECK_THAT(approx, WithinRel(exact, 0.2));
    }
}

TEST_CASE("decay rate rises towards the gap", "[kgtl][decay]") {
    const auto& d = reference_derived();
    const auto s = spec_with(1e-5);
    double prev = 0.0;
    for (double f = 0.1; f <= 0.9 + 1e-12; f += 0.02) {
        const double r = decay_rate(AngularFrequency{f * d.omega_p.rad_per_s}, s);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("Klein-Gordon dispersion", "[kgtl][dispersion]") {
    const auto& d = reference_derived();
    CHECK(dispersion(0.0, d).rad_per_s == d.omega_p.rad_per_s);
    const double k = 1e12 / d.lambda_J;
    CHECK_THAT(dispersion(k, d).rad_per_s / k, WithinRel(d.c_bar, 1e-12));
    CHECK_FALSE(wavenumber(d.omega_q, d).has_value());
    const double k2 = 3.0 / d.lambda_J;
    CHECK_THAT(*wavenumber(dispersion(k2, d), d), WithinRel(k2, 1e-12));
}
