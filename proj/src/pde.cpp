#include "fluxon/pde.hpp"

#include "fluxon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fluxon::pde {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinKinkMargin = 5.0;
constexpr double kMaxCrossingSpread = 2.0;

}  // namespace

Grid Grid::span(double lo, double hi, double dxi, Boundary boundary) {
    if (!(hi > lo) || !(dxi > 0.0)) throw DomainError("grid span needs hi > lo and dxi > 0");
    const auto cells = static_cast<int>(std::llround((hi - lo) / dxi));
    Grid g;
    g.n_points = cells + 1;
    g.dxi = (hi - lo) / cells;
    g.xi_min = lo;
    g.boundary = boundary;
    return g;
}

int Grid::nearest_index(double x) const {
    const auto i = std::llround((x - xi_min) / dxi);
    return static_cast<int>(std::clamp<long long>(i, 0, n_points - 1));
}

void Grid::validate() const {
    if (n_points < 16) throw DomainError("grid needs at least 16 points");
    if (!(dxi > 0.0) || !std::isfinite(dxi)) throw DomainError("grid spacing must be positive");
    if (coupling_index && (*coupling_index <= 0 || *coupling_index >= n_points - 1)) {
        throw DomainError("coupling node must be an interior node");
    }
}

double PiecewiseConstant::at(double x) const {
    double v = base;
    for (const auto& s : steps) {
        if (x >= s.xi) v = s.value;
        else break;
    }
    return v;
}

void BiasProfile::validate() const {
    auto check = [](const PiecewiseConstant& f, auto&& ok, const char* what) {
        if (!ok(f.base)) throw DomainError(what);
        for (std::size_t i = 0; i < f.steps.size(); ++i) {
            if (!ok(f.steps[i].value)) throw DomainError(what);
            if (i > 0 && f.steps[i].xi < f.steps[i - 1].xi) throw DomainError("breakpoints must be sorted");
        }
    };
    check(gamma, [](double g) { return std::abs(g) < 1.0; }, "bias must satisfy |gamma| < 1");
    check(alpha, [](double a) { return a >= 0.0 && std::isfinite(a); }, "damping must satisfy alpha >= 0");
}

FieldState init_kink(const Grid& grid, const KinkSpec& k) {
    grid.validate();
    k.validate();
    if (k.xi0 - grid.xi_min < kMinKinkMargin || grid.xi_max() - k.xi0 < kMinKinkMargin) {
        throw DomainError("kink centroid must lie at least 5 units from both boundaries");
    }
    FieldState s;
    const auto n = static_cast<std::size_t>(grid.n_points);
    s.phi.resize(n);
    s.phi_dot.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.phi[i] = kink_phase(grid.xi(i), 0.0, k);
        s.phi_dot[i] = kink_phase_rate(grid.xi(i), 0.0, k);
    }
    if (grid.boundary.kind == Boundary::Kind::Fixed) {
        s.phi.front() = grid.boundary.left;
        s.phi.back() = grid.boundary.right;
        s.phi_dot.front() = 0.0;
        s.phi_dot.back() = 0.0;
    }
    return s;
}

Stepper::Stepper(const Grid& grid, const BiasProfile& bias, std::optional<CouplingTerm> coupling, double dtau)
    : grid_(grid), dtau_(dtau) {
    grid_.validate();
    bias.validate();
    if (!(dtau > 0.0)) throw DomainError("time step must be positive");
    if (dtau > 0.5 * grid_.dxi) throw StabilityError("time step violates dtau <= 0.5 dxi");

    const auto n = static_cast<std::size_t>(grid_.n_points);
    inv_dx2_ = 1.0 / (grid_.dxi * grid_.dxi);
    gamma_.resize(n);
    alpha_.resize(n);
    inv_mass_.assign(n, 1.0);
    force_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        gamma_[i] = bias.gamma.at(grid_.xi(i));
        alpha_[i] = bias.alpha.at(grid_.xi(i));
    }
    if (coupling && coupling->eta != 0.0) {
        if (coupling->node <= 0 || coupling->node >= grid_.n_points - 1) {
            throw DomainError("coupling node must be an interior node");
        }
        const double mass = 1.0 - coupling->eta / grid_.dxi;
        if (!(mass > 0.0)) throw DomainError("coupling too strong for this grid: need |eta| < dxi");
        inv_mass_[static_cast<std::size_t>(coupling->node)] = 1.0 / mass;
    }
}

void Stepper::compute_force(std::span<const double> phi, std::span<double> force) const {
    const std::size_t n = phi.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        force[i] = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) * inv_dx2_ - std::sin(phi[i]) + gamma_[i];
    }
    if (grid_.boundary.kind == Boundary::Kind::Open) {
        // Mirror ghost node: phi_{-1} = phi_{1}.
        force[0] = 2.0 * (phi[1] - phi[0]) * inv_dx2_ - std::sin(phi[0]) + gamma_[0];
        force[n - 1] = 2.0 * (phi[n - 2] - phi[n - 1]) * inv_dx2_ - std::sin(phi[n - 1]) + gamma_[n - 1];
    } else {
        force[0] = 0.0;
        force[n - 1] = 0.0;
    }
}

void Stepper::apply_boundary(FieldState& s) const {
    if (grid_.boundary.kind != Boundary::Kind::Fixed) return;
    s.phi.front() = grid_.boundary.left;
    s.phi.back() = grid_.boundary.right;
    s.phi_dot.front() = 0.0;
    s.phi_dot.back() = 0.0;
}

void Stepper::advance(FieldState& s) {
    const auto n = static_cast<std::size_t>(grid_.n_points);
    if (s.phi.size() != n || s.phi_dot.size() != n) throw DomainError("state does not match grid");

    if (!cache_valid_ || cached_for_ != s.phi.data() || cached_tau_ != s.tau) {
        compute_force(s.phi, force_);
        origin_tau_ = s.tau;
        steps_ = 0;
    }

    const double h = dtau_;
    const double half = 0.5 * h;
    const bool fixed = grid_.boundary.kind == Boundary::Kind::Fixed;
    const std::size_t lo = fixed ? 1 : 0;
    const std::size_t hi = fixed ? n - 1 : n;

    double* phi = s.phi.data();
    double* v = s.phi_dot.data();
    for (std::size_t i = lo; i < hi; ++i) {
        v[i] += half * (force_[i] - alpha_[i] * v[i]) * inv_mass_[i];
        phi[i] += h * v[i];
    }

    compute_force(s.phi, force_);

    double peak = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        const double k = half * alpha_[i] * inv_mass_[i];
        v[i] = (v[i] + half * force_[i] * inv_mass_[i]) / (1.0 + k);
        peak = std::max(peak, std::abs(v[i]));
    }
    if (!(peak <= kBlowUpRate)) {
        throw StabilityError("|d phi/d tau| exceeded " + std::to_string(kBlowUpRate) + " at tau = " +
                             std::to_string(s.tau + h));
    }

    apply_boundary(s);
    // tau = origin + k h
    ++steps_;
    s.tau = origin_tau_ + static_cast<double>(steps_) * h;
    cached_for_ = s.phi.data();
    cached_tau_ = s.tau;
    cache_valid_ = true;
}

FieldState step(const FieldState& state, const Grid& grid, const BiasProfile& bias,
                std::optional<CouplingTerm> coupling, double dtau) {
    Stepper stepper(grid, bias, coupling, dtau);
    FieldState next = state;
    stepper.advance(next);
    return next;
}

namespace {

std::optional<double> try_centroid(const FieldState& s, const Grid& grid) {
    const double level = std::numbers::pi;
    std::optional<double> first;
    double last = 0.0;
    for (std::size_t i = 0; i + 1 < s.phi.size(); ++i) {
        const double a = s.phi[i] - level;
        const double b = s.phi[i + 1] - level;
        if (a == 0.0 && b == 0.0) continue;
        if ((a <= 0.0 && b > 0.0) || (a >= 0.0 && b < 0.0)) {
            const double x = grid.xi(i) + grid.dxi * a / (a - b);
            if (!first) first = x;
            last = x;
        }
    }
    if (!first || last - *first > kMaxCrossingSpread) return std::nullopt;
    return first;
}

}  // namespace

double centroid(const FieldState& state, const Grid& grid) {
    if (winding_number(state) == 0) throw NoKinkError("field carries no net winding");
    auto c = try_centroid(state, grid);
    if (!c) throw NoKinkError("no unique pi crossing in the phase field");
    return *c;
}

Trajectory run(const FieldState& initial, const Grid& grid, const BiasProfile& bias,
               std::optional<CouplingTerm> coupling, const RunOptions& opt) {
    if (!(opt.tau_end >= 0.0)) throw DomainError("tau_end must be non-negative");
    if (opt.record_every < 1) throw DomainError("record_every must be >= 1");
    Stepper stepper(grid, bias, coupling, opt.dtau);

    const auto n_steps = std::llround(opt.tau_end / opt.dtau);
    std::vector<long long> snap_steps;
    for (double t : opt.snapshot_times) {
        if (t < 0.0 || t > opt.tau_end + 0.5 * opt.dtau) throw DomainError("snapshot time outside the run");
        snap_steps.push_back(std::llround(t / opt.dtau));
    }
    std::sort(snap_steps.begin(), snap_steps.end());
    snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

    for (int node : opt.probe_nodes) {
        if (node < 0 || node >= grid.n_points) throw DomainError("probe node outside the grid");
    }

    Trajectory traj;
    traj.probe_voltage.resize(opt.probe_nodes.size());
    FieldState s = initial;
    std::size_t next_snap = 0;

    auto record = [&](long long k) {
        const auto c = try_centroid(s, grid);
        if (k % opt.record_every == 0) {
            traj.record_tau.push_back(s.tau);
            traj.record_centroid.push_back(c.value_or(std::numeric_limits<double>::quiet_NaN()));
            traj.record_winding.push_back(winding_number(s));
        }
        for (std::size_t p = 0; p < opt.probe_nodes.size(); ++p) {
            traj.probe_voltage[p].push_back(-s.phi_dot[static_cast<std::size_t>(opt.probe_nodes[p])]);
        }
        while (next_snap < snap_steps.size() && snap_steps[next_snap] == k) {
            Snapshot snap;
            snap.tau = s.tau;
            snap.voltage.resize(s.phi_dot.size());
            std::transform(s.phi_dot.begin(), s.phi_dot.end(), snap.voltage.begin(), [](double v) { return -v; });
            snap.winding = winding_number(s);
            snap.centroid = c;
            snap.width = kink_width(s, grid);
            traj.snapshots.push_back(std::move(snap));
            ++next_snap;
        }
        return c;
    };

    record(0);
    for (long long k = 1; k <= n_steps; ++k) {
        stepper.advance(s);
        const auto c = record(k);
        if (opt.stop_beyond_xi && c && *c > *opt.stop_beyond_xi) {
            if (k % opt.record_every != 0) {
                traj.record_tau.push_back(s.tau);
                traj.record_centroid.push_back(*c);
                traj.record_winding.push_back(winding_number(s));
            }
            break;
        }
    }
    traj.final_state = std::move(s);
    return traj;
}

double arrival_time(const Trajectory& t, double xi_probe) {
    const auto& x = t.record_centroid;
    const auto& tau = t.record_tau;
    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::isnan(x[i])) continue;
        if (prev) {
            const double a = x[*prev];
            const double b = x[i];
            if (a < xi_probe && b >= xi_probe) {
                const double w = (xi_probe - a) / (b - a);
                return tau[*prev] + w * (tau[i] - tau[*prev]);
            }
        } else if (x[i] >= xi_probe) {
            throw NoCrossingError("probe lies behind the initial centroid");
        }
        prev = i;
    }
    throw NoCrossingError("centroid never reached the probe");
}

int winding_number(const FieldState& s) {
    if (s.phi.empty()) return 0;
    return static_cast<int>(std::lround((s.phi.back() - s.phi.front()) / kTwoPi));
}

double energy(const FieldState& s, const Grid& grid) {
    const std::size_t n = s.phi.size();
    if (n < 2) return 0.0;
    const double dx = grid.dxi;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        total += w * (0.5 * s.phi_dot[i] * s.phi_dot[i] + (1.0 - std::cos(s.phi[i])));
    }
    double grad = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = (s.phi[i + 1] - s.phi[i]) / dx;
        grad += 0.5 * d * d;
    }
    return (total + grad) * dx;
}

double pulse_fwhm(std::span<const double> v, const Grid& grid) {
    if (v.empty()) return 0.0;
    std::size_t ipk = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[ipk])) ipk = i;
    }
    const double half = 0.5 * std::abs(v[ipk]);
    if (half == 0.0) return 0.0;

    double left = grid.xi(0);
    for (std::size_t i = ipk; i > 0; --i) {
        const double a = std::abs(v[i - 1]);
        if (a < half) {
            const double b = std::abs(v[i]);
            left = grid.xi(i - 1) + grid.dxi * (half - a) / (b - a);
            break;
        }
    }
    double right = grid.xi(v.size() - 1);
    for (std::size_t i = ipk; i + 1 < v.size(); ++i) {
        const double b = std::abs(v[i + 1]);
        if (b < half) {
            const double a = std::abs(v[i]);
            right = grid.xi(i) + grid.dxi * (a - half) / (a - b);
            break;
        }
    }
    return right - left;
}

double kink_width(const FieldState& s, const Grid& grid) {
    const std::size_t n = s.phi.size();
    if (n < 3) return 0.0;
    std::vector<double> grad(n);
    grad[0] = (s.phi[1] - s.phi[0]) / grid.dxi;
    grad[n - 1] = (s.phi[n - 1] - s.phi[n - 2]) / grid.dxi;
    for (std::size_t i = 1; i + 1 < n; ++i) grad[i] = (s.phi[i + 1] - s.phi[i - 1]) / (2.0 * grid.dxi);
    return pulse_fwhm(grad, grid);
}

double coupled_arrival_time(const DelaySetup& setup, double eta) {
    Grid grid = Grid::span(-setup.half_width, setup.half_width, setup.dxi, Boundary::open());
    grid.coupling_index = grid.nearest_index(0.0);
    const FieldState initial = init_kink(grid, KinkSpec{setup.u0, setup.launch, +1});
    RunOptions opt;
    opt.dtau = setup.dtau;
    opt.tau_end = 3.0 * (setup.probe - setup.launch) / setup.u0;
    opt.stop_beyond_xi = setup.probe + 0.5;
    const Trajectory t = run(initial, grid, BiasProfile::uniform(0.0, setup.alpha),
                             CouplingTerm{eta, *grid.coupling_index}, opt);
    return arrival_time(t, setup.probe);
}

}  // namespace fluxon::pde
