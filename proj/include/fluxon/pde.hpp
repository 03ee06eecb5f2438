#pragma once

#include "fluxon/kink.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fluxon::pde {

/// Treatment of the two end nodes.
struct Boundary {
    enum class Kind { Fixed, Open };

    Kind kind = Kind::Open;
    double left = 0.0;   ///< held phase at the first node (Fixed only)
    double right = 0.0;  ///< held phase at the last node (Fixed only)

    static Boundary fixed(double left, double right) { return {Kind::Fixed, left, right}; }
    static Boundary open() { return {Kind::Open, 0.0, 0.0}; }
};

/// Uniform mesh on [xi_min, xi_min + (n_points - 1) dxi].
struct Grid {
    int n_points = 0;
    double dxi = 0.0;
    double xi_min = 0.0;
    std::optional<int> coupling_index;
    Boundary boundary;

    /// Mesh covering [lo, hi] with spacing close to dxi (rounded so hi is a node).
    static Grid span(double lo, double hi, double dxi, Boundary boundary);

    double length() const { return (n_points - 1) * dxi; }
    double xi(std::size_t i) const { return xi_min + static_cast<double>(i) * dxi; }
    double xi_max() const { return xi(static_cast<std::size_t>(n_points - 1)); }
    int nearest_index(double xi) const;

    /// Throws DomainError on n_points < 16, dxi <= 0 or a coupling node on the boundary.
    void validate() const;
};

/// Phase field and its time derivative on the grid nodes at time tau.
struct FieldState {
    std::vector<double> phi;
    std::vector<double> phi_dot;
    double tau = 0.0;
};

/// Piecewise-constant function of xi: `base` left of the first breakpoint,
/// then each breakpoint's value from its xi onward.
struct PiecewiseConstant {
    struct Breakpoint {
        double xi;
        double value;
    };

    double base = 0.0;
    std::vector<Breakpoint> steps;  ///< sorted by xi

    static PiecewiseConstant constant(double v) { return {v, {}}; }
    double at(double xi) const;
};

/// Bias current gamma(xi) and damping alpha(xi).
struct BiasProfile {
    PiecewiseConstant gamma;
    PiecewiseConstant alpha;

    static BiasProfile uniform(double gamma, double alpha) {
        return {PiecewiseConstant::constant(gamma), PiecewiseConstant::constant(alpha)};
    }
    /// Throws DomainError unless |gamma| < 1 and alpha >= 0 everywhere.
    void validate() const;
};

/// eta delta(xi - xi_node) d^2 phi / d tau^2, discretised as eta/dxi on one node.
struct CouplingTerm {
    double eta = 0.0;
    int node = 0;
};

/// Blow-up detector threshold on |d phi / d tau|.
inline constexpr double kBlowUpRate = 1.0e3;

/// Samples the exact kink and its tau-derivative. The centroid must sit at least
/// 5 units inside the domain. Fixed boundaries are written into the end nodes.
FieldState init_kink(const Grid& grid, const KinkSpec& k);

/// Kick-drift-kick integrator for
///   m_i phi_tt = phi_xixi - sin phi + gamma - alpha phi_t,
/// with m = 1 - eta/dxi at the coupling node and 1 elsewhere. Damping is taken
/// implicitly in the closing half-kick. Keeps the force of the current state cached,
/// so repeated calls cost one force evaluation per step.
class Stepper {
public:
    Stepper(const Grid& grid, const BiasProfile& bias, std::optional<CouplingTerm> coupling, double dtau);

    /// Advances `state` in place by one step. Throws StabilityError on blow-up.
    void advance(FieldState& state);

    double dtau() const { return dtau_; }
    const Grid& grid() const { return grid_; }

private:
    void compute_force(std::span<const double> phi, std::span<double> force) const;
    void apply_boundary(FieldState& state) const;

    Grid grid_;
    double dtau_;
    double inv_dx2_;
    std::vector<double> gamma_;
    std::vector<double> alpha_;
    std::vector<double> inv_mass_;
    std::vector<double> force_;
    const double* cached_for_ = nullptr;
    double cached_tau_ = 0.0;
    bool cache_valid_ = false;
    double origin_tau_ = 0.0;
    long long steps_ = 0;
};

/// One step of the integrator above; see Stepper for the scheme.
/// Requires dtau <= 0.5 dxi (StabilityError otherwise).
FieldState step(const FieldState& state, const Grid& grid, const BiasProfile& bias,
                std::optional<CouplingTerm> coupling, double dtau);

struct RunOptions {
    double dtau = 0.01;
    double tau_end = 0.0;
    std::vector<double> snapshot_times;
    int record_every = 1;                 ///< centroid sampling stride, in steps
    std::vector<int> probe_nodes;         ///< nodes whose voltage is logged every step
    std::optional<double> stop_beyond_xi; ///< end early once the centroid passes this
};

struct Snapshot {
    double tau = 0.0;
    std::vector<double> voltage;  ///< -d phi / d tau per node
    int winding = 0;
    std::optional<double> centroid;
    double width = 0.0;  ///< kink_width of the state
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::vector<double> record_tau;
    std::vector<double> record_centroid;  ///< NaN where no kink could be located
    std::vector<int> record_winding;
    std::vector<std::vector<double>> probe_voltage;
    FieldState final_state;
};

Trajectory run(const FieldState& initial, const Grid& grid, const BiasProfile& bias,
               std::optional<CouplingTerm> coupling, const RunOptions& options);

/// Position where phi crosses pi, linearly interpolated. Throws NoKinkError when
/// there is no crossing or the crossings spread over more than 2 units.
double centroid(const FieldState& state, const Grid& grid);

/// First time the centroid record passes xi_probe, linearly interpolated.
double arrival_time(const Trajectory& trajectory, double xi_probe);

/// round((phi_last - phi_first) / 2 pi).
int winding_number(const FieldState& state);

/// Trapezoid-rule value of  int [ phi_t^2/2 + phi_xi^2/2 + 1 - cos phi ] dxi.
double energy(const FieldState& state, const Grid& grid);

/// Full width at half maximum of |voltage| around its peak, linearly interpolated.
double pulse_fwhm(std::span<const double> voltage, const Grid& grid);

/// FWHM of the phase gradient. For a rigidly moving kink the voltage pulse is
/// u phi_xi, so this is the pulse width, unaffected by small-amplitude radiation.
double kink_width(const FieldState& state, const Grid& grid);

/// Open-boundary line [-half_width, half_width] with the coupling node at xi = 0.
struct DelaySetup {
    double u0 = 0.01;
    double alpha = 0.0;
    double half_width = 20.0;
    double dxi = 0.025;
    double dtau = 0.01;
    double launch = -10.0;
    double probe = 10.0;
};

/// Time at which a kink launched at `launch` passes `probe` after crossing a
/// coupling node of strength eta. Throws NoCrossingError if it never arrives.
double coupled_arrival_time(const DelaySetup& setup, double eta);

}  // namespace fluxon::pde
