#pragma once

#include <numbers>

namespace fluxon::constants {

// CODATA 2018 exact SI values.
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);

/// Reduced flux quantum hbar / 2e, about 3.29106e-16 Wb.
inline constexpr double reduced_flux_quantum = hbar / (2.0 * elementary_charge);

/// Resistance quantum h / (2e)^2.
inline constexpr double resistance_quantum = planck / (4.0 * elementary_charge * elementary_charge);

/// Time resolution of an SFQ time-to-digital converter (s).
inline constexpr double detector_resolution = 5.0e-12;

}  // namespace fluxon::constants
