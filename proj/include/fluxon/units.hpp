#pragma once

#include <numbers>

namespace fluxon {

/// Angular frequency in rad/s. Cyclic values (Hz) only enter through from_hz/hz.
struct AngularFrequency {
    double rad_per_s = 0.0;

    static constexpr AngularFrequency from_hz(double hz) { return {2.0 * std::numbers::pi * hz}; }
    constexpr double hz() const { return rad_per_s / (2.0 * std::numbers::pi); }

    friend constexpr auto operator<=>(const AngularFrequency&, const AngularFrequency&) = default;
};

}  // namespace fluxon
