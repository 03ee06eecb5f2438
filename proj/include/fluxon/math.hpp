#pragma once

#include <cmath>

namespace fluxon::math {

/// sech(x) evaluated without forming cosh, so it underflows to 0 instead of overflowing.
inline double sech(double x) {
    const double e = std::exp(-std::abs(x));
    return 2.0 * e / (1.0 + e * e);
}

/// sech^3(x) sinh(x), regrouped as tanh(x) sech^2(x).
inline double sech3_sinh(double x) {
    const double s = sech(x);
    return std::tanh(x) * s * s;
}

}  // namespace fluxon::math
