#pragma once
// Radian helpers shared across the toolkit.

#include <cmath>
#include <numbers>

namespace geomphase {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Map a radian value to the principal interval (-pi, pi].
inline double wrap_principal(double x) {
    double r = std::remainder(x, kTwoPi);
    if (r <= -std::numbers::pi) r = std::numbers::pi;
    return r;
}

// Map a radian value to [0, 2pi).
inline double wrap_two_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

}  // namespace geomphase
