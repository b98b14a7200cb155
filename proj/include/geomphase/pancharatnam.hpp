#pragma once
// Relative phase between nonorthogonal states (arg of the overlap), the total
// phase picked up around the second loop, and its split into dynamical and
// geometric parts. The continuous total-phase branch follows the loop phase
// difference smoothly instead of jumping at the principal-branch cut.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "errors.hpp"
#include "qstate.hpp"

namespace geomphase {

// Overlap magnitudes at or below this (relative) scale give no usable phase.
inline constexpr double kOrthogonalityEps = 1e-12;

// arg<a|b> in (-pi, pi]. Throws UndefinedPhase when the states are orthogonal
// to within kOrthogonalityEps relative to their norms.
inline double pancharatnam_phase(const TwoLevelState& a, const TwoLevelState& b) {
    const double scale = a.norm() * b.norm();
    if (scale == 0.0) throw InvalidState("pancharatnam: zero-norm state");
    const complexd ov = inner(a, b);
    if (std::abs(ov) <= kOrthogonalityEps * scale)
        throw UndefinedPhase("pancharatnam: orthogonal states carry no relative phase");
    return wrap_principal(std::arg(ov));
}

// Total phase of the recombined beam relative to the reference beam, on the
// branch that is continuous in dphi = phi2 - phi1. Closed form:
//   (phi1 + phi2)/2 + atan2(-(1 - sqrt(T)) sin(d0/2), (1 + sqrt(T)) cos(d0/2))
// with dphi reduced by whole 4*pi turns so d0 lands in [-2*pi, 2*pi]; each
// removed turn contributes 2*pi. Equals arg(e^{i phi1} + sqrt(T) e^{i phi2})
// mod 2*pi wherever that arg is defined.
inline double total_phase_closed_form(double T, double phi1, double phi2) {
    if (!(T >= 0.0 && T <= 1.0))
        throw InvalidConfig("pancharatnam: transmission T outside [0, 1]");
    if (!std::isfinite(phi1) || !std::isfinite(phi2))
        throw InvalidConfig("pancharatnam: phase settings must be finite");
    const double r = std::sqrt(T);
    const double dphi = phi2 - phi1;
    const double turns = std::round(dphi / (2.0 * kTwoPi));
    const double d0 = dphi - turns * (2.0 * kTwoPi);
    const double re = (1.0 + r) * std::cos(0.5 * d0);
    const double im = -(1.0 - r) * std::sin(0.5 * d0);
    if (std::hypot(re, im) <= kOrthogonalityEps * (1.0 + r))
        throw UndefinedPhase("pancharatnam: beams are orthogonal at this setting");
    return 0.5 * (phi1 + phi2) + std::atan2(im, re) - turns * kTwoPi;
}

// Same phase wrapped onto (-pi, pi].
inline double total_phase_principal(double T, double phi1, double phi2) {
    return wrap_principal(total_phase_closed_form(T, phi1, phi2));
}

// Intensity-weighted average of the accumulated path phases,
//   (phi1 + T*phi2) / (1 + T).
inline double dynamical_phase(double T, double phi1, double phi2) {
    if (!(T >= 0.0 && T <= 1.0))
        throw InvalidConfig("pancharatnam: transmission T outside [0, 1]");
    if (!std::isfinite(phi1) || !std::isfinite(phi2))
        throw InvalidConfig("pancharatnam: phase settings must be finite");
    return (phi1 + T * phi2) / (1.0 + T);
}

// Phase-shifter pair with difference dphi and zero dynamical phase. The
// cancellation phi1 + T*phi2 = 0 is exact in floating point: phi1 is the
// negated product itself.
inline std::pair<double, double> zero_dynamical_split(double dphi, double T) {
    if (!(T >= 0.0 && T <= 1.0))
        throw InvalidConfig("pancharatnam: transmission T outside [0, 1]");
    if (!std::isfinite(dphi)) throw InvalidConfig("pancharatnam: dphi must be finite");
    const double phi2 = dphi / (1.0 + T);
    const double phi1 = -(T * phi2);
    return {phi1, phi2};
}

// Geometric phase at loop separation dphi, obtained interferometrically:
// total phase at the zero-dynamical setting. T = 0 removes the lower path
// entirely and the loop encloses nothing.
inline double geometric_phase_interferometric(double T, double dphi) {
    if (T == 0.0) {
        if (!std::isfinite(dphi)) throw InvalidConfig("pancharatnam: dphi must be finite");
        return 0.0;
    }
    const auto [phi1, phi2] = zero_dynamical_split(dphi, T);
    return total_phase_closed_form(T, phi1, phi2);
}

struct PhaseDecomposition {
    double total;
    double dynamical;
    double geometric;
};

// total == dynamical + geometric holds exactly: total is rebuilt from the
// parts after the subtraction.
inline PhaseDecomposition make_decomposition(double total_raw, double dynamical) {
    const double geometric = total_raw - dynamical;
    return {dynamical + geometric, dynamical, geometric};
}

struct SkippedPoint {
    std::size_t index;
    double delta_phi;
    std::vector<std::string> reasons;
};

struct SweepResult {
    double T;
    std::vector<double> delta_phi;
    std::vector<std::optional<PhaseDecomposition>> decompositions;
    std::vector<std::optional<double>> geometric_oracle;  // filled by attach_geometric_oracle
    double max_deviation = 0.0;
    std::vector<SkippedPoint> skipped;
};

// Sweep dphi over n evenly spaced points spanning [0, 2*pi] inclusive, at the
// zero-dynamical phase-shifter setting. Points where the recombined beams are
// orthogonal are recorded as skipped, not errors.
inline SweepResult sweep(double T, std::size_t n = 64) {
    if (!(T >= 0.0 && T <= 1.0))
        throw InvalidConfig("pancharatnam: transmission T outside [0, 1]");
    if (n < 2) throw InvalidConfig("pancharatnam: sweep needs at least 2 points");
    SweepResult out;
    out.T = T;
    out.delta_phi.resize(n);
    out.decompositions.resize(n);
    out.geometric_oracle.assign(n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
        const double dphi = kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1);
        out.delta_phi[i] = dphi;
        try {
            const auto [phi1, phi2] = zero_dynamical_split(dphi, T);
            const double total = (T == 0.0) ? 0.0 : total_phase_closed_form(T, phi1, phi2);
            const double dyn = dynamical_phase(T, phi1, phi2);
            out.decompositions[i] = make_decomposition(total, dyn);
        } catch (const UndefinedPhase&) {
            out.skipped.push_back({i, dphi, {"UndefinedPhase"}});
        }
    }
    return out;
}

}  // namespace geomphase
