#pragma once
// Two-level "which-way" states and the second-loop operations acting on them:
// coherent 50:50 splitting, partial absorption of the lower path, and the two
// phase-shifter settings. Amplitudes stay unnormalized on purpose; the norm
// lost to the absorber is exactly the absorbed intensity.

#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"

namespace geomphase {

using complexd = std::complex<double>;

struct TwoLevelState {
    complexd c_p{};     // coefficient on |p>
    complexd c_perp{};  // coefficient on |p_perp>

    double norm_sq() const { return std::norm(c_p) + std::norm(c_perp); }
    double norm() const { return std::sqrt(norm_sq()); }
};

// <a|b>, conjugate-linear in the first argument.
inline complexd inner(const TwoLevelState& a, const TwoLevelState& b) {
    return std::conj(a.c_p) * b.c_p + std::conj(a.c_perp) * b.c_perp;
}

// Amplitude scale factors on the two paths of the second loop (c_up on |p>,
// c_down on |p_perp>), plus the fringe visibility v that scales only the
// oscillating term of a detector scan. Unit values describe the ideal loop.
struct Contrast {
    double c_up = 1.0;
    double c_down = 1.0;
    double v = 1.0;
};

struct InterferometerConfig {
    double T = 1.0;      // absorber intensity transmission, in [0, 1]
    double phi1 = 0.0;   // phase on the |p> path (radians)
    double phi2 = 0.0;   // phase on the |p_perp> path (radians)
    double delta = 0.0;  // splitter phase: |p> -> (|p> + e^{i delta}|p_perp>)/sqrt(2)
    Contrast contrast{};
};

inline void validate(const InterferometerConfig& cfg) {
    if (!(cfg.T >= 0.0 && cfg.T <= 1.0))
        throw InvalidConfig("qstate: transmission T outside [0, 1]");
    if (!std::isfinite(cfg.phi1) || !std::isfinite(cfg.phi2) || !std::isfinite(cfg.delta))
        throw InvalidConfig("qstate: phase settings must be finite");
    const Contrast& c = cfg.contrast;
    if (!(c.c_up >= 0.0 && c.c_up <= 1.0) || !(c.c_down >= 0.0 && c.c_down <= 1.0) ||
        !(c.v >= 0.0 && c.v <= 1.0))
        throw InvalidConfig("qstate: contrast factors outside [0, 1]");
}

// 50:50 splitter, |p> -> (|p> + e^{i delta}|p_perp>)/sqrt(2). Unitary.
inline TwoLevelState split(const TwoLevelState& s, double delta = 0.0) {
    if (s.norm_sq() == 0.0) throw InvalidState("qstate: split of a zero-norm state");
    if (!std::isfinite(delta)) throw InvalidConfig("qstate: splitter phase must be finite");
    const double k = 1.0 / std::numbers::sqrt2;
    return {(s.c_p + s.c_perp) * k, std::polar(1.0, delta) * ((s.c_p - s.c_perp) * k)};
}

// Inverse of split with the same delta; restores the pre-splitter state.
inline TwoLevelState split_inverse(const TwoLevelState& s, double delta = 0.0) {
    if (s.norm_sq() == 0.0) throw InvalidState("qstate: split of a zero-norm state");
    if (!std::isfinite(delta)) throw InvalidConfig("qstate: splitter phase must be finite");
    const double k = 1.0 / std::numbers::sqrt2;
    const complexd b = std::polar(1.0, -delta) * s.c_perp;
    return {(s.c_p + b) * k, (s.c_p - b) * k};
}

// Absorber on the lower path: deterministic amplitude damping by sqrt(T).
inline TwoLevelState absorb(const TwoLevelState& s, double T) {
    if (!(T >= 0.0 && T <= 1.0)) throw InvalidConfig("qstate: transmission T outside [0, 1]");
    return {s.c_p, s.c_perp * std::sqrt(T)};
}

// Independent phase shifts on the two paths.
inline TwoLevelState phase_shift(const TwoLevelState& s, double phi1, double phi2) {
    if (!std::isfinite(phi1) || !std::isfinite(phi2))
        throw InvalidConfig("qstate: phase settings must be finite");
    return {std::polar(1.0, phi1) * s.c_p, std::polar(1.0, phi2) * s.c_perp};
}

// Full second-loop pipeline applied to |p>: split, absorb, contrast damping,
// phase shifts. With unit contrast and delta = 0 the result is the literal
//   (e^{i phi1} |p> + sqrt(T) e^{i phi2} |p_perp>) / sqrt(2).
inline TwoLevelState evolve_second_loop(const InterferometerConfig& cfg) {
    validate(cfg);
    TwoLevelState s = split(TwoLevelState{1.0, 0.0}, cfg.delta);
    s = absorb(s, cfg.T);
    s.c_p *= cfg.contrast.c_up;
    s.c_perp *= cfg.contrast.c_down;
    return phase_shift(s, cfg.phi1, cfg.phi2);
}

struct Projection {
    complexd amplitude;       // <q|state>
    TwoLevelState projected;  // amplitude * |q>
};

// Projection onto |q> = (|p> + |p_perp>)/sqrt(2), the forward beam direction
// at the recombining splitter.
inline Projection project_q(const TwoLevelState& s) {
    const double k = 1.0 / std::numbers::sqrt2;
    const complexd amp = (s.c_p + s.c_perp) * k;
    return {amp, {amp * k, amp * k}};
}

}  // namespace geomphase
