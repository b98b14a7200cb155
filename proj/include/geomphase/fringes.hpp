#pragma once
// Detector-side view: synthesize interference fringes from the recombined and
// reference beams, optionally add Poisson counting noise, fit the sinusoid
// back out, and run the contrast-degraded sweep that flattens the geometric
// phase curve.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "angles.hpp"
#include "errors.hpp"
#include "pancharatnam.hpp"
#include "qstate.hpp"

namespace geomphase {

struct FringeScan {
    std::vector<double> eta;        // auxiliary phase settings, strictly increasing
    std::vector<double> intensity;  // detector intensity (or counts) at each setting
};

struct FringeFit {
    double offset = 0.0;     // A in  I = A + B cos(eta - phase)
    double amplitude = 0.0;  // B >= 0
    double phase = 0.0;      // in (-pi, pi]; 0 by convention when visibility is lost
    double residual_rms = 0.0;
    double visibility = 0.0;  // B/A for A > 0, else 0
    bool low_visibility = false;
};

// Fitted fringes flatter than this carry no phase information.
inline constexpr double kVisibilityFloor = 1e-6;

inline std::vector<double> default_eta_grid(std::size_t n = 32) {
    if (n < 5) throw InvalidConfig("fringes: eta grid needs at least 5 points");
    std::vector<double> eta(n);
    for (std::size_t i = 0; i < n; ++i)
        eta[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    return eta;
}

// Interference of the recombined forward beam with the reference beam as the
// auxiliary phase eta turns on the reference:
//   I(eta) = |psi_ref|^2 + |psi_f|^2 + 2 v |<psi_ref|psi_f>| cos(eta - arg<psi_ref|psi_f>)
// with both beams taken after projection onto the forward direction. Clamped
// at zero; v < 1 can pull the raw expression slightly negative.
inline FringeScan synthesize(const InterferometerConfig& cfg, const std::vector<double>& eta) {
    validate(cfg);
    if (eta.size() < 5) throw InvalidConfig("fringes: a scan needs at least 5 settings");
    for (std::size_t i = 0; i + 1 < eta.size(); ++i)
        if (!(eta[i] < eta[i + 1]))
            throw InvalidConfig("fringes: eta settings must be strictly increasing");
    for (double e : eta)
        if (!std::isfinite(e)) throw InvalidConfig("fringes: eta settings must be finite");

    const TwoLevelState ref = project_q(TwoLevelState{1.0, 0.0}).projected;
    const TwoLevelState fin = project_q(evolve_second_loop(cfg)).projected;
    const double base = ref.norm_sq() + fin.norm_sq();
    const complexd ov = inner(ref, fin);
    const double amp = 2.0 * cfg.contrast.v * std::abs(ov);
    const double ph = std::arg(ov);

    FringeScan scan;
    scan.eta = eta;
    scan.intensity.resize(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const double I = base + amp * std::cos(eta[i] - ph);
        scan.intensity[i] = I > 0.0 ? I : 0.0;
    }
    return scan;
}

namespace detail {

// Uniform in (0, 1), never exactly 0 or 1.
inline double canonical_open(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Poisson draw with fixed cross-platform semantics. Small means use Knuth
// product inversion; large means use the transformed-rejection method with
// squeeze (Hormann's PTRS).
inline std::int64_t poisson_draw(double lambda, std::mt19937_64& rng) {
    if (lambda <= 0.0) return 0;
    if (lambda < 10.0) {
        const double limit = std::exp(-lambda);
        double prod = canonical_open(rng);
        std::int64_t k = 0;
        while (prod > limit) {
            prod *= canonical_open(rng);
            ++k;
        }
        return k;
    }
    const double b = 0.931 + 2.53 * std::sqrt(lambda);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_lambda = std::log(lambda);
    for (;;) {
        double u = canonical_open(rng) - 0.5;
        double v = canonical_open(rng);
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = -lambda + k * log_lambda - std::lgamma(k + 1.0);
        if (lhs <= rhs) return static_cast<std::int64_t>(k);
    }
}

}  // namespace detail

// Replace each intensity with a Poisson count draw, scaled so the brightest
// point of the scan averages mean_counts_at_peak. Deterministic in the seed.
inline FringeScan poisson_sample(const FringeScan& scan, double mean_counts_at_peak,
                                 std::uint64_t seed) {
    if (!(mean_counts_at_peak > 0.0) || !std::isfinite(mean_counts_at_peak))
        throw InvalidConfig("fringes: peak mean count must be positive and finite");
    if (scan.eta.size() != scan.intensity.size() || scan.eta.empty())
        throw InvalidConfig("fringes: malformed scan");
    double peak = 0.0;
    for (double I : scan.intensity) {
        if (!(I >= 0.0)) throw InvalidConfig("fringes: intensities must be nonnegative");
        peak = std::max(peak, I);
    }
    FringeScan out;
    out.eta = scan.eta;
    out.intensity.resize(scan.intensity.size());
    std::mt19937_64 rng(seed);
    if (peak == 0.0) {
        out.intensity.assign(scan.intensity.size(), 0.0);
        return out;
    }
    const double scale = mean_counts_at_peak / peak;
    for (std::size_t i = 0; i < scan.intensity.size(); ++i)
        out.intensity[i] =
            static_cast<double>(detail::poisson_draw(scale * scan.intensity[i], rng));
    return out;
}

// Least-squares fit of I = A + C cos(eta) + S sin(eta) via the 3x3 normal
// equations, reported as offset A, amplitude B = hypot(C, S) and phase
// atan2(S, C). Fits with B/A below kVisibilityFloor keep phase 0.
inline FringeFit fit_sinusoid(const FringeScan& scan) {
    const std::size_t n = scan.eta.size();
    if (n != scan.intensity.size()) throw InvalidConfig("fringes: malformed scan");
    if (n < 3) throw FitFailure("fringes: fit needs at least 3 points");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(scan.eta[i]) || !std::isfinite(scan.intensity[i]))
            throw InvalidConfig("fringes: scan values must be finite");

    double m[3][4] = {};
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(scan.eta[i]);
        const double s = std::sin(scan.eta[i]);
        const double y = scan.intensity[i];
        const double row[3] = {1.0, c, s};
        for (int r = 0; r < 3; ++r) {
            for (int q = 0; q < 3; ++q) m[r][q] += row[r] * row[q];
            m[r][3] += row[r] * y;
        }
    }
    // Gaussian elimination with partial pivoting on the 3x3 system.
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-12 * static_cast<double>(n))
            throw FitFailure("fringes: eta settings do not determine a sinusoid");
        if (piv != col)
            for (int q = 0; q < 4; ++q) std::swap(m[piv][q], m[col][q]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int q = col; q < 4; ++q) m[r][q] -= f * m[col][q];
        }
    }
    const double A = m[0][3] / m[0][0];
    const double C = m[1][3] / m[1][1];
    const double S = m[2][3] / m[2][2];

    FringeFit fit;
    fit.offset = A;
    fit.amplitude = std::hypot(C, S);
    fit.visibility = A > 0.0 ? fit.amplitude / A : 0.0;
    fit.low_visibility = fit.visibility < kVisibilityFloor;
    fit.phase = fit.low_visibility ? 0.0 : wrap_principal(std::atan2(S, C));
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r =
            scan.intensity[i] - (A + C * std::cos(scan.eta[i]) + S * std::sin(scan.eta[i]));
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

struct FlatteningPoint {
    double delta_phi;
    double phi_geo;  // fitted total minus the effective dynamical phase, unwrapped
};

struct FlatteningCurve {
    double T;
    Contrast contrast;
    std::vector<FlatteningPoint> points;
    std::vector<SkippedPoint> skipped;
};

// Sweep of the fitted geometric phase with degraded contrast. The dynamical
// phase removed at each point is the effective one for the damped beam,
// weighting each path phase by its surviving intensity:
//   w1 = c_up^2 / 2,  w2 = c_down^2 T / 2.
// The curve coincides with the ideal sweep at T_eff = (c_down/c_up)^2 T, so
// unequal path contrast flattens it; c_down = 0 kills the loop entirely and
// the curve is identically zero. Fitted phases are unwrapped sequentially.
inline FlatteningCurve flattening_curve(double T, const Contrast& contrast,
                                        std::size_t n_points = 64, std::size_t eta_points = 32) {
    if (!(T >= 0.0 && T <= 1.0))
        throw InvalidConfig("fringes: transmission T outside [0, 1]");
    if (n_points < 2) throw InvalidConfig("fringes: sweep needs at least 2 points");
    if (!(contrast.v > 0.0))
        throw InvalidConfig("fringes: zero fringe visibility leaves nothing to fit");
    if (contrast.c_up == 0.0 && contrast.c_down == 0.0)
        throw InvalidConfig("fringes: both path contrasts vanish");
    const double w1 = 0.5 * contrast.c_up * contrast.c_up;
    const double w2 = 0.5 * contrast.c_down * contrast.c_down * T;
    if (w1 + w2 == 0.0)
        throw InvalidConfig("fringes: no intensity survives to the detector");
    const std::vector<double> eta = default_eta_grid(eta_points);

    FlatteningCurve out;
    out.T = T;
    out.contrast = contrast;
    double prev = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double dphi =
            kTwoPi * static_cast<double>(i) / static_cast<double>(n_points - 1);
        InterferometerConfig cfg;
        cfg.T = T;
        cfg.contrast = contrast;
        const auto [phi1, phi2] = zero_dynamical_split(dphi, T);
        cfg.phi1 = phi1;
        cfg.phi2 = phi2;
        const FringeFit fit = fit_sinusoid(synthesize(cfg, eta));
        if (fit.low_visibility) {
            out.skipped.push_back({i, dphi, {"LowVisibility"}});
            continue;
        }
        const double dyn_eff = (w1 * phi1 + w2 * phi2) / (w1 + w2);
        double geo = wrap_principal(fit.phase - dyn_eff);
        if (have_prev) geo = prev + wrap_principal(geo - prev);
        prev = geo;
        have_prev = true;
        out.points.push_back({dphi, geo});
    }
    return out;
}

}  // namespace geomphase
