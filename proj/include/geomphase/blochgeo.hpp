#pragma once
// Bloch-sphere side of the story: mapping states to points, building the
// closed loop traced by the second-loop evolution, and integrating its signed
// solid angle. Eastward (increasing azimuth) circulation counts positive; the
// result is not reduced modulo 4*pi.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "angles.hpp"
#include "errors.hpp"
#include "qstate.hpp"

namespace geomphase {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double k, const Vec3& a) { return {k * a.x, k * a.y, k * a.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Point on the unit sphere in polar angle / azimuth form. theta in [0, pi],
// azimuth kept in [0, 2*pi). At the poles the azimuth is a gauge choice.
struct BlochPoint {
    double theta = 0.0;
    double azimuth = 0.0;

    Vec3 unit() const {
        const double s = std::sin(theta);
        return {s * std::cos(azimuth), s * std::sin(azimuth), std::cos(theta)};
    }
};

inline BlochPoint bloch_from_unit(const Vec3& u) {
    const double theta = std::atan2(std::hypot(u.x, u.y), u.z);
    double az = std::atan2(u.y, u.x);
    if (az < 0.0) az += kTwoPi;
    if (az >= kTwoPi) az = 0.0;
    return {theta, az};
}

// Bloch point of a two-level state: theta from the amplitude ratio, azimuth
// from the relative phase. |p> is the north pole.
inline BlochPoint state_to_bloch(const TwoLevelState& s) {
    const double n = s.norm();
    if (n == 0.0) throw InvalidState("blochgeo: zero-norm state has no Bloch point");
    const double a = std::abs(s.c_p) / n;
    const double b = std::abs(s.c_perp) / n;
    const double theta = 2.0 * std::atan2(b, a);
    double az = 0.0;
    if (a * b > 0.0) {
        az = std::arg(s.c_perp * std::conj(s.c_p));
        if (az < 0.0) az += kTwoPi;
        if (az >= kTwoPi) az = 0.0;
    }
    return {theta, az};
}

// Polar angle of the state behind the absorber: theta_T = 2*arctan(sqrt(T)).
inline double absorber_polar_angle(double T) {
    if (!(T >= 0.0 && T <= 1.0))
        throw InvalidConfig("blochgeo: transmission T outside [0, 1]");
    return 2.0 * std::atan(std::sqrt(T));
}

enum class SegmentKind { MeridianGeodesic, LatitudeArc, GreatCircleGeodesic };

inline const char* segment_kind_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::MeridianGeodesic: return "meridian-geodesic";
        case SegmentKind::LatitudeArc: return "latitude-arc";
        case SegmentKind::GreatCircleGeodesic: return "great-circle-geodesic";
    }
    return "unknown";
}

struct PathSegment {
    SegmentKind kind;
    std::vector<BlochPoint> points;
};

struct BlochPath {
    std::vector<PathSegment> segments;
};

// Geodesics between antipodal points are a one-parameter family; refuse them.
inline constexpr double kAntipodalEps = 1e-9;

namespace detail {

// Poles carry no azimuth of their own; give each polar sample the azimuth of
// its nearest non-polar neighbor so downstream azimuth differences vanish.
inline void fix_pole_azimuths(std::vector<BlochPoint>& pts) {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::sin(pts[i].theta) >= 1e-12) continue;
        double az = pts[i].azimuth;
        bool found = false;
        for (std::size_t off = 1; off < n && !found; ++off) {
            if (i >= off && std::sin(pts[i - off].theta) >= 1e-12) {
                az = pts[i - off].azimuth;
                found = true;
            } else if (i + off < n && std::sin(pts[i + off].theta) >= 1e-12) {
                az = pts[i + off].azimuth;
                found = true;
            }
        }
        if (found) pts[i].azimuth = az;
    }
}

}  // namespace detail

// Great-circle arc from a to b with n samples, endpoints stored bit-exactly.
// Interior points come from spherical linear interpolation.
inline PathSegment geodesic_arc(const BlochPoint& a, const BlochPoint& b, std::size_t n,
                                SegmentKind kind = SegmentKind::GreatCircleGeodesic) {
    if (n < 2) throw InvalidConfig("blochgeo: a segment needs at least 2 samples");
    const Vec3 ua = a.unit();
    const Vec3 ub = b.unit();
    const double c = std::clamp(dot(ua, ub), -1.0, 1.0);
    const double ang = std::acos(c);
    if (ang >= std::numbers::pi - kAntipodalEps)
        throw AmbiguousGeodesic("blochgeo: geodesic between near-antipodal points is not unique");
    PathSegment seg{kind, {}};
    seg.points.resize(n);
    seg.points.front() = a;
    seg.points.back() = b;
    if (ang > 0.0) {
        const double s = std::sin(ang);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(n - 1);
            const double wa = std::sin((1.0 - t) * ang) / s;
            const double wb = std::sin(t * ang) / s;
            seg.points[i] = bloch_from_unit(wa * ua + wb * ub);
        }
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) seg.points[i] = a;
    }
    detail::fix_pole_azimuths(seg.points);
    return seg;
}

// Constant-latitude arc at polar angle theta, azimuth from az0 through
// az0 + span (signed), n samples.
inline PathSegment latitude_arc(double theta, double az0, double span, std::size_t n) {
    if (n < 2) throw InvalidConfig("blochgeo: a segment needs at least 2 samples");
    if (!std::isfinite(theta) || !std::isfinite(az0) || !std::isfinite(span))
        throw InvalidConfig("blochgeo: latitude arc parameters must be finite");
    PathSegment seg{SegmentKind::LatitudeArc, {}};
    seg.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        seg.points[i] = {theta, az0 + t * span};
    }
    return seg;
}

// Meridian arc at fixed azimuth from polar angle th0 to th1, n samples.
inline PathSegment meridian_segment(double azimuth, double th0, double th1, std::size_t n) {
    if (n < 2) throw InvalidConfig("blochgeo: a segment needs at least 2 samples");
    if (!std::isfinite(azimuth) || !std::isfinite(th0) || !std::isfinite(th1))
        throw InvalidConfig("blochgeo: meridian parameters must be finite");
    PathSegment seg{SegmentKind::MeridianGeodesic, {}};
    seg.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        seg.points[i] = {th0 + t * (th1 - th0), azimuth};
    }
    detail::fix_pole_azimuths(seg.points);
    return seg;
}

struct PathOptions {
    std::size_t samples_per_segment = 2048;
    // Also trace the excursion from the |q> point to the loop and back. The
    // two meridian legs retrace each other and add no solid angle.
    bool include_source_excursion = false;
};

// Closed Bloch loop of the second-loop evolution at transmission T and loop
// separation dphi: down the zero meridian from the equator to theta_T, east
// along that latitude through dphi, then the great-circle geodesic back to
// the equator start point. T = 1 with dphi = pi puts the closing endpoints
// antipodal and throws AmbiguousGeodesic.
inline BlochPath build_path(double T, double dphi, const PathOptions& opt = {}) {
    if (!(T > 0.0 && T <= 1.0))
        throw InvalidConfig("blochgeo: path needs transmission T in (0, 1]");
    if (!(dphi >= 0.0 && dphi <= kTwoPi))
        throw InvalidConfig("blochgeo: path needs dphi in [0, 2*pi]");
    const std::size_t n = opt.samples_per_segment;
    if (n < 2) throw InvalidConfig("blochgeo: a segment needs at least 2 samples");
    const double theta_q = 0.5 * std::numbers::pi;
    const double theta_T = absorber_polar_angle(T);
    BlochPath path;
    if (opt.include_source_excursion)
        path.segments.push_back(meridian_segment(0.0, 0.0, theta_q, n));
    path.segments.push_back(meridian_segment(0.0, theta_q, theta_T, n));
    path.segments.push_back(latitude_arc(theta_T, 0.0, dphi, n));
    const BlochPoint loop_end{theta_T, wrap_two_pi(dphi)};
    const BlochPoint q_start{theta_q, 0.0};
    path.segments.push_back(geodesic_arc(loop_end, q_start, n));
    if (opt.include_source_excursion)
        path.segments.push_back(meridian_segment(0.0, theta_q, 0.0, n));
    return path;
}

inline BlochPath reversed(const BlochPath& path) {
    BlochPath out;
    out.segments.reserve(path.segments.size());
    for (auto it = path.segments.rbegin(); it != path.segments.rend(); ++it) {
        PathSegment seg{it->kind, {it->points.rbegin(), it->points.rend()}};
        out.segments.push_back(std::move(seg));
    }
    return out;
}

// How far apart the path may end from where it began and still count closed.
inline constexpr double kClosureEps = 1e-12;

namespace detail {

inline std::vector<BlochPoint> concatenate(const BlochPath& path) {
    std::vector<BlochPoint> pts;
    for (const PathSegment& seg : path.segments) {
        if (seg.points.size() < 2)
            throw Undersampled("blochgeo: a segment needs at least 2 samples");
        if (pts.empty()) {
            pts = seg.points;
        } else {
            pts.insert(pts.end(), seg.points.begin(), seg.points.end());
        }
    }
    return pts;
}

}  // namespace detail

// Signed solid angle enclosed by a closed path, via the spherical-area form
//   Omega = integral (1 - cos theta) d(azimuth)
// with the azimuth increment of each step taken on the principal branch.
// Steps whose azimuth jump exceeds pi/2 (geodesics passing near a pole) use
// the exact spherical-triangle excess against the north pole instead; the
// trapezoid rule would pick the wrong azimuth branch there. Eastward loops
// about the north pole are positive; the equator gives 2*pi.
inline double signed_solid_angle(const BlochPath& path) {
    const std::vector<BlochPoint> pts = detail::concatenate(path);
    if (pts.size() < 2) throw Undersampled("blochgeo: path has too few samples");
    const Vec3 first = pts.front().unit();
    const Vec3 last = pts.back().unit();
    if (length(last - first) > kClosureEps)
        throw OpenPath("blochgeo: path endpoints do not coincide");
    double omega = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const BlochPoint& a = pts[i];
        const BlochPoint& b = pts[i + 1];
        const Vec3 ua = a.unit();
        const Vec3 ub = b.unit();
        const double gap = std::acos(std::clamp(dot(ua, ub), -1.0, 1.0));
        if (gap >= 0.5 * std::numbers::pi)
            throw Undersampled("blochgeo: adjacent samples separated by a quarter sphere or more");
        const double dstep = wrap_principal(b.azimuth - a.azimuth);
        if (std::abs(dstep) > 0.5 * std::numbers::pi) {
            // Spherical triangle (north pole, a, b): signed excess.
            const double num = ua.x * ub.y - ua.y * ub.x;
            const double den = 1.0 + ua.z + ub.z + dot(ua, ub);
            omega += 2.0 * std::atan2(num, den);
        } else {
            omega += 0.5 * ((1.0 - std::cos(a.theta)) + (1.0 - std::cos(b.theta))) * dstep;
        }
    }
    return omega;
}

// Geometric phase of a closed Bloch loop: minus half its solid angle.
inline double geometric_phase_geometric(const BlochPath& path) {
    return -0.5 * signed_solid_angle(path);
}

// Full-turn latitude loop at polar angle theta: geometric phase pi(cos theta - 1).
inline double cyclic_closed_form(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
        throw InvalidConfig("blochgeo: polar angle outside [0, pi]");
    return std::numbers::pi * (std::cos(theta) - 1.0);
}

}  // namespace geomphase
