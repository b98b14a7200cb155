#pragma once
// Cross-check of the two independent routes to the geometric phase: the
// interferometric one (total phase at the zero-dynamical setting) against the
// geometric one (minus half the signed solid angle of the Bloch loop).

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "angles.hpp"
#include "blochgeo.hpp"
#include "errors.hpp"
#include "pancharatnam.hpp"

namespace geomphase {

struct ComparePoint {
    std::size_t index;
    double delta_phi;
    double interferometric;
    double geometric;
    double abs_deviation;
};

struct CompareReport {
    double T;
    std::size_t n_points;
    std::size_t samples_per_segment;
    std::vector<double> delta_phi;
    std::vector<ComparePoint> points;
    std::vector<SkippedPoint> skipped;
    double max_abs_deviation = 0.0;
};

// Evaluate both routes over an inclusive [0, 2*pi] grid of loop separations.
// A point enters `points` only when both routes are defined there; failures
// are collected per point with the reasons from each route.
inline CompareReport compare_geometric_phase(double T, std::size_t n_points = 64,
                                             std::size_t samples_per_segment = 2048) {
    if (!(T > 0.0 && T <= 1.0))
        throw InvalidConfig("compare: needs transmission T in (0, 1]");
    if (n_points < 2) throw InvalidConfig("compare: needs at least 2 points");
    CompareReport rep;
    rep.T = T;
    rep.n_points = n_points;
    rep.samples_per_segment = samples_per_segment;
    rep.delta_phi.resize(n_points);
    PathOptions opt;
    opt.samples_per_segment = samples_per_segment;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double dphi =
            kTwoPi * static_cast<double>(i) / static_cast<double>(n_points - 1);
        rep.delta_phi[i] = dphi;
        std::optional<double> interf;
        std::optional<double> geom;
        std::vector<std::string> reasons;
        try {
            interf = geometric_phase_interferometric(T, dphi);
        } catch (const Error& e) {
            reasons.push_back(e.code());
        }
        try {
            geom = geometric_phase_geometric(build_path(T, dphi, opt));
        } catch (const Error& e) {
            reasons.push_back(e.code());
        }
        if (interf && geom) {
            const double dev = std::abs(*interf - *geom);
            rep.points.push_back({i, dphi, *interf, *geom, dev});
            rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
        } else {
            rep.skipped.push_back({i, dphi, std::move(reasons)});
        }
    }
    return rep;
}

// Fill a sweep's geometric_oracle column with the solid-angle route and
// record the largest disagreement against the interferometric values.
inline void attach_geometric_oracle(SweepResult& sweep,
                                    std::size_t samples_per_segment = 2048) {
    if (!(sweep.T > 0.0)) return;  // no Bloch loop without a lower path
    PathOptions opt;
    opt.samples_per_segment = samples_per_segment;
    sweep.geometric_oracle.assign(sweep.delta_phi.size(), std::nullopt);
    for (std::size_t i = 0; i < sweep.delta_phi.size(); ++i) {
        if (!sweep.decompositions[i]) continue;
        try {
            const double g =
                geometric_phase_geometric(build_path(sweep.T, sweep.delta_phi[i], opt));
            sweep.geometric_oracle[i] = g;
            sweep.max_deviation =
                std::max(sweep.max_deviation, std::abs(g - sweep.decompositions[i]->geometric));
        } catch (const Error&) {
            // leave the oracle empty where the loop cannot be built
        }
    }
}

}  // namespace geomphase
