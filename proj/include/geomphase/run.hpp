#pragma once
// Command layer behind the CLI binary. Each command maps a validated
// RunConfig to one deterministic text document (CSV or JSON). Angles are
// radians everywhere internally; the degrees switch converts values on
// output only and renames *_rad CSV columns to *_deg.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "angles.hpp"
#include "blochgeo.hpp"
#include "compare.hpp"
#include "errors.hpp"
#include "fringes.hpp"
#include "io.hpp"
#include "pancharatnam.hpp"
#include "qstate.hpp"

namespace geomphase {

enum class Command { Sweep, Fringes, Fit, SolidAngle, Compare, PathExport };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Sweep;
    double T = 0.5;
    double dphi = 0.5 * std::numbers::pi;
    std::optional<double> phi1;  // both set: explicit shifter settings;
    std::optional<double> phi2;  // neither: zero-dynamical split of dphi
    std::size_t points = 64;
    std::size_t eta_points = 32;
    std::size_t samples_per_segment = 2048;
    Contrast contrast{};
    std::uint64_t seed = 1;
    std::optional<double> peak_counts;  // set: Poisson-sample the fringe scan
    std::string input;                  // fit: CSV path, "-" for stdin text passed by caller
    Format format = Format::Csv;
    bool degrees = false;
    bool full_path = false;  // path commands: include the source excursion legs
};

namespace detail {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

inline double out_angle(const RunConfig& cfg, double rad) {
    return cfg.degrees ? rad * kDegPerRad : rad;
}

inline const char* angle_unit(const RunConfig& cfg) { return cfg.degrees ? "deg" : "rad"; }

// CSV angle columns carry a _rad suffix; degrees output renames and converts.
inline std::string angle_col(const RunConfig& cfg, const std::string& stem) {
    return stem + (cfg.degrees ? "_deg" : "_rad");
}

inline ojson skipped_json(const RunConfig& cfg, const std::vector<SkippedPoint>& skipped) {
    ojson arr = ojson::array();
    for (const SkippedPoint& s : skipped) {
        ojson rec;
        rec["index"] = s.index;
        rec["dphi"] = out_angle(cfg, s.delta_phi);
        rec["reasons"] = s.reasons;
        arr.push_back(std::move(rec));
    }
    return arr;
}

inline std::string skipped_comment(const RunConfig& cfg, const SkippedPoint& s) {
    std::string line = "skipped index=" + std::to_string(s.index) + " " +
                       angle_col(cfg, "dphi") + "=" + format_double(out_angle(cfg, s.delta_phi)) +
                       " reasons=";
    for (std::size_t i = 0; i < s.reasons.size(); ++i) {
        if (i) line += ';';
        line += s.reasons[i];
    }
    return line;
}

inline ojson fit_json(const RunConfig& cfg, const FringeFit& fit) {
    ojson rec;
    rec["offset"] = fit.offset;
    rec["amplitude"] = fit.amplitude;
    rec["phase"] = out_angle(cfg, fit.phase);
    rec["residual_rms"] = fit.residual_rms;
    rec["visibility"] = fit.visibility;
    rec["low_visibility"] = fit.low_visibility;
    return rec;
}

inline std::string run_sweep(const RunConfig& cfg) {
    const SweepResult res = sweep(cfg.T, cfg.points);
    if (cfg.format == Format::Csv) {
        Table t;
        t.header = {angle_col(cfg, "dphi"), angle_col(cfg, "phi_total"),
                    angle_col(cfg, "phi_dyn"), angle_col(cfg, "phi_geo")};
        for (std::size_t i = 0; i < res.delta_phi.size(); ++i) {
            if (!res.decompositions[i]) continue;
            const PhaseDecomposition& d = *res.decompositions[i];
            t.rows.push_back({out_angle(cfg, res.delta_phi[i]), out_angle(cfg, d.total),
                              out_angle(cfg, d.dynamical), out_angle(cfg, d.geometric)});
        }
        for (const SkippedPoint& s : res.skipped)
            t.trailing_comments.push_back(skipped_comment(cfg, s));
        return emit_csv(t);
    }
    ojson j;
    j["command"] = "sweep";
    j["angle_unit"] = angle_unit(cfg);
    j["T"] = res.T;
    j["n_points"] = cfg.points;
    ojson pts = ojson::array();
    for (std::size_t i = 0; i < res.delta_phi.size(); ++i) {
        if (!res.decompositions[i]) continue;
        const PhaseDecomposition& d = *res.decompositions[i];
        ojson rec;
        rec["index"] = i;
        rec["dphi"] = out_angle(cfg, res.delta_phi[i]);
        rec["phi_total"] = out_angle(cfg, d.total);
        rec["phi_dyn"] = out_angle(cfg, d.dynamical);
        rec["phi_geo"] = out_angle(cfg, d.geometric);
        pts.push_back(std::move(rec));
    }
    j["points"] = std::move(pts);
    j["skipped"] = skipped_json(cfg, res.skipped);
    return emit_json(j);
}

inline std::pair<double, double> shifter_settings(const RunConfig& cfg) {
    if (cfg.phi1.has_value() != cfg.phi2.has_value())
        throw InvalidConfig("run: phi1 and phi2 must be given together");
    if (cfg.phi1) return {*cfg.phi1, *cfg.phi2};
    return zero_dynamical_split(cfg.dphi, cfg.T);
}

inline std::string run_fringes(const RunConfig& cfg) {
    const auto [phi1, phi2] = shifter_settings(cfg);
    InterferometerConfig icfg;
    icfg.T = cfg.T;
    icfg.phi1 = phi1;
    icfg.phi2 = phi2;
    icfg.contrast = cfg.contrast;
    FringeScan scan = synthesize(icfg, default_eta_grid(cfg.eta_points));
    if (cfg.peak_counts) scan = poisson_sample(scan, *cfg.peak_counts, cfg.seed);
    const FringeFit fit = fit_sinusoid(scan);
    if (cfg.format == Format::Csv) {
        Table t;
        t.header = {angle_col(cfg, "eta"), "intensity"};
        for (std::size_t i = 0; i < scan.eta.size(); ++i)
            t.rows.push_back({out_angle(cfg, scan.eta[i]), scan.intensity[i]});
        if (fit.low_visibility) t.trailing_comments.push_back("LowVisibility");
        return emit_csv(t);
    }
    ojson j;
    j["command"] = "fringes";
    j["angle_unit"] = angle_unit(cfg);
    j["T"] = cfg.T;
    j["phi1"] = out_angle(cfg, phi1);
    j["phi2"] = out_angle(cfg, phi2);
    if (cfg.peak_counts) {
        j["peak_counts"] = *cfg.peak_counts;
        j["seed"] = cfg.seed;
    }
    ojson eta = ojson::array();
    ojson intensity = ojson::array();
    for (std::size_t i = 0; i < scan.eta.size(); ++i) {
        eta.push_back(out_angle(cfg, scan.eta[i]));
        intensity.push_back(scan.intensity[i]);
    }
    j["eta"] = std::move(eta);
    j["intensity"] = std::move(intensity);
    j["fit"] = fit_json(cfg, fit);
    return emit_json(j);
}

// Fit command input: CSV text with an eta_rad or eta_deg column and an
// intensity column, as written by the fringes command.
inline std::string run_fit(const RunConfig& cfg, const std::string& csv_text) {
    const ParsedCsv parsed = parse_csv(csv_text);
    std::size_t eta_col = parsed.header.size();
    std::size_t int_col = parsed.header.size();
    bool eta_in_degrees = false;
    for (std::size_t i = 0; i < parsed.header.size(); ++i) {
        if (parsed.header[i] == "eta_rad") {
            eta_col = i;
        } else if (parsed.header[i] == "eta_deg") {
            eta_col = i;
            eta_in_degrees = true;
        } else if (parsed.header[i] == "intensity") {
            int_col = i;
        }
    }
    if (eta_col == parsed.header.size() || int_col == parsed.header.size())
        throw InvalidConfig("run: fit input needs eta_rad (or eta_deg) and intensity columns");
    FringeScan scan;
    for (const auto& row : parsed.rows) {
        const double e = row[eta_col];
        scan.eta.push_back(eta_in_degrees ? e / kDegPerRad : e);
        scan.intensity.push_back(row[int_col]);
    }
    const FringeFit fit = fit_sinusoid(scan);
    if (cfg.format == Format::Csv) {
        Table t;
        t.header = {"offset", "amplitude", angle_col(cfg, "phase"), "residual_rms",
                    "visibility", "low_visibility"};
        t.rows.push_back({fit.offset, fit.amplitude, out_angle(cfg, fit.phase),
                          fit.residual_rms, fit.visibility, fit.low_visibility ? 1.0 : 0.0});
        return emit_csv(t);
    }
    ojson j;
    j["command"] = "fit";
    j["angle_unit"] = angle_unit(cfg);
    j["n_points"] = scan.eta.size();
    j["fit"] = fit_json(cfg, fit);
    return emit_json(j);
}

inline PathOptions path_options(const RunConfig& cfg) {
    PathOptions opt;
    opt.samples_per_segment = cfg.samples_per_segment;
    opt.include_source_excursion = cfg.full_path;
    return opt;
}

inline std::string run_solid_angle(const RunConfig& cfg) {
    const BlochPath path = build_path(cfg.T, cfg.dphi, path_options(cfg));
    const double omega = signed_solid_angle(path);
    const double phi_geo = -0.5 * omega;
    if (cfg.format == Format::Csv) {
        Table t;
        t.header = {"T", angle_col(cfg, "dphi"), "solid_angle_sr", angle_col(cfg, "phi_geo")};
        t.rows.push_back({cfg.T, out_angle(cfg, cfg.dphi), omega, out_angle(cfg, phi_geo)});
        return emit_csv(t);
    }
    ojson j;
    j["command"] = "solid-angle";
    j["angle_unit"] = angle_unit(cfg);
    j["T"] = cfg.T;
    j["dphi"] = out_angle(cfg, cfg.dphi);
    j["samples_per_segment"] = cfg.samples_per_segment;
    j["include_source_excursion"] = cfg.full_path;
    j["solid_angle_sr"] = omega;
    j["phi_geo"] = out_angle(cfg, phi_geo);
    return emit_json(j);
}

inline std::string run_compare(const RunConfig& cfg) {
    const CompareReport rep =
        compare_geometric_phase(cfg.T, cfg.points, cfg.samples_per_segment);
    if (cfg.format == Format::Csv) {
        Table t;
        t.header = {angle_col(cfg, "dphi"), angle_col(cfg, "phi_geo_interferometric"),
                    angle_col(cfg, "phi_geo_geometric"), angle_col(cfg, "abs_deviation")};
        for (const ComparePoint& p : rep.points)
            t.rows.push_back({out_angle(cfg, p.delta_phi), out_angle(cfg, p.interferometric),
                              out_angle(cfg, p.geometric), out_angle(cfg, p.abs_deviation)});
        for (const SkippedPoint& s : rep.skipped)
            t.trailing_comments.push_back(skipped_comment(cfg, s));
        t.trailing_comments.push_back(std::string("max_abs_deviation_") + angle_unit(cfg) +
                                      "=" + format_double(out_angle(cfg, rep.max_abs_deviation)));
        return emit_csv(t);
    }
    ojson j;
    j["command"] = "compare";
    j["angle_unit"] = angle_unit(cfg);
    j["T"] = rep.T;
    j["n_points"] = rep.n_points;
    j["samples_per_segment"] = rep.samples_per_segment;
    j["max_abs_deviation"] = out_angle(cfg, rep.max_abs_deviation);
    ojson pts = ojson::array();
    for (const ComparePoint& p : rep.points) {
        ojson rec;
        rec["index"] = p.index;
        rec["dphi"] = out_angle(cfg, p.delta_phi);
        rec["interferometric"] = out_angle(cfg, p.interferometric);
        rec["geometric"] = out_angle(cfg, p.geometric);
        rec["abs_deviation"] = out_angle(cfg, p.abs_deviation);
        pts.push_back(std::move(rec));
    }
    j["points"] = std::move(pts);
    j["skipped"] = skipped_json(cfg, rep.skipped);
    return emit_json(j);
}

inline std::string run_path_export(const RunConfig& cfg) {
    const BlochPath path = build_path(cfg.T, cfg.dphi, path_options(cfg));
    if (cfg.format == Format::Csv) {
        Table t;
        t.header = {"segment", angle_col(cfg, "theta"), angle_col(cfg, "azimuth"),
                    "x", "y", "z"};
        for (std::size_t s = 0; s < path.segments.size(); ++s) {
            for (const BlochPoint& p : path.segments[s].points) {
                const Vec3 u = p.unit();
                t.rows.push_back({static_cast<double>(s), out_angle(cfg, p.theta),
                                  out_angle(cfg, p.azimuth), u.x, u.y, u.z});
            }
            t.trailing_comments.push_back("segment " + std::to_string(s) + " kind=" +
                                          segment_kind_name(path.segments[s].kind));
        }
        return emit_csv(t);
    }
    ojson j;
    j["command"] = "path-export";
    j["angle_unit"] = angle_unit(cfg);
    j["T"] = cfg.T;
    j["dphi"] = out_angle(cfg, cfg.dphi);
    j["samples_per_segment"] = cfg.samples_per_segment;
    j["include_source_excursion"] = cfg.full_path;
    ojson segs = ojson::array();
    for (const PathSegment& seg : path.segments) {
        ojson rec;
        rec["kind"] = segment_kind_name(seg.kind);
        ojson pts = ojson::array();
        for (const BlochPoint& p : seg.points) {
            const Vec3 u = p.unit();
            pts.push_back(ojson::array(
                {out_angle(cfg, p.theta), out_angle(cfg, p.azimuth), u.x, u.y, u.z}));
        }
        rec["points"] = std::move(pts);
        segs.push_back(std::move(rec));
    }
    j["segments"] = std::move(segs);
    return emit_json(j);
}

}  // namespace detail

inline void validate(const RunConfig& cfg) {
    if (!(cfg.T >= 0.0 && cfg.T <= 1.0))
        throw InvalidConfig("run: transmission T outside [0, 1]");
    if (!std::isfinite(cfg.dphi)) throw InvalidConfig("run: dphi must be finite");
    if (cfg.points < 2) throw InvalidConfig("run: point count must be at least 2");
    if (cfg.eta_points < 5) throw InvalidConfig("run: eta grid needs at least 5 points");
    if (cfg.samples_per_segment < 2)
        throw InvalidConfig("run: a segment needs at least 2 samples");
    if (cfg.phi1 && !std::isfinite(*cfg.phi1))
        throw InvalidConfig("run: phi1 must be finite");
    if (cfg.phi2 && !std::isfinite(*cfg.phi2))
        throw InvalidConfig("run: phi2 must be finite");
    if (cfg.peak_counts && (!(*cfg.peak_counts > 0.0) || !std::isfinite(*cfg.peak_counts)))
        throw InvalidConfig("run: peak count mean must be positive and finite");
}

// Execute one command and return the document it emits. The fit command takes
// its CSV input text through csv_input (the binary reads file or stdin).
inline std::string run(const RunConfig& cfg, const std::string& csv_input = {}) {
    validate(cfg);
    switch (cfg.command) {
        case Command::Sweep: return detail::run_sweep(cfg);
        case Command::Fringes: return detail::run_fringes(cfg);
        case Command::Fit: return detail::run_fit(cfg, csv_input);
        case Command::SolidAngle: return detail::run_solid_angle(cfg);
        case Command::Compare: return detail::run_compare(cfg);
        case Command::PathExport: return detail::run_path_export(cfg);
    }
    throw InternalError("run: unreachable command");
}

}  // namespace geomphase
