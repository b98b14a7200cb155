// geomphase: two-loop interferometer geometric-phase toolkit.
//
// Subcommands map onto the library's command layer; every command writes one
// CSV or JSON document to --output (default stdout). Exit codes: 0 success,
// 1 computation error (code printed to stderr), 2 usage error.

#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <geomphase/run.hpp>

namespace {

struct CliState {
    geomphase::RunConfig cfg;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double peak_counts = 0.0;
    std::string output;
    std::string format = "csv";
};

void add_output_options(CLI::App& sub, CliState& st) {
    sub.add_option("-o,--output", st.output, "Output file (default: stdout)");
    sub.add_option("--format", st.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub.add_flag("--degrees", st.cfg.degrees,
                 "Emit angles in degrees (storage and math stay in radians)");
}

void add_transmission_option(CLI::App& sub, CliState& st) {
    sub.add_option("--T", st.cfg.T, "Absorber intensity transmission, in [0, 1]")
        ->capture_default_str();
}

void add_dphi_option(CLI::App& sub, CliState& st) {
    sub.add_option("--dphi", st.cfg.dphi, "Loop phase difference phi2 - phi1 (radians)")
        ->capture_default_str();
}

void add_samples_option(CLI::App& sub, CliState& st) {
    sub.add_option("--samples-per-segment", st.cfg.samples_per_segment,
                   "Quadrature samples per path segment")
        ->capture_default_str();
}

void add_full_path_flag(CLI::App& sub, CliState& st) {
    sub.add_flag("--full-path", st.cfg.full_path,
                 "Include the excursion from the source point to the loop and back");
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw geomphase::InvalidConfig("cannot open input file: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& doc) {
    if (path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw geomphase::InvalidConfig("cannot open output file: " + path);
    out << doc;
    if (!out) throw geomphase::InternalError("failed writing output file: " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CliState st;
    CLI::App app{"Geometric phase toolkit for a two-loop interferometer"};
    app.require_subcommand(1);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Total/dynamical/geometric phase over a [0, 2pi] grid of dphi");
    add_transmission_option(*sweep, st);
    sweep->add_option("--points", st.cfg.points, "Grid points, endpoints included")
        ->capture_default_str();
    add_output_options(*sweep, st);

    CLI::App* fringes = app.add_subcommand(
        "fringes", "Synthesize a detector fringe scan, optionally Poisson-sampled");
    add_transmission_option(*fringes, st);
    add_dphi_option(*fringes, st);
    CLI::Option* p1 = fringes->add_option(
        "--phi1", st.phi1, "Phase on the upper path (default: zero-dynamical split of dphi)");
    CLI::Option* p2 = fringes->add_option(
        "--phi2", st.phi2, "Phase on the lower path (default: zero-dynamical split of dphi)");
    p1->needs(p2);
    p2->needs(p1);
    fringes->add_option("--eta-points", st.cfg.eta_points, "Scan settings over [0, 2pi)")
        ->capture_default_str();
    fringes->add_option("--c-up", st.cfg.contrast.c_up, "Upper-path contrast factor")
        ->capture_default_str();
    fringes->add_option("--c-down", st.cfg.contrast.c_down, "Lower-path contrast factor")
        ->capture_default_str();
    fringes->add_option("--visibility", st.cfg.contrast.v, "Fringe visibility factor")
        ->capture_default_str();
    CLI::Option* pk = fringes->add_option(
        "--peak-counts", st.peak_counts, "Poisson-sample with this mean count at the peak");
    fringes->add_option("--seed", st.cfg.seed, "Sampling seed")->capture_default_str();
    add_output_options(*fringes, st);

    CLI::App* fit = app.add_subcommand(
        "fit", "Fit offset + amplitude*cos(eta - phase) to a fringe scan CSV");
    fit->add_option("input", st.cfg.input, "Scan CSV (eta_rad/eta_deg and intensity columns); - for stdin")
        ->required();
    add_output_options(*fit, st);

    CLI::App* solid = app.add_subcommand(
        "solid-angle", "Signed solid angle of the closed Bloch loop and its phase");
    add_transmission_option(*solid, st);
    add_dphi_option(*solid, st);
    add_samples_option(*solid, st);
    add_full_path_flag(*solid, st);
    add_output_options(*solid, st);

    CLI::App* compare = app.add_subcommand(
        "compare", "Interferometric vs solid-angle geometric phase over a dphi grid");
    add_transmission_option(*compare, st);
    compare->add_option("--points", st.cfg.points, "Grid points, endpoints included")
        ->capture_default_str();
    add_samples_option(*compare, st);
    add_output_options(*compare, st);

    CLI::App* path = app.add_subcommand(
        "path-export", "Sampled Bloch-sphere loop as plot-ready points");
    add_transmission_option(*path, st);
    add_dphi_option(*path, st);
    add_samples_option(*path, st);
    add_full_path_flag(*path, st);
    add_output_options(*path, st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using geomphase::Command;
    if (sweep->parsed()) st.cfg.command = Command::Sweep;
    if (fringes->parsed()) {
        st.cfg.command = Command::Fringes;
        if (p1->count()) st.cfg.phi1 = st.phi1;
        if (p2->count()) st.cfg.phi2 = st.phi2;
        if (pk->count()) st.cfg.peak_counts = st.peak_counts;
    }
    if (fit->parsed()) st.cfg.command = Command::Fit;
    if (solid->parsed()) st.cfg.command = Command::SolidAngle;
    if (compare->parsed()) st.cfg.command = Command::Compare;
    if (path->parsed()) st.cfg.command = Command::PathExport;
    st.cfg.format = st.format == "json" ? geomphase::Format::Json : geomphase::Format::Csv;

    try {
        std::string input;
        if (st.cfg.command == Command::Fit) input = read_input(st.cfg.input);
        write_output(st.output, geomphase::run(st.cfg, input));
    } catch (const geomphase::Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
