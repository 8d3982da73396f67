// helixqm: spectra, wavefunctions and geometry of deformed helical wires.

#include "helixqm/helixqm.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

enum Exit { Ok = 0, ConfigFailure = 2, SolverFailure = 3, IoFailure = 4 };

struct Overrides {
    std::string config_path;
    std::string curve;
    std::string a, phi0, c0, c1, phi_min, phi_max;
    std::optional<std::size_t> grid, states;
    std::string hamiltonians;
    std::string out;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration");
    cmd->add_option("--curve", o.curve, "bulging_helix | stretched_helix | squeezed_helix | regular_helix | ellipse");
    cmd->add_option("--a", o.a, "deformation amplitude (accepts e.g. 0.5 or 4pi)");
    cmd->add_option("--phi0", o.phi0, "bulge width");
    cmd->add_option("--c0", o.c0, "squeezed helix constant term");
    cmd->add_option("--c1", o.c1, "squeezed helix slope");
    cmd->add_option("--phi-min", o.phi_min, "left wire end");
    cmd->add_option("--phi-max", o.phi_max, "right wire end");
    cmd->add_option("--grid", o.grid, "interior grid points N");
    cmd->add_option("--states", o.states, "number of states k (1..16)");
    cmd->add_option("--hamiltonians", o.hamiltonians, "comma list of EM1,EM2,GEO,JWKB,JWKB_GEO");
    cmd->add_option("--out", o.out, "output directory");
}

helixqm::RunConfig resolve(const Overrides& o) {
    using namespace helixqm;
    RunConfig c;
    if (!o.config_path.empty()) {
        c = load_config(o.config_path);
    } else if (o.curve.empty()) {
        throw ConfigError("either --config or --curve is required");
    }
    if (!o.curve.empty()) {
        const auto family = family_from_string(o.curve);
        if (!family) throw ConfigError("unknown curve family '" + o.curve + "'");
        if (o.config_path.empty() || *family != c.family) c.set_family(*family);
    }
    const std::pair<const char*, const std::string*> params[] = {
        {"a", &o.a}, {"phi0", &o.phi0}, {"c0", &o.c0}, {"c1", &o.c1}};
    for (const auto& [name, text] : params)
        if (!text->empty()) set_param(c, name, parse_real(*text));
    if (!o.phi_min.empty()) c.phi_min = parse_real(o.phi_min);
    if (!o.phi_max.empty()) c.phi_max = parse_real(o.phi_max);
    if (o.grid) c.grid_points = *o.grid;
    if (o.states) c.states = *o.states;
    if (!o.hamiltonians.empty()) c.hamiltonians = parse_method_list(o.hamiltonians);
    if (!o.out.empty()) c.out_dir = o.out;
    c.validate();
    return c;
}

} // namespace

int main(int argc, char** argv) {
    using namespace helixqm;
    CLI::App app{"Quantum spectra on deformed helical wires"};
    app.require_subcommand(1);

    Overrides o;
    auto* spectrum = app.add_subcommand("spectrum", "lowest eigenvalues per Hamiltonian (spectrum.csv, spectrum.txt)");
    auto* wavefunctions = app.add_subcommand("wavefunctions", "eigenstates on the phi grid (wavefunctions.csv)");
    auto* geometry = app.add_subcommand("geometry", "mass, curvature, arc length and potentials (geometry.csv)");
    auto* converge = app.add_subcommand("converge", "N, 2N, 4N study with Richardson extrapolation (converge.csv)");
    auto* run = app.add_subcommand("run", "every output listed in the config");
    for (auto* cmd : {spectrum, wavefunctions, geometry, converge, run}) add_common_options(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : ConfigFailure;
    }

    try {
        const RunConfig config = resolve(o);
        if (*spectrum) {
            std::cout << cmd_spectrum(config).table;
        } else if (*wavefunctions) {
            cmd_wavefunctions(config);
        } else if (*geometry) {
            cmd_geometry(config);
        } else if (*converge) {
            const auto report = cmd_converge(config);
            std::cout << report.csv;
            if (!report.all_orders_ok()) {
                std::cerr << "observed convergence order outside [1.5, 2.5]\n";
                return SolverFailure;
            }
        } else if (*run) {
            for (OutputKind kind : config.outputs) {
                switch (kind) {
                case OutputKind::Spectrum: std::cout << cmd_spectrum(config).table; break;
                case OutputKind::Wavefunctions: cmd_wavefunctions(config); break;
                case OutputKind::Potentials: cmd_potentials(config); break;
                case OutputKind::Geometry: cmd_geometry(config); break;
                }
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return SolverFailure;
    } catch (const IoError& e) {
        std::cerr << "i/o failure: " << e.what() << '\n';
        return IoFailure;
    }
    return Ok;
}
