/**
 * @file commands.hpp
 * @brief The work behind each CLI subcommand. Every command computes its
 *        result in memory, then writes all files at the end.
 */
#pragma once

#include "helixqm/config.hpp"
#include "helixqm/eigen.hpp"
#include "helixqm/errors.hpp"
#include "helixqm/geometry.hpp"
#include "helixqm/jwkb.hpp"
#include "helixqm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace helixqm {

/// Nine significant digits, scientific.
inline std::string format_csv(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

/// Three significant digits, as in printed tables.
inline std::string format_table(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

inline std::optional<HamiltonianLabel> numeric_label(Method m) {
    switch (m) {
    case Method::EM1: return HamiltonianLabel::EM1;
    case Method::EM2: return HamiltonianLabel::EM2;
    case Method::GEO: return HamiltonianLabel::GEO;
    default: return std::nullopt;
    }
}

struct SpectrumRow {
    Method method = Method::EM1;
    std::vector<double> energies;  ///< absolute, ascending

    double ground() const { return energies.front(); }
    double excitation(std::size_t n) const { return energies[n] - energies.front(); }
};

struct SpectrumReport {
    std::vector<SpectrumRow> rows;
    double length = 0.0;
    std::string csv;
    std::string table;
};

inline std::vector<double> method_energies(const GeometryProfile& profile, Method m, std::size_t n, std::size_t k) {
    if (auto label = numeric_label(m)) return lowest_eigenpairs(build_operator(profile, *label, n), k).energies;
    if (m == Method::JWKB) return jwkb_energies(profile, k).energies();
    return jwkb_with_potential(profile, k).energies();
}

inline std::string spectrum_csv(const std::vector<SpectrumRow>& rows, std::size_t k) {
    std::ostringstream out;
    out << "hamiltonian,E1";
    for (std::size_t n = 2; n <= k; ++n) out << ",E" << n << "-E1";
    out << '\n';
    for (const auto& row : rows) {
        out << to_string(row.method) << ',' << format_csv(row.ground());
        for (std::size_t n = 1; n < row.energies.size(); ++n) out << ',' << format_csv(row.excitation(n));
        out << '\n';
    }
    return out.str();
}

inline std::string spectrum_table(const std::vector<SpectrumRow>& rows, std::size_t k) {
    std::ostringstream out;
    char cell[64];
    std::snprintf(cell, sizeof cell, "%-12s", "state");
    out << cell;
    for (const auto& row : rows) {
        std::snprintf(cell, sizeof cell, " %11s", to_string(row.method).c_str());
        out << cell;
    }
    out << '\n';
    for (std::size_t n = 0; n < k; ++n) {
        const std::string name = n == 0 ? "ground" : "excited " + std::to_string(n);
        std::snprintf(cell, sizeof cell, "%-12s", name.c_str());
        out << cell;
        for (const auto& row : rows) {
            const std::string v = n < row.energies.size() ? format_table(n == 0 ? row.ground() : row.excitation(n)) : "-";
            std::snprintf(cell, sizeof cell, " %11s", v.c_str());
            out << cell;
        }
        out << '\n';
    }
    return out.str();
}

/// Ground energy and excitation energies per requested Hamiltonian.
inline SpectrumReport compute_spectrum(const RunConfig& config) {
    config.validate();
    const auto profile = GeometryProfile::build(config.curve(), config.grid_points);
    SpectrumReport report;
    report.length = profile.total_length;
    for (Method m : config.hamiltonians)
        report.rows.push_back({m, method_energies(profile, m, config.grid_points, config.states)});
    report.csv = spectrum_csv(report.rows, config.states);
    report.table = spectrum_table(report.rows, config.states);
    return report;
}

inline SpectrumReport cmd_spectrum(const RunConfig& config) {
    auto report = compute_spectrum(config);
    write_file(config.out_dir / "spectrum.csv", report.csv);
    write_file(config.out_dir / "spectrum.txt", report.table);
    return report;
}

struct WavefunctionTable {
    std::vector<double> phi;                   ///< N+2 uniform nodes, walls included
    std::vector<std::string> columns;          ///< e.g. "EM1_1"
    std::vector<std::vector<double>> values;   ///< one vector per column
    std::string csv;

    const std::vector<double>& column(const std::string& name) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == name) return values[c];
        throw DomainError("no wavefunction column " + name);
    }
};

namespace detail {

/// Linear interpolation of a wall-padded state given on uniform nodes in [0, length].
inline double interpolate_uniform(const std::vector<double>& padded, double length, double x) {
    const std::size_t cells = padded.size() - 1;
    const double t = std::clamp(x / length, 0.0, 1.0) * static_cast<double>(cells);
    const std::size_t i = std::min(static_cast<std::size_t>(t), cells - 1);
    const double frac = t - static_cast<double>(i);
    return (1.0 - frac) * padded[i] + frac * padded[i + 1];
}

inline std::vector<double> pad_with_walls(const std::vector<double>& interior) {
    std::vector<double> out(interior.size() + 2, 0.0);
    std::copy(interior.begin(), interior.end(), out.begin() + 1);
    return out;
}

} // namespace detail

/// States of every requested Hamiltonian on the uniform phi grid. EM1/EM2 are
/// the solver vectors; GEO vectors are carried from the s grid by linear
/// interpolation at s(phi); JWKB states are evaluated directly.
inline WavefunctionTable compute_wavefunctions(const RunConfig& config) {
    config.validate();
    const auto profile = GeometryProfile::build(config.curve(), config.grid_points);
    const std::size_t n = config.grid_points;
    const std::size_t k = config.states;
    WavefunctionTable table;
    table.phi = profile.grid;

    for (Method m : config.hamiltonians) {
        const std::string prefix = to_string(m) + "_";
        if (auto label = numeric_label(m)) {
            const auto sol = lowest_eigenpairs(build_operator(profile, *label, n), k);
            for (std::size_t j = 0; j < k; ++j) {
                const auto padded = detail::pad_with_walls(sol.vectors[j]);
                std::vector<double> col(profile.grid.size());
                if (*label == HamiltonianLabel::GEO) {
                    for (std::size_t i = 0; i < col.size(); ++i)
                        col[i] = detail::interpolate_uniform(padded, profile.total_length, profile.arclen[i]);
                    col.front() = 0.0;
                    col.back() = 0.0;
                } else {
                    col = padded;
                }
                table.columns.push_back(prefix + std::to_string(j + 1));
                table.values.push_back(std::move(col));
            }
        } else if (m == Method::JWKB) {
            for (std::size_t j = 0; j < k; ++j) {
                const JwkbBoxState state(profile, static_cast<int>(j + 1));
                std::vector<double> col(profile.grid.size());
                for (std::size_t i = 0; i < col.size(); ++i) col[i] = state(profile.grid[i]);
                table.columns.push_back(prefix + std::to_string(j + 1));
                table.values.push_back(std::move(col));
            }
        } else {
            const auto spectrum = jwkb_with_potential(profile, k);
            for (std::size_t j = 0; j < spectrum.levels.size(); ++j) {
                const JwkbRegionState state(profile, spectrum.levels[j], spectrum.potential);
                std::vector<double> col(profile.grid.size());
                for (std::size_t i = 0; i < col.size(); ++i) col[i] = state(profile.grid[i]);
                table.columns.push_back(prefix + std::to_string(j + 1));
                table.values.push_back(std::move(col));
            }
        }
    }

    std::ostringstream out;
    out << "phi";
    for (const auto& c : table.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < table.phi.size(); ++i) {
        out << format_csv(table.phi[i]);
        for (const auto& col : table.values) out << ',' << format_csv(col[i]);
        out << '\n';
    }
    table.csv = out.str();
    return table;
}

inline WavefunctionTable cmd_wavefunctions(const RunConfig& config) {
    auto table = compute_wavefunctions(config);
    write_file(config.out_dir / "wavefunctions.csv", table.csv);
    return table;
}

struct GeometryTable {
    std::vector<double> phi, m, m1, m2, kappa2, s, v_em1, v_em2, v_geo;
    std::string csv;
};

/// Dense sampling (10 N intervals) of the mass, curvature, arc length and potentials.
inline GeometryTable compute_geometry(const RunConfig& config) {
    config.validate();
    const auto profile = GeometryProfile::build(config.curve(), config.grid_points);
    const CurveSpec& spec = profile.spec();
    const std::size_t cells = 10 * config.grid_points;
    GeometryTable g;
    std::ostringstream out;
    out << "phi[rad],m[m0*R^2],dm/dphi[m0*R^2],d2m/dphi2[m0*R^2],kappa^2[1/R^2],s[R],"
           "V_EM1[hbar^2/(m0*R^2)],V_EM2[hbar^2/(m0*R^2)],V_geo[hbar^2/(m0*R^2)]\n";
    for (std::size_t i = 0; i <= cells; ++i) {
        const double phi = symmetric_node(spec.phi_min(), spec.phi_max(), i, cells);
        const MassJet mj = effective_mass(spec, phi);
        const double k2 = curvature_sq(spec, phi);
        const double row[] = {phi, mj.m, mj.m1, mj.m2, k2, profile.arc_length_at(phi),
                              potential_em1(mj), potential_vem2(mj), potential_geo_from_kappa2(k2)};
        std::vector<double>* cols[] = {&g.phi, &g.m, &g.m1, &g.m2, &g.kappa2, &g.s, &g.v_em1, &g.v_em2, &g.v_geo};
        for (std::size_t c = 0; c < 9; ++c) {
            cols[c]->push_back(row[c]);
            out << (c ? "," : "") << format_csv(row[c]);
        }
        out << '\n';
    }
    g.csv = out.str();
    return g;
}

inline GeometryTable cmd_geometry(const RunConfig& config) {
    auto g = compute_geometry(config);
    write_file(config.out_dir / "geometry.csv", g.csv);
    return g;
}

/// Reduced-wavefunction potentials of the three Hamiltonians on the profile grid.
inline std::string compute_potentials_csv(const RunConfig& config) {
    config.validate();
    const auto profile = GeometryProfile::build(config.curve(), config.grid_points);
    const auto em1 = reduced_potential_profile(profile, HamiltonianLabel::EM1);
    const auto em2 = reduced_potential_profile(profile, HamiltonianLabel::EM2);
    const auto geo = reduced_potential_profile(profile, HamiltonianLabel::GEO);
    std::ostringstream out;
    out << "phi,V_EM1,V_EM2,V_GEO\n";
    for (std::size_t i = 0; i < profile.grid.size(); ++i)
        out << format_csv(profile.grid[i]) << ',' << format_csv(em1[i]) << ',' << format_csv(em2[i]) << ','
            << format_csv(geo[i]) << '\n';
    return out.str();
}

inline void cmd_potentials(const RunConfig& config) {
    write_file(config.out_dir / "potentials.csv", compute_potentials_csv(config));
}

struct ConvergenceEntry {
    Method method = Method::EM1;
    std::string quantity;   ///< "E3" or "E3-E1"
    double e_n = 0.0, e_2n = 0.0, e_4n = 0.0;
    double order = std::numeric_limits<double>::quiet_NaN();  ///< NaN when the differences are at solver precision
    double extrapolated = 0.0;
    double uncertainty = 0.0;
    bool order_checked = false;  ///< absolute energies only

    bool order_ok() const { return !order_checked || std::isnan(order) || (order >= 1.5 && order <= 2.5); }
};

struct ConvergenceReport {
    std::size_t n = 0;
    std::vector<ConvergenceEntry> entries;
    std::string csv;

    bool all_orders_ok() const {
        return std::all_of(entries.begin(), entries.end(), [](const ConvergenceEntry& e) { return e.order_ok(); });
    }
};

/// Richardson step from three grids halving h each time. Falls back to p = 2
/// when the observed order is undefined or far from the stencil's.
inline ConvergenceEntry richardson(double e_n, double e_2n, double e_4n) {
    ConvergenceEntry e;
    e.e_n = e_n;
    e.e_2n = e_2n;
    e.e_4n = e_4n;
    const double d1 = e_n - e_2n;
    const double d2 = e_2n - e_4n;
    const double noise = 1e-11 * std::max(std::abs(e_4n), 1e-300);
    if (std::abs(d2) > noise && std::abs(d1) > noise && d1 / d2 > 0.0) e.order = std::log2(d1 / d2);
    const double p = (!std::isnan(e.order) && e.order >= 1.0 && e.order <= 3.0) ? e.order : 2.0;
    e.extrapolated = e_4n - d2 / (std::pow(2.0, p) - 1.0);
    e.uncertainty = std::abs(e.extrapolated - e_4n);
    return e;
}

/// Solves at N, 2N and 4N. JWKB rows are grid-free and skipped.
inline ConvergenceReport compute_convergence(const RunConfig& config) {
    config.validate();
    const CurveSpec spec = config.curve();
    const std::size_t n = config.grid_points;
    const std::size_t k = config.states;
    ConvergenceReport report;
    report.n = n;

    std::vector<Method> methods;
    for (Method m : config.hamiltonians)
        if (numeric_label(m)) methods.push_back(m);
    if (methods.empty()) throw ConfigError("converge needs at least one of EM1, EM2, GEO");

    std::vector<std::vector<std::vector<double>>> energies(methods.size());
    for (std::size_t level = 0; level < 3; ++level) {
        const std::size_t size = n << level;
        const auto profile = GeometryProfile::build(spec, size);
        for (std::size_t mi = 0; mi < methods.size(); ++mi)
            energies[mi].push_back(method_energies(profile, methods[mi], size, k));
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const auto& e = energies[mi];
        for (std::size_t j = 0; j < k; ++j) {
            auto entry = richardson(e[0][j], e[1][j], e[2][j]);
            entry.method = methods[mi];
            entry.quantity = "E" + std::to_string(j + 1);
            entry.order_checked = true;
            report.entries.push_back(entry);
        }
        for (std::size_t j = 1; j < k; ++j) {
            auto entry = richardson(e[0][j] - e[0][0], e[1][j] - e[1][0], e[2][j] - e[2][0]);
            entry.method = methods[mi];
            entry.quantity = "E" + std::to_string(j + 1) + "-E1";
            report.entries.push_back(entry);
        }
    }

    std::ostringstream out;
    out << "hamiltonian,quantity,E_N,E_2N,E_4N,order,extrapolated,uncertainty\n";
    for (const auto& e : report.entries)
        out << to_string(e.method) << ',' << e.quantity << ',' << format_csv(e.e_n) << ',' << format_csv(e.e_2n) << ','
            << format_csv(e.e_4n) << ',' << (std::isnan(e.order) ? std::string("nan") : format_csv(e.order)) << ','
            << format_csv(e.extrapolated) << ',' << format_csv(e.uncertainty) << '\n';
    report.csv = out.str();
    return report;
}

inline ConvergenceReport cmd_converge(const RunConfig& config) {
    auto report = compute_convergence(config);
    write_file(config.out_dir / "converge.csv", report.csv);
    return report;
}

} // namespace helixqm
