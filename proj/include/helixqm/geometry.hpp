/**
 * @file geometry.hpp
 * @brief Effective mass, curvature, arc length and the scalar potentials of
 *        the three Hamiltonians. Units: hbar = m0 = R = 1.
 */
#pragma once

#include "helixqm/curve.hpp"
#include "helixqm/errors.hpp"
#include "helixqm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace helixqm {

/// m(phi) and its first two phi-derivatives, in units of m0 R^2.
struct MassJet {
    double m = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

/// Effective mass. The value follows the radial-factor expression; the
/// derivatives follow from m = |r'|^2 by the chain rule on the analytic
/// coordinate jets, so no sampled m is ever differenced.
inline MassJet effective_mass_unchecked(const CurveSpec& spec, double phi) {
    const auto r = spec.coordinates(phi, 3, false);
    MassJet out;
    if (spec.has_radial_form()) {
        const auto [fx, fy, fz] = spec.radial_jets(phi, false);
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        out.m = CurveSpec::R * CurveSpec::R *
                ((fx[1] * fx[1] + fy[0] * fy[0]) * c * c + (fx[0] * fx[0] + fy[1] * fy[1]) * s * s +
                 (fx[0] * fx[1] - fy[0] * fy[1]) * std::sin(2.0 * phi) + fz[1] * fz[1]);
    } else {
        out.m = dot(r[1], r[1]);
    }
    out.m1 = 2.0 * dot(r[1], r[2]);
    out.m2 = 2.0 * (dot(r[2], r[2]) + dot(r[1], r[3]));
    return out;
}

inline void check_in_range(const CurveSpec& spec, double phi) {
    if (!(phi >= spec.phi_min() && phi <= spec.phi_max())) throw DomainError("phi outside [phi_min, phi_max]");
}

inline MassJet effective_mass(const CurveSpec& spec, double phi) {
    check_in_range(spec, phi);
    return effective_mass_unchecked(spec, phi);
}

inline constexpr double degenerate_speed_sq = 1e-14;

/// Frenet curvature squared from first and second coordinate derivatives.
inline double curvature_sq(const CurveSpec& spec, double phi) {
    check_in_range(spec, phi);
    const auto r = spec.coordinates(phi, 2, false);
    const Vec3 d1 = r[1];
    const Vec3 d2 = r[2];
    const double speed_sq = dot(d1, d1);
    if (speed_sq < degenerate_speed_sq) throw DomainError("degenerate parametrization: |r'| vanishes");
    const double cx = d2.z * d1.y - d2.y * d1.z;
    const double cy = d2.x * d1.z - d2.z * d1.x;
    const double cz = d2.y * d1.x - d2.x * d1.y;
    return (cx * cx + cy * cy + cz * cz) / (speed_sq * speed_sq * speed_sq);
}

/// Curvature squared rewritten through m, m', m'' and r'.r'''.
inline double curvature_sq_via_mass(const CurveSpec& spec, double phi) {
    check_in_range(spec, phi);
    const auto r = spec.coordinates(phi, 3, false);
    const MassJet mj = effective_mass_unchecked(spec, phi);
    if (mj.m < degenerate_speed_sq) throw DomainError("degenerate parametrization: |r'| vanishes");
    const double m = mj.m;
    return (0.5 * m * mj.m2 - 0.25 * mj.m1 * mj.m1 - m * dot(r[1], r[3])) / (m * m * m);
}

/// Integrand of the arc length, ds/dphi = sqrt(m/m0).
inline double arc_speed(const CurveSpec& spec, double phi) {
    return std::sqrt(effective_mass_unchecked(spec, phi).m);
}

/// s(phi) measured from phi_min by adaptive quadrature (absolute tolerance 1e-10).
inline double arc_length(const CurveSpec& spec, double phi) {
    check_in_range(spec, phi);
    auto f = [&spec](double t) { return arc_speed(spec, t); };
    return quad::integrate(f, spec.phi_min(), phi, quad::default_tolerance).value;
}

/// Term added to -(1/2m) d^2/dphi^2 once the first-derivative term of the
/// mass-between-momenta ordering is removed.
inline double potential_em1(const MassJet& mj) {
    return -(mj.m2 - 1.5 * mj.m1 * mj.m1 / mj.m) / (4.0 * mj.m * mj.m);
}

/// Difference between the two orderings: (1/4) d^2(1/m)/dphi^2.
inline double potential_vem2(const MassJet& mj) {
    return (mj.m2 - 2.0 * mj.m1 * mj.m1 / mj.m) / (4.0 * mj.m * mj.m);
}

inline double potential_geo_from_kappa2(double kappa2) { return -kappa2 / 8.0; }

inline double potential_em1(const CurveSpec& spec, double phi) { return potential_em1(effective_mass(spec, phi)); }

inline double potential_vem2(const CurveSpec& spec, double phi) { return potential_vem2(effective_mass(spec, phi)); }

/// Geometric potential -kappa^2/8; never positive.
inline double potential_geo(const CurveSpec& spec, double phi) {
    return potential_geo_from_kappa2(curvature_sq(spec, phi));
}

/// Non-derivative part of the geometric Hamiltonian written in phi on the
/// reduced wavefunction: m''/(8m^2) - 7m'^2/(32m^3) - kappa^2/8.
inline double potential_geo_reduced(const CurveSpec& spec, double phi) {
    const MassJet mj = effective_mass(spec, phi);
    return mj.m2 / (8.0 * mj.m * mj.m) - 7.0 * mj.m1 * mj.m1 / (32.0 * mj.m * mj.m * mj.m) + potential_geo(spec, phi);
}

/// Sampled geometry on a uniform phi grid of N+2 points (walls included),
/// plus a dense cumulative arc-length table used to invert s(phi).
class GeometryProfile {
public:
    static GeometryProfile build(const CurveSpec& spec, std::size_t interior_points) {
        if (interior_points < 1) throw DomainError("geometry profile needs at least one interior point");
        return GeometryProfile(spec, interior_points);
    }

    const CurveSpec& spec() const { return spec_; }
    std::size_t interior_points() const { return grid.size() - 2; }

    /// s(phi) from the cumulative table plus one local quadrature.
    double arc_length_at(double phi) const {
        check_in_range(spec_, phi);
        if (phi == spec_.phi_max()) return total_length;
        const std::size_t cell = locate_cell(phi);
        auto f = [this](double t) { return arc_speed(spec_, t); };
        return table_s_[cell] + quad::integrate(f, table_phi_[cell], phi, 1e-13).value;
    }

    /// Inverse of arc_length_at: table bracketing, then safeguarded Newton with s' = sqrt(m).
    double phi_of_s(double s) const {
        if (!(s >= 0.0 && s <= total_length)) throw DomainError("arc length outside [0, L]");
        if (s == 0.0) return spec_.phi_min();
        if (s == total_length) return spec_.phi_max();
        auto it = std::upper_bound(table_s_.begin(), table_s_.end(), s);
        std::size_t cell = static_cast<std::size_t>(std::distance(table_s_.begin(), it));
        cell = std::clamp<std::size_t>(cell, 1, table_s_.size() - 1) - 1;
        const double base = table_phi_[cell];
        double lo = base;
        double hi = table_phi_[cell + 1];
        const double s_lo = table_s_[cell];
        auto f = [this](double t) { return arc_speed(spec_, t); };

        double phi = lo + (hi - lo) * (s - s_lo) / std::max(table_s_[cell + 1] - s_lo, 1e-300);
        for (int iter = 0; iter < 50; ++iter) {
            const double residual = s_lo + quad::integrate(f, base, phi, 1e-14).value - s;
            if (std::abs(residual) < 1e-13 * std::max(1.0, total_length)) break;
            if (residual > 0.0) hi = phi; else lo = phi;
            double next = phi - residual / arc_speed(spec_, phi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (next == phi) break;
            phi = next;
        }
        return phi;
    }

    std::vector<double> grid;
    std::vector<double> m, m1, m2;
    std::vector<double> kappa2;
    std::vector<double> arclen;
    double total_length = 0.0;

private:
    GeometryProfile(const CurveSpec& spec, std::size_t n) : spec_(spec) {
        const double lo = spec.phi_min();
        const double hi = spec.phi_max();
        total_length = arc_length(spec, hi);

        const std::size_t cells = std::max<std::size_t>(10 * n, 1000);
        table_phi_.resize(cells + 1);
        table_s_.resize(cells + 1);
        auto f = [this](double t) { return arc_speed(spec_, t); };
        table_phi_[0] = lo;
        table_s_[0] = 0.0;
        for (std::size_t i = 1; i <= cells; ++i) {
            table_phi_[i] = symmetric_node(lo, hi, i, cells);
            table_s_[i] = table_s_[i - 1] + quad::integrate(f, table_phi_[i - 1], table_phi_[i], 1e-14).value;
        }
        // Pin the table end to the directly integrated length so both agree at phi_max.
        table_s_.back() = total_length;

        grid.resize(n + 2);
        m.resize(n + 2);
        m1.resize(n + 2);
        m2.resize(n + 2);
        kappa2.resize(n + 2);
        arclen.resize(n + 2);
        for (std::size_t i = 0; i < n + 2; ++i) {
            const double phi = symmetric_node(lo, hi, i, n + 1);
            grid[i] = phi;
            const MassJet mj = effective_mass_unchecked(spec, phi);
            m[i] = mj.m;
            m1[i] = mj.m1;
            m2[i] = mj.m2;
            kappa2[i] = curvature_sq(spec, phi);
            arclen[i] = arc_length_at(phi);
        }
    }

    std::size_t locate_cell(double phi) const {
        auto it = std::upper_bound(table_phi_.begin(), table_phi_.end(), phi);
        std::size_t idx = static_cast<std::size_t>(std::distance(table_phi_.begin(), it));
        return std::clamp<std::size_t>(idx, 1, table_phi_.size() - 1) - 1;
    }

    CurveSpec spec_;
    std::vector<double> table_phi_;
    std::vector<double> table_s_;
};

inline double phi_of_s(const GeometryProfile& profile, double s) { return profile.phi_of_s(s); }

} // namespace helixqm
