/**
 * @file operators.hpp
 * @brief Hamiltonians as real symmetric tridiagonal matrices on uniform grids
 *        with hard walls at both wire ends.
 *
 * The wall nodes are dropped, so an operator of size N acts on the interior
 * values of the full wavefunction. EM1 and EM2 live on a phi grid, GEO on a
 * uniform arc-length grid.
 */
#pragma once

#include "helixqm/errors.hpp"
#include "helixqm/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

namespace helixqm {

enum class Coordinate { Phi, ArcLength };

enum class HamiltonianLabel { EM1, EM2, GEO };

inline std::string_view to_string(HamiltonianLabel label) {
    switch (label) {
    case HamiltonianLabel::EM1: return "EM1";
    case HamiltonianLabel::EM2: return "EM2";
    case HamiltonianLabel::GEO: return "GEO";
    }
    return "?";
}

struct TridiagonalOperator {
    std::vector<double> diag;     ///< length N
    std::vector<double> offdiag;  ///< length N-1
    double grid_spacing = 0.0;    ///< h in the solve coordinate
    Coordinate coordinate = Coordinate::Phi;
    HamiltonianLabel label = HamiltonianLabel::EM1;
    std::vector<double> nodes;      ///< interior nodes in the solve coordinate
    std::vector<double> phi_nodes;  ///< the same nodes expressed as phi
    /// Optional split diag[i] = links[i] + links[i+1] + onsite[i], offdiag[i] = -links[i+1].
    /// links has N+1 entries (the first and last couple to the walls). When present,
    /// Sturm counts avoid the cancellation in diag - offdiag that limits small eigenvalues.
    std::vector<double> links;
    std::vector<double> onsite;

    std::size_t size() const { return diag.size(); }

    /// y = H x
    std::vector<double> apply(const std::vector<double>& x) const {
        const std::size_t n = size();
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0) v += offdiag[i - 1] * x[i - 1];
            if (i + 1 < n) v += offdiag[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }

    bool all_finite() const {
        for (double d : diag)
            if (!std::isfinite(d)) return false;
        for (double e : offdiag)
            if (!std::isfinite(e)) return false;
        return true;
    }
};

inline constexpr std::size_t min_operator_size = 16;

namespace detail {

inline void check_size(std::size_t n) {
    if (n < min_operator_size) throw DomainError("operators need at least 16 interior points");
}

inline TridiagonalOperator phi_operator_skeleton(const CurveSpec& spec, std::size_t n, HamiltonianLabel label) {
    check_size(n);
    TridiagonalOperator op;
    op.label = label;
    op.coordinate = Coordinate::Phi;
    op.grid_spacing = (spec.phi_max() - spec.phi_min()) / static_cast<double>(n + 1);
    op.diag.resize(n);
    op.offdiag.resize(n - 1);
    op.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) op.nodes[i] = symmetric_node(spec.phi_min(), spec.phi_max(), i + 1, n + 1);
    op.phi_nodes = op.nodes;
    return op;
}

inline void assemble(TridiagonalOperator& op, std::vector<double> links, std::vector<double> onsite) {
    const std::size_t n = onsite.size();
    for (std::size_t i = 0; i < n; ++i) {
        op.diag[i] = links[i] + links[i + 1] + onsite[i];
        if (i + 1 < n) op.offdiag[i] = -links[i + 1];
    }
    op.links = std::move(links);
    op.onsite = std::move(onsite);
}

} // namespace detail

/// -(1/2) d/dphi (1/m) d/dphi in flux form. Inverse masses are taken from the
/// analytic m at cell midpoints.
inline TridiagonalOperator build_em1(const GeometryProfile& profile, std::size_t n) {
    const CurveSpec& spec = profile.spec();
    TridiagonalOperator op = detail::phi_operator_skeleton(spec, n, HamiltonianLabel::EM1);
    const double h = op.grid_spacing;
    const double scale = 1.0 / (2.0 * h * h);

    std::vector<double> w(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        // midpoint between node j and j+1 of the full grid
        const double mid = symmetric_node(spec.phi_min(), spec.phi_max(), 2 * j + 1, 2 * (n + 1));
        w[j] = 1.0 / effective_mass_unchecked(spec, mid).m;
    }
    for (double& x : w) x *= scale;
    detail::assemble(op, std::move(w), std::vector<double>(n, 0.0));
    return op;
}

/// -(1/4)(D2 W + W D2) with W = diag(1/m) at the nodes.
inline TridiagonalOperator build_em2(const GeometryProfile& profile, std::size_t n) {
    const CurveSpec& spec = profile.spec();
    TridiagonalOperator op = detail::phi_operator_skeleton(spec, n, HamiltonianLabel::EM2);
    const double h = op.grid_spacing;

    // w over the full grid including the wall nodes
    std::vector<double> w(n + 2);
    w[0] = 1.0 / effective_mass_unchecked(spec, spec.phi_min()).m;
    w[n + 1] = 1.0 / effective_mass_unchecked(spec, spec.phi_max()).m;
    for (std::size_t i = 0; i < n; ++i) w[i + 1] = 1.0 / effective_mass_unchecked(spec, op.nodes[i]).m;
    std::vector<double> links(n + 1), onsite(n);
    for (std::size_t j = 0; j <= n; ++j) links[j] = (w[j] + w[j + 1]) / (4.0 * h * h);
    for (std::size_t i = 0; i < n; ++i) onsite[i] = (2.0 * w[i + 1] - w[i] - w[i + 2]) / (4.0 * h * h);
    detail::assemble(op, std::move(links), std::move(onsite));
    return op;
}

/// -(1/2) d^2/ds^2 - kappa^2/8 on a uniform arc-length grid over [0, L].
inline TridiagonalOperator build_geo(const GeometryProfile& profile, std::size_t n) {
    detail::check_size(n);
    const CurveSpec& spec = profile.spec();
    const double length = profile.total_length;

    TridiagonalOperator op;
    op.label = HamiltonianLabel::GEO;
    op.coordinate = Coordinate::ArcLength;
    op.grid_spacing = length / static_cast<double>(n + 1);
    const double h = op.grid_spacing;
    op.diag.resize(n);
    op.offdiag.resize(n - 1);
    op.nodes.resize(n);
    op.phi_nodes.resize(n);
    std::vector<double> onsite(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = symmetric_node(0.0, length, i + 1, n + 1);
        const double phi = profile.phi_of_s(s);
        op.nodes[i] = s;
        op.phi_nodes[i] = phi;
        onsite[i] = potential_geo_from_kappa2(curvature_sq(spec, phi));
    }
    detail::assemble(op, std::vector<double>(n + 1, 1.0 / (2.0 * h * h)), std::move(onsite));
    return op;
}

inline TridiagonalOperator build_operator(const GeometryProfile& profile, HamiltonianLabel label, std::size_t n) {
    switch (label) {
    case HamiltonianLabel::EM1: return build_em1(profile, n);
    case HamiltonianLabel::EM2: return build_em2(profile, n);
    case HamiltonianLabel::GEO: return build_geo(profile, n);
    }
    throw DomainError("unknown Hamiltonian label");
}

/// Scalar potential each Hamiltonian carries when written in phi on the
/// reduced wavefunction, sampled on the profile grid. For reporting only.
inline std::vector<double> reduced_potential_profile(const GeometryProfile& profile, HamiltonianLabel label) {
    const std::size_t count = profile.grid.size();
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const MassJet mj{profile.m[i], profile.m1[i], profile.m2[i]};
        switch (label) {
        case HamiltonianLabel::EM1: v[i] = potential_em1(mj); break;
        case HamiltonianLabel::EM2: v[i] = potential_em1(mj) - potential_vem2(mj); break;
        case HamiltonianLabel::GEO:
            v[i] = mj.m2 / (8.0 * mj.m * mj.m) - 7.0 * mj.m1 * mj.m1 / (32.0 * mj.m * mj.m * mj.m) +
                   potential_geo_from_kappa2(profile.kappa2[i]);
            break;
        }
    }
    return v;
}

} // namespace helixqm
