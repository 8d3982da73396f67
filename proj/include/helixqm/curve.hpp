/**
 * @file curve.hpp
 * @brief Parametrized wire families x = f_x cos(phi), y = f_y sin(phi), z = f_z.
 *
 * All lengths are in units of R (R = 1). Named families expose exact analytic
 * derivatives up to third order; the Custom family wraps a user callable and
 * differentiates it with fourth-order central differences.
 */
#pragma once

#include "helixqm/errors.hpp"
#include "helixqm/quadrature.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace helixqm {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

enum class CurveFamily { BulgingHelix, StretchedHelix, SqueezedHelix, RegularHelix, Ellipse, Custom };

inline std::string_view to_string(CurveFamily f) {
    switch (f) {
    case CurveFamily::BulgingHelix: return "bulging_helix";
    case CurveFamily::StretchedHelix: return "stretched_helix";
    case CurveFamily::SqueezedHelix: return "squeezed_helix";
    case CurveFamily::RegularHelix: return "regular_helix";
    case CurveFamily::Ellipse: return "ellipse";
    case CurveFamily::Custom: return "custom";
    }
    return "unknown";
}

inline std::optional<CurveFamily> family_from_string(std::string_view name) {
    for (auto f : {CurveFamily::BulgingHelix, CurveFamily::StretchedHelix, CurveFamily::SqueezedHelix,
                   CurveFamily::RegularHelix, CurveFamily::Ellipse, CurveFamily::Custom})
        if (to_string(f) == name) return f;
    if (name == "bulge") return CurveFamily::BulgingHelix;
    if (name == "stretched") return CurveFamily::StretchedHelix;
    if (name == "squeezed") return CurveFamily::SqueezedHelix;
    if (name == "regular") return CurveFamily::RegularHelix;
    return std::nullopt;
}

/// Parameter names accepted by each named family.
inline const std::vector<std::string>& parameter_names(CurveFamily f) {
    static const std::map<CurveFamily, std::vector<std::string>> names{
        {CurveFamily::BulgingHelix, {"a", "phi0"}},
        {CurveFamily::StretchedHelix, {"a"}},
        {CurveFamily::SqueezedHelix, {"c0", "c1"}},
        {CurveFamily::RegularHelix, {"rho", "pitch"}},
        {CurveFamily::Ellipse, {"fx", "fy", "pitch"}},
        {CurveFamily::Custom, {}},
    };
    return names.at(f);
}

/// Value and first three phi-derivatives of a scalar function.
using Jet = std::array<double, 4>;

/// Position and its first three phi-derivatives.
using CoordJet = std::array<Vec3, 4>;

using CoordinateFunction = std::function<Vec3(double)>;

/// Immutable description of a wire: family, parameters and the phi interval.
class CurveSpec {
public:
    using Params = std::map<std::string, double>;

    /// Validating constructor for the named families. Throws DomainError.
    CurveSpec(CurveFamily family, Params params, double phi_min, double phi_max)
        : family_(family), params_(std::move(params)), phi_min_(phi_min), phi_max_(phi_max) {
        if (family_ == CurveFamily::Custom)
            throw DomainError("custom curves are built with CurveSpec::custom");
        validate();
    }

    static CurveSpec bulging_helix(double a, double phi0, double phi_min = -40.0, double phi_max = 40.0) {
        return {CurveFamily::BulgingHelix, {{"a", a}, {"phi0", phi0}}, phi_min, phi_max};
    }
    static CurveSpec stretched_helix(double a, double phi_min = 0.0, double phi_max = 20.0) {
        return {CurveFamily::StretchedHelix, {{"a", a}}, phi_min, phi_max};
    }
    static CurveSpec squeezed_helix(double c0, double c1, double phi_min = 0.0, double phi_max = 40.0) {
        return {CurveFamily::SqueezedHelix, {{"c0", c0}, {"c1", c1}}, phi_min, phi_max};
    }
    static CurveSpec regular_helix(double rho, double pitch, double phi_min, double phi_max) {
        return {CurveFamily::RegularHelix, {{"rho", rho}, {"pitch", pitch}}, phi_min, phi_max};
    }
    static CurveSpec ellipse(double fx, double fy, double pitch, double phi_min, double phi_max) {
        return {CurveFamily::Ellipse, {{"fx", fx}, {"fy", fy}, {"pitch", pitch}}, phi_min, phi_max};
    }
    /// Arbitrary coordinates; derivatives come from central differences of @p coords.
    static CurveSpec custom(CoordinateFunction coords, double phi_min, double phi_max) {
        CurveSpec spec;
        spec.family_ = CurveFamily::Custom;
        spec.coords_ = std::move(coords);
        spec.phi_min_ = phi_min;
        spec.phi_max_ = phi_max;
        if (!spec.coords_) throw DomainError("custom curve needs a coordinate function");
        spec.validate();
        return spec;
    }

    CurveFamily family() const { return family_; }
    const Params& params() const { return params_; }
    double param(const std::string& name) const { return params_.at(name); }
    double phi_min() const { return phi_min_; }
    double phi_max() const { return phi_max_; }
    /// Overall length scale; fixed to 1.
    static constexpr double R = 1.0;

    bool has_radial_form() const { return family_ != CurveFamily::Custom; }

    /// Radial factors f_x, f_y and the axial function f_z as jets.
    /// f_z[0] is only filled when @p with_fz_value is set (it may need quadrature).
    std::array<Jet, 3> radial_jets(double phi, bool with_fz_value = true) const;

    /// r(phi) and derivatives up to @p order (orders above are left zero).
    /// Without @p with_position the z coordinate itself is left zero, which
    /// spares the squeezed helix a quadrature when only derivatives are needed.
    CoordJet coordinates(double phi, int order = 3, bool with_position = true) const;

private:
    CurveSpec() = default;
    void validate() const;
    double squeezed_u(double phi) const { return param("c0") + param("c1") * phi; }

    CurveFamily family_ = CurveFamily::Custom;
    Params params_;
    double phi_min_ = 0.0;
    double phi_max_ = 0.0;
    CoordinateFunction coords_;
};

inline void CurveSpec::validate() const {
    if (!(std::isfinite(phi_min_) && std::isfinite(phi_max_) && phi_min_ < phi_max_))
        throw DomainError("curve needs finite phi_min < phi_max");
    if (family_ == CurveFamily::Custom) return;

    const auto& expected = parameter_names(family_);
    const std::set<std::string> allowed(expected.begin(), expected.end());
    for (const auto& [name, value] : params_) {
        if (!allowed.count(name))
            throw DomainError("unknown parameter '" + name + "' for " + std::string(to_string(family_)));
        if (!std::isfinite(value)) throw DomainError("parameter '" + name + "' is not finite");
    }
    for (const auto& name : expected)
        if (!params_.count(name))
            throw DomainError("missing parameter '" + name + "' for " + std::string(to_string(family_)));

    switch (family_) {
    case CurveFamily::BulgingHelix:
        if (!(param("phi0") > 0.0)) throw DomainError("bulging helix needs phi0 > 0");
        break;
    case CurveFamily::StretchedHelix:
        if (!(param("a") >= 0.0)) throw DomainError("stretched helix needs a >= 0");
        break;
    case CurveFamily::SqueezedHelix: {
        // c0 + c1*phi is affine, so the endpoints bound it.
        for (double phi : {phi_min_, phi_max_}) {
            const double u = squeezed_u(phi);
            if (!(u > 0.0 && u <= 1.0))
                throw DomainError("squeezed helix needs 0 < c0 + c1*phi <= 1 on the whole interval");
        }
        break;
    }
    default: break;
    }
}

inline std::array<Jet, 3> CurveSpec::radial_jets(double phi, bool with_fz_value) const {
    Jet fx{}, fy{}, fz{};
    switch (family_) {
    case CurveFamily::BulgingHelix: {
        const double a = param("a");
        const double p2 = param("phi0") * param("phi0");
        const double g = std::exp(-phi * phi / p2);
        const double g1 = -2.0 * phi / p2 * g;
        const double g2 = (4.0 * phi * phi / (p2 * p2) - 2.0 / p2) * g;
        const double g3 = (-8.0 * phi * phi * phi / (p2 * p2 * p2) + 12.0 * phi / (p2 * p2)) * g;
        fx = {1.0 + a * g, a * g1, a * g2, a * g3};
        fy = fx;
        fz = {phi, 1.0, 0.0, 0.0};
        break;
    }
    case CurveFamily::StretchedHelix: {
        const double a = param("a");
        fx = fy = {1.0, 0.0, 0.0, 0.0};
        fz = {a * phi * phi, 2.0 * a * phi, 2.0 * a, 0.0};
        break;
    }
    case CurveFamily::SqueezedHelix: {
        const double c1 = param("c1");
        const double u = squeezed_u(phi);
        if (!(u > 0.0 && u <= 1.0))
            throw DomainError("squeezed helix evaluated outside 0 < c0 + c1*phi <= 1");
        // f_z' = sqrt(q), q = 1/u - 1, so that 1 + f_z'^2 = 1/u.
        const double q = 1.0 / u - 1.0;
        const double q1 = -c1 / (u * u);
        const double q2 = 2.0 * c1 * c1 / (u * u * u);
        const double root = std::sqrt(q);
        double d2 = 0.0, d3 = 0.0;
        if (c1 != 0.0) {
            if (q == 0.0) throw DomainError("squeezed helix: f_z'' diverges where c0 + c1*phi = 1");
            d2 = q1 / (2.0 * root);
            d3 = q2 / (2.0 * root) - q1 * q1 / (4.0 * q * root);
        }
        fx = fy = {1.0, 0.0, 0.0, 0.0};
        fz = {0.0, root, d2, d3};
        if (with_fz_value) {
            auto slope = [this](double t) { return std::sqrt(1.0 / squeezed_u(t) - 1.0); };
            fz[0] = quad::integrate(slope, phi_min_, phi, 1e-12).value;
        }
        break;
    }
    case CurveFamily::RegularHelix: {
        const double rho = param("rho");
        const double pitch = param("pitch");
        fx = fy = {rho, 0.0, 0.0, 0.0};
        fz = {pitch * phi, pitch, 0.0, 0.0};
        break;
    }
    case CurveFamily::Ellipse: {
        fx = {param("fx"), 0.0, 0.0, 0.0};
        fy = {param("fy"), 0.0, 0.0, 0.0};
        const double pitch = param("pitch");
        fz = {pitch * phi, pitch, 0.0, 0.0};
        break;
    }
    case CurveFamily::Custom: throw DomainError("custom curves have no radial form");
    }
    return {fx, fy, fz};
}

inline CoordJet CurveSpec::coordinates(double phi, int order, bool with_position) const {
    if (order < 0 || order > 3) throw DomainError("coordinate derivative order must be 0..3");
    CoordJet out{};

    if (family_ == CurveFamily::Custom) {
        const auto& f = coords_;
        out[0] = f(phi);
        // Step sizes trade truncation against cancellation for each order.
        if (order >= 1) {
            const double h = 1e-3;
            out[1] = (1.0 / (12.0 * h)) * (f(phi - 2 * h) - 8.0 * f(phi - h) + 8.0 * f(phi + h) - f(phi + 2 * h));
        }
        if (order >= 2) {
            const double h = 1e-2;
            out[2] = (1.0 / (12.0 * h * h)) * (16.0 * (f(phi - h) + f(phi + h)) - (f(phi - 2 * h) + f(phi + 2 * h)) -
                                                30.0 * out[0]);
        }
        if (order >= 3) {
            const double h = 2e-2;
            out[3] = (1.0 / (8.0 * h * h * h)) *
                     (f(phi - 3 * h) - 8.0 * f(phi - 2 * h) + 13.0 * f(phi - h) - 13.0 * f(phi + h) +
                      8.0 * f(phi + 2 * h) - f(phi + 3 * h));
        }
        return out;
    }

    const auto [fx, fy, fz] = radial_jets(phi, with_position);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const std::array<double, 4> cos_d{c, -s, -c, s};
    const std::array<double, 4> sin_d{s, c, -s, -c};
    static constexpr std::array<std::array<double, 4>, 4> binom{{{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}}};

    for (int k = 0; k <= order; ++k) {
        double x = 0.0, y = 0.0;
        for (int j = 0; j <= k; ++j) {
            x += binom[k][j] * fx[j] * cos_d[k - j];
            y += binom[k][j] * fy[j] * sin_d[k - j];
        }
        out[k] = {CurveSpec::R * x, CurveSpec::R * y, CurveSpec::R * fz[k]};
    }
    return out;
}

/// Coordinates and derivatives up to @p order. Throws DomainError outside the
/// interval or outside the squeezed-helix validity window.
inline CoordJet eval_coords(const CurveSpec& spec, double phi, int order = 3) {
    if (!(phi >= spec.phi_min() && phi <= spec.phi_max()))
        throw DomainError("phi outside [phi_min, phi_max]");
    return spec.coordinates(phi, order);
}

/// Zero-curvature test: all components of r'' x r' vanish on a dense sample.
inline bool is_straight(const CurveSpec& spec, double tolerance = 1e-9, int samples = 2001) {
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        const double phi = spec.phi_min() + t * (spec.phi_max() - spec.phi_min());
        const auto r = spec.coordinates(phi, 2, false);
        const Vec3 c = cross(r[1], r[2]);
        if (std::abs(c.x) >= tolerance || std::abs(c.y) >= tolerance || std::abs(c.z) >= tolerance) return false;
    }
    return true;
}

/// Points symmetric about the interval center: p_i = c + w*(2i - n)/n, i = 0..n.
/// Mirror pairs are exact negatives of each other about c.
inline double symmetric_node(double lo, double hi, std::size_t i, std::size_t n) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double t = (2.0 * static_cast<double>(i) - static_cast<double>(n)) / static_cast<double>(n);
    if (i == 0) return lo;
    if (i == n) return hi;
    return center + half * t;
}

} // namespace helixqm
