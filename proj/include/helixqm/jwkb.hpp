/**
 * @file jwkb.hpp
 * @brief Semiclassical (JWKB) spectra and wavefunctions.
 *
 * Without a potential the quantization reduces to a square well of the wire
 * length. With the geometric potential, the action
 *     A(E) = int sqrt(2 m(phi) (E - V(phi))) dphi
 * is quantized as A = n*pi separately in every classically allowed region,
 * with the wavefunction pinned to zero at both ends of each region.
 */
#pragma once

#include "helixqm/errors.hpp"
#include "helixqm/geometry.hpp"
#include "helixqm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <vector>

namespace helixqm {

enum class JwkbMode { NoPotential, WithGeoPotential };

/// Which potential enters the action in WithGeoPotential mode.
enum class JwkbPotential {
    ReducedGeo,  ///< -kappa^2/8 plus the m'' and m'^2 terms of the phi-form geometric Hamiltonian
    GeoOnly,     ///< -kappa^2/8 alone
};

struct Region {
    double left = 0.0;
    double right = 0.0;

    bool contains(double phi) const { return phi >= left && phi <= right; }
    friend bool operator==(const Region&, const Region&) = default;
};

struct JwkbLevel {
    double energy = 0.0;
    std::size_t region_id = 0;  ///< index of the region, left to right, at this energy
    int n = 1;                  ///< quantum number within the region
    Region region;
};

struct JwkbSpectrum {
    std::vector<JwkbLevel> levels;             ///< ascending in energy
    std::vector<std::vector<Region>> regions;  ///< all allowed intervals at each level's energy
    double length_total = 0.0;
    JwkbMode mode = JwkbMode::NoPotential;
    JwkbPotential potential = JwkbPotential::ReducedGeo;

    std::vector<double> energies() const {
        std::vector<double> e;
        e.reserve(levels.size());
        for (const auto& l : levels) e.push_back(l.energy);
        return e;
    }
};

/// Square-well spectrum E_n = pi^2 n^2 / (2 L^2) of the wire length L.
inline JwkbSpectrum jwkb_energies(const GeometryProfile& profile, std::size_t n_max) {
    if (n_max < 1) throw DomainError("n_max must be at least 1");
    const CurveSpec& spec = profile.spec();
    JwkbSpectrum out;
    out.mode = JwkbMode::NoPotential;
    out.length_total = profile.total_length;
    const double length = out.length_total;
    const Region whole{spec.phi_min(), spec.phi_max()};
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double k = std::numbers::pi * static_cast<double>(n) / length;
        out.levels.push_back({0.5 * k * k, 0, static_cast<int>(n), whole});
        out.regions.push_back({whole});
    }
    return out;
}

/// Box state sin(n pi L(phi)/L(phi_max)) normalized to int |Psi|^2 dphi = 1.
class JwkbBoxState {
public:
    JwkbBoxState(const GeometryProfile& profile, int n) : profile_(&profile), n_(n) {
        if (n < 1) throw DomainError("JWKB quantum number must be at least 1");
        const CurveSpec& spec = profile.spec();
        auto sq = [this](double phi) {
            const double v = raw(phi);
            return v * v;
        };
        // Each cell holds at most a fraction of a half-wave.
        const std::size_t cells = std::max<std::size_t>(64, static_cast<std::size_t>(16 * n));
        const double width = (spec.phi_max() - spec.phi_min()) / static_cast<double>(cells);
        double integral = 0.0;
        for (std::size_t i = 0; i < cells; ++i) {
            const double a = spec.phi_min() + width * static_cast<double>(i);
            const double b = i + 1 == cells ? spec.phi_max() : a + width;
            integral += quad::integrate(sq, a, b, 1e-12).value;
        }
        scale_ = 1.0 / std::sqrt(integral);
    }

    double operator()(double phi) const { return scale_ * raw(phi); }

private:
    double raw(double phi) const {
        return std::sin(std::numbers::pi * n_ * profile_->arc_length_at(phi) / profile_->total_length);
    }

    const GeometryProfile* profile_;
    int n_;
    double scale_ = 1.0;
};

/// Normalized JWKB box wavefunction at a single phi. Builds the normalization
/// on every call; use JwkbBoxState to sample many points.
inline double jwkb_wavefunction(const GeometryProfile& profile, int n, double phi) {
    return JwkbBoxState(profile, n)(phi);
}

struct EnergyBracket {
    double lower = 0.0;
    double upper = 0.0;
};

struct JwkbOptions {
    JwkbPotential potential = JwkbPotential::ReducedGeo;
    std::optional<EnergyBracket> bracket;  ///< default: [min V, max V + square-well scale]
    std::size_t samples = 0;               ///< dense potential samples; default 10 * N of the profile
};

inline constexpr int action_max_depth = 30;

/// Action bookkeeping for one potential on one wire.
class ActionIntegral {
public:
    ActionIntegral(const GeometryProfile& profile, JwkbPotential potential, std::size_t samples)
        : spec_(&profile.spec()), potential_(potential) {
        const CurveSpec& spec = profile.spec();
        samples = std::max<std::size_t>(samples, 1000);
        phi_.resize(samples + 1);
        v_.resize(samples + 1);
        for (std::size_t i = 0; i <= samples; ++i) {
            phi_[i] = symmetric_node(spec.phi_min(), spec.phi_max(), i, samples);
            v_[i] = potential_at(phi_[i]);
        }
    }

    double potential_at(double phi) const {
        return potential_ == JwkbPotential::ReducedGeo ? potential_geo_reduced(*spec_, phi)
                                                       : potential_geo(*spec_, phi);
    }

    const std::vector<double>& sample_phi() const { return phi_; }
    const std::vector<double>& sample_potential() const { return v_; }

    double min_potential() const { return *std::min_element(v_.begin(), v_.end()); }
    double max_potential() const { return *std::max_element(v_.begin(), v_.end()); }

    /// Maximal intervals with E >= V, turning points refined by bisection.
    std::vector<Region> allowed_regions(double energy) const {
        std::vector<Region> out;
        const std::size_t count = phi_.size();
        std::size_t i = 0;
        while (i < count) {
            if (v_[i] > energy) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j + 1 < count && v_[j + 1] <= energy) ++j;
            Region r;
            r.left = i == 0 ? phi_.front() : turning_point(phi_[i - 1], phi_[i], energy);
            r.right = j + 1 == count ? phi_.back() : turning_point(phi_[j + 1], phi_[j], energy);
            out.push_back(r);
            i = j + 1;
        }
        return out;
    }

    /// int_region sqrt(2 m (E - V)) dphi. The map phi = c + h x(3 - x^2)/2 on
    /// [-1, 1] has zero slope at both ends, which removes the square-root
    /// singularity at turning points, and it is odd in x, so mirrored regions
    /// of an even potential give bitwise equal actions. Just above a barrier
    /// top, E - V sits at rounding level over a short stretch; the depth cap
    /// keeps that stretch from being bisected down to nothing.
    double action(double energy, const Region& region) const {
        const double center = 0.5 * (region.left + region.right);
        const double half = 0.5 * (region.right - region.left);
        auto integrand = [this, energy, center, half](double x) {
            const double g = 0.5 * x * (3.0 - x * x);
            const double dg = 1.5 * (1.0 - x * x);
            return local_momentum(energy, center + half * g) * half * dg;
        };
        return quad::integrate(integrand, -1.0, 1.0, 1e-11, action_max_depth).value;
    }

    double local_momentum(double energy, double phi) const {
        const double kinetic = energy - potential_at(phi);
        if (kinetic <= 0.0) return 0.0;
        return std::sqrt(2.0 * effective_mass_unchecked(*spec_, phi).m * kinetic);
    }

    /// Sample values of interior local extrema; the allowed-region topology
    /// only changes when the energy crosses one of these.
    std::vector<double> critical_energies() const {
        std::vector<double> c{min_potential()};
        const double range = max_potential() - min_potential();
        const double prominence = 1e-13 * std::max(range, 1e-300);
        for (std::size_t i = 1; i + 1 < v_.size(); ++i) {
            const bool is_min = v_[i] < v_[i - 1] - prominence && v_[i] <= v_[i + 1] - prominence;
            const bool is_max = v_[i] > v_[i - 1] + prominence && v_[i] >= v_[i + 1] + prominence;
            if (is_min || is_max) c.push_back(v_[i]);
        }
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    }

private:
    /// Bisection between a forbidden and an allowed sample; symmetric in its
    /// arguments' geometry so mirrored potentials give mirrored points.
    double turning_point(double forbidden, double allowed, double energy) const {
        double a = forbidden;
        double b = allowed;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (potential_at(mid) > energy) a = mid;
            else b = mid;
        }
        return 0.5 * (a + b);
    }

    const CurveSpec* spec_;
    JwkbPotential potential_;
    std::vector<double> phi_;
    std::vector<double> v_;
};

namespace detail {

/// Levels whose region index is fixed throughout (e_lo, e_hi).
inline void levels_in_window(const ActionIntegral& ai, double e_lo, double e_hi, std::vector<JwkbLevel>& out) {
    const auto regions_lo = ai.allowed_regions(e_lo);
    const auto regions_hi = ai.allowed_regions(e_hi);
    if (regions_lo.size() != regions_hi.size()) return;
    for (std::size_t r = 0; r < regions_lo.size(); ++r) {
        const double a_lo = ai.action(e_lo, regions_lo[r]);
        const double a_hi = ai.action(e_hi, regions_hi[r]);
        for (int n = static_cast<int>(std::floor(a_lo / std::numbers::pi)) + 1; n * std::numbers::pi <= a_hi; ++n) {
            const double target = n * std::numbers::pi;
            double lo = e_lo;
            double hi = e_hi;
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (!(mid > lo && mid < hi) || hi - lo < 1e-14 * std::max(1e-300, std::abs(mid))) break;
                const auto regions = ai.allowed_regions(mid);
                if (regions.size() != regions_lo.size()) break;
                if (ai.action(mid, regions[r]) >= target) hi = mid;
                else lo = mid;
            }
            const double energy = 0.5 * (lo + hi);
            const auto regions = ai.allowed_regions(energy);
            const Region region = regions.size() == regions_lo.size() ? regions[r] : regions_hi[r];
            out.push_back({energy, r, n, region});
        }
    }
}

} // namespace detail

/// Action-quantized spectrum with the geometric potential. Levels from all
/// allowed regions are merged and sorted; at most @p n_max are returned.
inline JwkbSpectrum jwkb_with_potential(const GeometryProfile& profile, std::size_t n_max, const JwkbOptions& options = {}) {
    if (n_max < 1) throw DomainError("n_max must be at least 1");
    const std::size_t samples = options.samples ? options.samples : 10 * profile.interior_points();
    const ActionIntegral ai(profile, options.potential, samples);

    JwkbSpectrum out;
    out.mode = JwkbMode::WithGeoPotential;
    out.potential = options.potential;
    out.length_total = profile.total_length;

    const double v_min = ai.min_potential();
    const double v_max = ai.max_potential();
    const double length = profile.total_length;
    // sqrt(2 (E - Vmax)) L >= n pi guarantees n levels in the full interval.
    double free_scale = std::numbers::pi * std::numbers::pi * static_cast<double>(n_max * n_max) / (2.0 * length * length);

    std::vector<JwkbLevel> levels;
    for (int attempt = 0; attempt < 12; ++attempt) {
        const double lower = options.bracket ? options.bracket->lower : v_min;
        const double upper = options.bracket ? options.bracket->upper : v_max + 1.05 * free_scale;
        levels.clear();

        std::vector<double> cuts{std::max(lower, v_min)};
        for (double c : ai.critical_energies())
            if (c > cuts.front() && c < upper) cuts.push_back(c);
        cuts.push_back(upper);

        const double delta = 1e-12 * std::max({std::abs(v_min), std::abs(upper), 1e-300});
        for (std::size_t w = 0; w + 1 < cuts.size(); ++w) {
            const double e_lo = cuts[w] + delta;
            const double e_hi = w + 2 == cuts.size() ? cuts[w + 1] : cuts[w + 1] - delta;
            if (e_lo < e_hi) detail::levels_in_window(ai, e_lo, e_hi, levels);
        }
        if (levels.size() >= n_max || options.bracket) break;
        free_scale *= 2.0;
    }
    if (levels.empty()) throw SolverError("JWKB bracket failure: action below pi in every allowed region", 0);

    std::stable_sort(levels.begin(), levels.end(),
                     [](const JwkbLevel& a, const JwkbLevel& b) { return a.energy < b.energy; });
    if (levels.size() > n_max) levels.resize(n_max);
    for (const auto& level : levels) {
        out.levels.push_back(level);
        out.regions.push_back(ai.allowed_regions(level.energy));
    }
    return out;
}

/// Region-local sine of the running action for one WithGeoPotential level,
/// zero outside its region, normalized to int |Psi|^2 dphi = 1.
class JwkbRegionState {
public:
    JwkbRegionState(const GeometryProfile& profile, const JwkbLevel& level, JwkbPotential potential)
        : level_(level),
          ai_(std::make_shared<ActionIntegral>(profile, potential, 1000)),
          action_([ai = ai_, e = level.energy](double phi) { return ai->local_momentum(e, phi); },
                  level.region.left, level.region.right, 512, 1e-12) {
        auto sq = [this](double phi) {
            const double v = std::sin(action_(phi));
            return v * v;
        };
        double integral = 0.0;
        const auto& x = action_.nodes();
        for (std::size_t i = 0; i + 1 < x.size(); ++i) integral += quad::integrate(sq, x[i], x[i + 1], 1e-12).value;
        scale_ = integral > 0.0 ? 1.0 / std::sqrt(integral) : 0.0;
    }

    double operator()(double phi) const {
        if (!level_.region.contains(phi)) return 0.0;
        return scale_ * std::sin(action_(phi));
    }

    const JwkbLevel& level() const { return level_; }

private:
    JwkbLevel level_;
    std::shared_ptr<ActionIntegral> ai_;
    quad::CumulativeIntegral action_;
    double scale_ = 1.0;
};

} // namespace helixqm
