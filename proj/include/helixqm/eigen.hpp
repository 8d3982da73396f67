/**
 * @file eigen.hpp
 * @brief Lowest eigenpairs of a symmetric tridiagonal operator by Sturm-sequence
 *        bisection and inverse iteration.
 */
#pragma once

#include "helixqm/errors.hpp"
#include "helixqm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace helixqm {

enum class Normalization { UnitL2Grid };

struct EigenSolution {
    std::vector<double> energies;              ///< ascending
    std::vector<std::vector<double>> vectors;  ///< interior values, sum v_i^2 h = 1
    std::vector<double> residuals;             ///< ||Hv - Ev|| / ||v||
    std::vector<bool> degenerate;              ///< true if within 1e-12 of the previous energy
    Normalization normalization = Normalization::UnitL2Grid;
    double grid_spacing = 0.0;
    Coordinate coordinate = Coordinate::Phi;
    std::vector<double> nodes;
    std::vector<double> phi_nodes;
};

inline constexpr std::size_t max_states = 16;
inline constexpr double sturm_pivot_floor = 1e-300;

/// Gershgorin interval containing the whole spectrum.
inline std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t n = op.size();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(op.offdiag[i - 1]);
        if (i + 1 < n) radius += std::abs(op.offdiag[i]);
        lo = std::min(lo, op.diag[i] - radius);
        hi = std::max(hi, op.diag[i] + radius);
    }
    return {lo, hi};
}

/// Number of eigenvalues strictly below @p lambda (negative pivots of the
/// LDL^T factorization of H - lambda I). With a link split the pivots are
/// carried as q_i = links[i+1] + t_i, which keeps small eigenvalues accurate
/// relative to themselves rather than to the matrix norm.
inline std::size_t sturm_count(const TridiagonalOperator& op, double lambda) {
    std::size_t count = 0;
    const std::size_t n = op.size();
    auto guard = [](double q) { return std::abs(q) < sturm_pivot_floor ? -sturm_pivot_floor : q; };
    if (op.links.size() == n + 1 && op.onsite.size() == n) {
        double t = op.links[0] + op.onsite[0] - lambda;
        for (std::size_t i = 0; i < n; ++i) {
            const double q = guard(op.links[i + 1] + t);
            if (q < 0.0) ++count;
            // after a floored pivot t overflows; q then equals t and the ratio is 1
            const double ratio = std::isinf(t) ? 1.0 : t / q;
            if (i + 1 < n) t = op.links[i + 1] * ratio + op.onsite[i + 1] - lambda;
        }
        return count;
    }
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e2 = i > 0 ? op.offdiag[i - 1] * op.offdiag[i - 1] : 0.0;
        q = guard(op.diag[i] - lambda - (i > 0 ? e2 / q : 0.0));
        if (q < 0.0) ++count;
    }
    return count;
}

namespace detail {

/// LU of a shifted tridiagonal matrix with partial pivoting (row interchanges).
class ShiftedTridiagonalLU {
public:
    ShiftedTridiagonalLU(const TridiagonalOperator& op, double shift, double zero_pivot) {
        const std::size_t n = op.size();
        d_.resize(n);
        du_.assign(n, 0.0);
        du2_.assign(n, 0.0);
        dl_.assign(n, 0.0);
        swapped_.assign(n, false);
        for (std::size_t i = 0; i < n; ++i) d_[i] = op.diag[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) du_[i] = op.offdiag[i];
        std::vector<double> lower(op.offdiag.begin(), op.offdiag.end());

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d_[i]) >= std::abs(lower[i])) {
                if (d_[i] == 0.0) d_[i] = zero_pivot;
                const double f = lower[i] / d_[i];
                dl_[i] = f;
                d_[i + 1] -= f * du_[i];
            } else {
                const double f = d_[i] / lower[i];
                d_[i] = lower[i];
                dl_[i] = f;
                const double tmp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = tmp - f * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -f * du2_[i];
                }
                swapped_[i] = true;
            }
        }
        if (n > 0 && d_[n - 1] == 0.0) d_[n - 1] = zero_pivot;
        for (double& p : d_)
            if (std::abs(p) < zero_pivot) p = std::copysign(zero_pivot, p == 0.0 ? 1.0 : p);
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped_[i]) {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl_[i] * b[i];
            } else {
                b[i + 1] -= dl_[i] * b[i];
            }
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double v = b[ii];
            if (ii + 1 < n) v -= du_[ii] * b[ii + 1];
            if (ii + 2 < n) v -= du2_[ii] * b[ii + 2];
            b[ii] = v / d_[ii];
        }
    }

private:
    std::vector<double> d_, du_, du2_, dl_;
    std::vector<bool> swapped_;
};

inline double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double residual_norm(const TridiagonalOperator& op, const std::vector<double>& v, double energy) {
    const auto hv = op.apply(v);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += (hv[i] - energy * v[i]) * (hv[i] - energy * v[i]);
    return std::sqrt(r) / norm2(v);
}

/// Bisection for the (index)-th smallest eigenvalue, 0-based.
inline double bisect_eigenvalue(const TridiagonalOperator& op, std::size_t index, double lo, double hi,
                                double spectral_norm) {
    const double floor = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * spectral_norm;
    for (int iter = 0; iter < 2200; ++iter) {
        const double width = hi - lo;
        if (width < 1e-13 * std::max(std::abs(lo), std::abs(hi)) || width < floor) break;
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (sturm_count(op, mid) > index) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Lowest @p k eigenpairs. Eigenvalues by bisection to 1e-13 relative width;
/// eigenvectors by at most five inverse-iteration steps at the converged shift,
/// orthogonalized against lower vectors of the same cluster.
inline EigenSolution lowest_eigenpairs(const TridiagonalOperator& op, std::size_t k) {
    const std::size_t n = op.size();
    if (k == 0 || k > max_states || k >= n) throw DomainError("requested state count must satisfy 1 <= k <= 16 and k < N");
    if (!op.all_finite()) throw DomainError("operator has non-finite entries");

    const auto [lo, hi] = gershgorin_bounds(op);
    const double spectral_norm = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
    const double eps = std::numeric_limits<double>::epsilon();
    // Vectors whose eigenvalues are this close get explicitly re-orthogonalized.
    const double cluster_gap = 1e-3 * spectral_norm;
    const double shift_separation = 10.0 * eps * spectral_norm;

    EigenSolution sol;
    sol.grid_spacing = op.grid_spacing;
    sol.coordinate = op.coordinate;
    sol.nodes = op.nodes;
    sol.phi_nodes = op.phi_nodes;

    // A common starting bracket makes exactly repeated eigenvalues come out bitwise equal.
    for (std::size_t j = 0; j < k; ++j)
        sol.energies.push_back(
            detail::bisect_eigenvalue(op, j, lo - shift_separation, hi + shift_separation, spectral_norm));

    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    double previous_shift = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
        const double energy = sol.energies[j];
        sol.degenerate.push_back(j > 0 && energy - sol.energies[j - 1] < 1e-12 * std::max(1.0, std::abs(energy)));

        double shift = energy;
        if (shift - previous_shift < shift_separation) shift = previous_shift + shift_separation;
        previous_shift = shift;
        const detail::ShiftedTridiagonalLU lu(op, shift, eps * spectral_norm);

        std::vector<double> v(n);
        for (double& x : v) x = uniform(rng);
        const double tolerance = std::max(1e-10 * std::max(1.0, std::abs(energy)), 64.0 * eps * spectral_norm);
        double residual = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (int iter = 0; iter < 5; ++iter) {
            lu.solve(v);
            for (std::size_t p = 0; p < j; ++p) {
                if (energy - sol.energies[p] > cluster_gap) continue;
                const auto& u = sol.vectors[p];
                const double proj = detail::dot(u, v) * op.grid_spacing;
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
            }
            const double nrm = detail::norm2(v);
            if (!(nrm > 0.0) || !std::isfinite(nrm)) break;
            for (double& x : v) x /= nrm;
            residual = detail::residual_norm(op, v, energy);
            if (residual < tolerance) {
                converged = true;
                break;
            }
        }
        if (!converged) throw SolverError("inverse iteration did not converge", j);

        const double scale = 1.0 / std::sqrt(detail::dot(v, v) * op.grid_spacing);
        double peak = 0.0;
        for (double& x : v) {
            x *= scale;
            peak = std::max(peak, std::abs(x));
        }
        for (double x : v) {
            if (std::abs(x) > 1e-4 * peak) {
                if (x < 0.0)
                    for (double& y : v) y = -y;
                break;
            }
        }
        sol.residuals.push_back(detail::residual_norm(op, v, energy));
        sol.vectors.push_back(std::move(v));
    }
    return sol;
}

} // namespace helixqm
