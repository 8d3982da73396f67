// Reference computations for the test suites. Nothing here calls into the
// library: integrals, derivatives and spectra are recomputed from scratch.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Composite Simpson rule with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, std::size_t panels = 20000) {
    panels += panels % 2;
    const double h = (b - a) / static_cast<double>(panels);
    double sum = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return sum * h / 3.0;
}

/// Five-point central differences.
template <class F>
double d1(F&& f, double x, double h = 1e-3) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

template <class F>
double d2(F&& f, double x, double h = 1e-3) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

/// Infinite square well of length L and mass m.
inline double square_well(int n, double length, double mass = 1.0) {
    return pi * pi * n * n / (2.0 * mass * length * length);
}

/// Exact eigenvalues of the N x N constant tridiagonal matrix
/// tridiag(-1, 2, -1) / (2 m h^2).
inline double discrete_well(int n, std::size_t size, double h, double mass) {
    const double theta = pi * n / static_cast<double>(size + 1);
    return (2.0 - 2.0 * std::cos(theta)) / (2.0 * mass * h * h);
}

/// Stretched-helix length from phi_min to phi in closed form.
inline double stretched_length(double a, double phi_min, double phi) {
    const double q = 1.0 / (4.0 * a * a);
    auto term = [&](double x) { return a * x * std::sqrt(x * x + q); };
    return std::log((phi + std::sqrt(phi * phi + q)) / (phi_min + std::sqrt(phi_min * phi_min + q))) / (4.0 * a) +
           term(phi) - term(phi_min);
}

/// Squeezed-helix length: int (c0 + c1 phi)^(-1/2) dphi.
inline double squeezed_length(double c0, double c1, double phi_min, double phi) {
    return 2.0 / c1 * (std::sqrt(c0 + c1 * phi) - std::sqrt(c0 + c1 * phi_min));
}

struct P3 {
    double x, y, z;
};

/// Position of a circular helix with radius profile f and height g.
template <class Fr, class Fz>
P3 helix_point(Fr&& f, Fz&& g, double phi) {
    return {f(phi) * std::cos(phi), f(phi) * std::sin(phi), g(phi)};
}

/// Curvature squared of a space curve by finite differences of its position.
template <class Curve>
double curvature_sq_fd(Curve&& r, double phi, double h = 1e-3) {
    auto comp = [&](int c) {
        return [&, c](double t) {
            const P3 p = r(t);
            return c == 0 ? p.x : c == 1 ? p.y : p.z;
        };
    };
    const std::array<double, 3> v{d1(comp(0), phi, h), d1(comp(1), phi, h), d1(comp(2), phi, h)};
    const std::array<double, 3> w{d2(comp(0), phi, h), d2(comp(1), phi, h), d2(comp(2), phi, h)};
    const double cx = v[1] * w[2] - v[2] * w[1];
    const double cy = v[2] * w[0] - v[0] * w[2];
    const double cz = v[0] * w[1] - v[1] * w[0];
    const double speed2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    return (cx * cx + cy * cy + cz * cz) / (speed2 * speed2 * speed2);
}

template <class Curve>
double speed_sq_fd(Curve&& r, double phi, double h = 1e-3) {
    auto comp = [&](int c) {
        return [&, c](double t) {
            const P3 p = r(t);
            return c == 0 ? p.x : c == 1 ? p.y : p.z;
        };
    };
    const double vx = d1(comp(0), phi, h), vy = d1(comp(1), phi, h), vz = d1(comp(2), phi, h);
    return vx * vx + vy * vy + vz * vz;
}

/// Cyclic Jacobi rotations on a dense symmetric matrix; returns sorted eigenvalues.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Number of sign changes in a sampled function, ignoring values below the threshold.
inline int sign_changes(const std::vector<double>& v, double threshold) {
    int count = 0;
    double last = 0.0;
    for (double x : v) {
        if (std::abs(x) < threshold) continue;
        if (last != 0.0 && (x > 0) != (last > 0)) ++count;
        last = x;
    }
    return count;
}

} // namespace oracle
