/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod (7/15) quadrature.
 */
#pragma once

#include <array>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iterator>
#include <utility>
#include <vector>

namespace helixqm::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

// Kronrod nodes on [0,1] in decreasing order; odd indices are the Gauss points.
inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Result gk15(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        // pairwise sum keeps mirrored intervals bitwise symmetric
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[j] * pair;
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * pair;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class F>
Result adapt(F& f, double a, double b, const Result& whole, double tol, int depth) {
    if (whole.error <= tol || depth <= 0) return whole;
    const double mid = 0.5 * (a + b);
    const Result left = gk15(f, a, mid);
    const Result right = gk15(f, mid, b);
    if (left.error + right.error <= tol)
        return {left.value + right.value, left.error + right.error};
    const Result l = adapt(f, a, mid, left, 0.5 * tol, depth - 1);
    const Result r = adapt(f, mid, b, right, 0.5 * tol, depth - 1);
    return {l.value + r.value, l.error + r.error};
}

} // namespace detail

inline constexpr double default_tolerance = 1e-10;
inline constexpr int default_max_depth = 40;

/// Integrates f over [a,b] by recursive bisection until the summed
/// Kronrod-Gauss error estimate falls below the absolute tolerance.
/// Reversed limits give the negated integral.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = default_tolerance,
                 int max_depth = default_max_depth) {
    if (a == b) return {};
    if (b < a) {
        Result r = integrate(f, b, a, abs_tol, max_depth);
        return {-r.value, r.error};
    }
    auto& fn = f;
    const Result whole = detail::gk15(fn, a, b);
    return detail::adapt(fn, a, b, whole, abs_tol, max_depth);
}

/// Running integral F(x) = int_a^x f on a fixed partition: cell sums are
/// tabulated once, then F(x) costs one local quadrature.
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> f, double a, double b, std::size_t cells, double cell_tol = 1e-13)
        : f_(std::move(f)), tol_(cell_tol) {
        cells = std::max<std::size_t>(cells, 1);
        x_.resize(cells + 1);
        sum_.resize(cells + 1);
        x_[0] = a;
        sum_[0] = 0.0;
        for (std::size_t i = 1; i <= cells; ++i) {
            x_[i] = i == cells ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
            sum_[i] = sum_[i - 1] + integrate(f_, x_[i - 1], x_[i], tol_).value;
        }
    }

    double lower() const { return x_.front(); }
    double upper() const { return x_.back(); }
    double total() const { return sum_.back(); }

    double operator()(double x) const {
        if (x <= x_.front()) return 0.0;
        if (x >= x_.back()) return sum_.back();
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t cell = static_cast<std::size_t>(std::distance(x_.begin(), it)) - 1;
        return sum_[cell] + integrate(f_, x_[cell], x, tol_).value;
    }

    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& partial_sums() const { return sum_; }

private:
    std::function<double(double)> f_;
    double tol_;
    std::vector<double> x_;
    std::vector<double> sum_;
};

} // namespace helixqm::quad
