#include "helixqm/quadrature.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace helixqm;

TEST(Quadrature, Polynomial) {
    const auto r = quad::integrate([](double x) { return 3 * x * x - 2 * x + 1; }, -1.0, 2.0);
    EXPECT_NEAR(r.value, 9.0 - 3.0 + 3.0, 1e-13);
}

TEST(Quadrature, Oscillatory) {
    const auto r = quad::integrate([](double x) { return std::sin(x) * std::sin(x); }, 0.0, 40.0);
    EXPECT_NEAR(r.value, 20.0 - std::sin(80.0) / 4.0, 1e-10);
}

TEST(Quadrature, SquareRootEndpoint) {
    const auto r = quad::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
    EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-11);
}

TEST(Quadrature, ReversedLimitsNegate) {
    auto f = [](double x) { return std::exp(x); };
    EXPECT_DOUBLE_EQ(quad::integrate(f, 1.0, 0.0).value, -quad::integrate(f, 0.0, 1.0).value);
    EXPECT_EQ(quad::integrate(f, 0.5, 0.5).value, 0.0);
}

TEST(Quadrature, AgreesWithSimpson) {
    auto f = [](double x) { return 1.0 / (1.0 + x * x) + std::exp(-x * x / 40.0); };
    EXPECT_NEAR(quad::integrate(f, -30.0, 25.0).value, oracle::simpson(f, -30.0, 25.0, 200000), 1e-9);
}

TEST(Quadrature, MirroredIntervalsBitwiseEqual) {
    auto f = [](double x) { return std::sqrt(1.0 + std::exp(-x * x / 3.0) * std::cos(x)); };
    EXPECT_EQ(quad::integrate(f, -7.3, -1.1).value, quad::integrate(f, 1.1, 7.3).value);
}

TEST(Quadrature, CumulativeIntegral) {
    quad::CumulativeIntegral F([](double x) { return std::cos(x); }, 0.0, 10.0, 37);
    for (double x : {0.0, 0.01, 3.3, 7.77, 10.0}) EXPECT_NEAR(F(x), std::sin(x), 1e-12);
    EXPECT_NEAR(F.total(), std::sin(10.0), 1e-12);
    EXPECT_EQ(F(-1.0), 0.0);
    EXPECT_EQ(F.nodes().size(), 38u);
}
