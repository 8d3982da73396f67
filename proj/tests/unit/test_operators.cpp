#include "helixqm/eigen.hpp"
#include "helixqm/operators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace helixqm;

namespace {

std::vector<std::vector<double>> dense(const TridiagonalOperator& op) {
    const std::size_t n = op.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = op.diag[i];
        if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = op.offdiag[i];
    }
    return a;
}

} // namespace

TEST(Operators, Em1ConstantMassIsDiscreteWell) {
    const auto spec = CurveSpec::regular_helix(1.0, 1.0, -40.0, 40.0);
    const std::size_t n = 500;
    const auto profile = GeometryProfile::build(spec, n);
    const auto op = build_em1(profile, n);
    EXPECT_NEAR(op.grid_spacing, 80.0 / 501.0, 1e-15);
    const auto sol = lowest_eigenpairs(op, 6);
    for (int j = 1; j <= 6; ++j)
        EXPECT_NEAR(sol.energies[j - 1] / oracle::discrete_well(j, n, op.grid_spacing, 2.0), 1.0, 1e-11);
}

TEST(Operators, Em2EqualsEm1ForConstantMass) {
    const auto spec = CurveSpec::regular_helix(1.0, 1.0, 0.0, 30.0);
    const auto profile = GeometryProfile::build(spec, 64);
    const auto a = build_em1(profile, 64);
    const auto b = build_em2(profile, 64);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_NEAR(a.diag[i], b.diag[i], 1e-13 * a.diag[i]);
    for (std::size_t i = 0; i < 63; ++i) EXPECT_NEAR(a.offdiag[i], b.offdiag[i], 1e-13 * std::abs(a.offdiag[i]));
}

TEST(Operators, SqueezedEm1AndEm2Coincide) {
    const auto spec = CurveSpec::squeezed_helix(0.01, 0.01);
    const std::size_t n = 2000;
    const auto profile = GeometryProfile::build(spec, n);
    const auto e1 = lowest_eigenpairs(build_em1(profile, n), 4).energies;
    const auto e2 = lowest_eigenpairs(build_em2(profile, n), 4).energies;
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(e1[j] / e2[j], 1.0, 1e-10);
}

TEST(Operators, GeoOnStraightLineIsSquareWell) {
    const double length = 3.0 * std::sqrt(14.0);
    const auto line = CurveSpec::custom([](double p) { return Vec3{p, 2 * p, 3 * p}; }, 0.0, 3.0);
    const std::size_t n = 4000;
    const auto profile = GeometryProfile::build(line, n);
    EXPECT_NEAR(profile.total_length, length, 1e-9);
    const auto sol = lowest_eigenpairs(build_geo(profile, n), 4);
    for (int j = 1; j <= 4; ++j) EXPECT_NEAR(sol.energies[j - 1] / oracle::square_well(j, length), 1.0, 1e-5);
    EXPECT_EQ(sol.coordinate, Coordinate::ArcLength);
}

TEST(Operators, GeoRegularHelixShiftedWell) {
    const auto spec = CurveSpec::regular_helix(1.0, 1.0, 0.0, 40.0);
    const std::size_t n = 4000;
    const auto profile = GeometryProfile::build(spec, n);
    const double length = 40.0 * std::sqrt(2.0);
    const auto sol = lowest_eigenpairs(build_geo(profile, n), 4);
    for (int j = 1; j <= 4; ++j) {
        const double exact = oracle::square_well(j, length) - 1.0 / 32.0;
        EXPECT_NEAR((sol.energies[j - 1] + 1.0 / 32.0) / (exact + 1.0 / 32.0), 1.0, 1e-4);
    }
}

TEST(Operators, GeoNodesMapToPhi) {
    const auto spec = CurveSpec::stretched_helix(0.1);
    const auto profile = GeometryProfile::build(spec, 300);
    const auto op = build_geo(profile, 300);
    for (std::size_t i = 0; i < op.size(); i += 29) EXPECT_NEAR(profile.arc_length_at(op.phi_nodes[i]), op.nodes[i], 1e-10);
    EXPECT_NEAR(op.grid_spacing * 301.0, profile.total_length, 1e-12);
}

TEST(Operators, MatchDenseJacobi) {
    const auto spec = CurveSpec::bulging_helix(1.0, 4.0 * oracle::pi, -10.0, 10.0);
    const std::size_t n = 40;
    const auto profile = GeometryProfile::build(spec, n);
    for (auto label : {HamiltonianLabel::EM1, HamiltonianLabel::EM2, HamiltonianLabel::GEO}) {
        const auto op = build_operator(profile, label, n);
        const auto ref = oracle::jacobi_eigenvalues(dense(op));
        const auto sol = lowest_eigenpairs(op, 12);
        for (std::size_t j = 0; j < 12; ++j)
            EXPECT_NEAR(sol.energies[j], ref[j], 1e-12 * std::max(1.0, std::abs(ref[j]))) << to_string(label);
    }
}

TEST(Operators, FluxFormPositive) {
    const auto spec = CurveSpec::bulging_helix(1.0, 4.0 * oracle::pi);
    const auto profile = GeometryProfile::build(spec, 400);
    const auto op = build_em1(profile, 400);
    EXPECT_EQ(sturm_count(op, 0.0), 0u);
    EXPECT_TRUE(op.all_finite());
}

TEST(Operators, GeoBoundedBelowByPotential) {
    const auto spec = CurveSpec::bulging_helix(1.0, 4.0 * oracle::pi);
    const auto profile = GeometryProfile::build(spec, 400);
    const auto op = build_geo(profile, 400);
    double vmin = 0.0;
    for (double k2 : profile.kappa2) vmin = std::min(vmin, -k2 / 8.0);
    EXPECT_EQ(sturm_count(op, vmin), 0u);
}

TEST(Operators, TooSmallGridThrows) {
    const auto profile = GeometryProfile::build(CurveSpec::stretched_helix(0.1), 10);
    EXPECT_THROW(build_em1(profile, 10), DomainError);
    EXPECT_THROW(build_geo(profile, 8), DomainError);
}

TEST(ReducedPotentials, RegularHelix) {
    const auto profile = GeometryProfile::build(CurveSpec::regular_helix(1.0, 1.0, 0.0, 20.0), 50);
    for (double v : reduced_potential_profile(profile, HamiltonianLabel::EM1)) EXPECT_NEAR(v, 0.0, 1e-15);
    for (double v : reduced_potential_profile(profile, HamiltonianLabel::GEO)) EXPECT_NEAR(v, -1.0 / 32.0, 1e-15);
}

TEST(ReducedPotentials, SqueezedEm2EqualsEm1) {
    const auto profile = GeometryProfile::build(CurveSpec::squeezed_helix(0.01, 0.01), 200);
    const auto a = reduced_potential_profile(profile, HamiltonianLabel::EM1);
    const auto b = reduced_potential_profile(profile, HamiltonianLabel::EM2);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}
