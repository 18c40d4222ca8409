#include <gtest/gtest.h>

#include "latsym/error.hpp"
#include "latsym/lattice.hpp"
#include "property.hpp"

namespace latsym {
namespace {

TEST(LatticeSpecTest, RejectsNonPositiveSpacing) {
    EXPECT_THROW(LatticeSpec(0.0, 1.0), DomainError);
    EXPECT_THROW(LatticeSpec(1.0, -0.5), DomainError);
    EXPECT_THROW(LatticeSpec(std::numeric_limits<double>::infinity(), 1.0), DomainError);
}

TEST(LatticeSpecTest, RatioIsComputedFromSpacings) {
    const LatticeSpec spec(0.1, 0.05);
    EXPECT_EQ(spec.p(), 0.1 / 0.05);
}

TEST(IndexToCoordsTest, AffineMap) {
    const Coords c = index_to_coords(LatticeSpec(0.1, 0.05), {3, 2});
    EXPECT_DOUBLE_EQ(c.x, 0.3);
    EXPECT_DOUBLE_EQ(c.t, 0.1);

    const LatticeSpec shifted(1.0, 1.0, -1.0, -1.0);
    const Coords origin = index_to_coords(shifted, {0, 0});
    EXPECT_EQ(origin.x, -1.0);
    EXPECT_EQ(origin.t, -1.0);
    const Coords c11 = index_to_coords(shifted, {1, 1});
    EXPECT_EQ(c11.x, 0.0);
    EXPECT_EQ(c11.t, 0.0);
}

TEST(VerifyLatticeEquationsTest, RegularGridPasses) {
    const LatticeSpec spec(0.1, 0.05, 0.3, -1.0);
    const CoordGrid grid = CoordGrid::from_lattice(spec, -3, 4, -2, 5);
    EXPECT_TRUE(verify_lattice_equations(GeneralLatticeSpec::regular(spec), grid));
}

TEST(VerifyLatticeEquationsTest, PerturbedCoordinateFails) {
    const LatticeSpec spec(0.1, 0.05);
    CoordGrid grid = CoordGrid::from_lattice(spec, 0, 4, 0, 4);
    grid.at({2, 2}).x += 10.0 * kLatticeTolerance;
    EXPECT_FALSE(verify_lattice_equations(GeneralLatticeSpec::regular(spec), grid));
}

TEST(VerifyLatticeEquationsTest, ShearedGridViolatesEtaRelation) {
    const double dx = 0.1;
    const LatticeSpec spec(dx, 0.05);
    CoordGrid grid(0, 3, 0, 3);
    for (std::int64_t n = 0; n <= 3; ++n) {
        for (std::int64_t m = 0; m <= 3; ++m) {
            grid.at({m, n}) = {static_cast<double>(m) * dx + static_cast<double>(n) * dx,
                               static_cast<double>(n) * 0.05};
        }
    }
    EXPECT_FALSE(verify_lattice_equations(GeneralLatticeSpec::regular(spec), grid));
}

TEST(VerifyLatticeEquationsTest, RejectsThinWindows) {
    const LatticeSpec spec(1.0, 1.0);
    EXPECT_THROW((void)verify_lattice_equations(GeneralLatticeSpec::regular(spec),
                                                CoordGrid::from_lattice(spec, 0, 0, 0, 5)),
                 DomainError);
}

TEST(MovingFrameTest, IndexMaps) {
    const LatticeSpec lattice(0.1, 0.05);
    EXPECT_EQ(to_moving_frame(MovingFrameMap(1, lattice), {5, 2}), (IndexPoint{3, 2}));
    EXPECT_EQ(from_moving_frame(MovingFrameMap(2, lattice), {-2, 3}), (IndexPoint{4, 3}));
    const MovingFrameMap k3(3, lattice);
    EXPECT_EQ(from_moving_frame(k3, to_moving_frame(k3, {7, -4})), (IndexPoint{7, -4}));
    EXPECT_THROW(MovingFrameMap(0, lattice), DomainError);
}

TEST(MovingFrameTest, SpeedIsKTimesRatio) {
    const MovingFrameMap map(3, LatticeSpec(0.2, 0.1));
    EXPECT_EQ(map.v(), 3.0 * (0.2 / 0.1));
}

TEST(LatticeProperties, MovingFrameRoundTrip) {
    test::for_all(500, 7, [](UniformSource& u, std::size_t) {
        const MovingFrameMap map(test::uniform_int(u, 1, 9), LatticeSpec(0.1, 0.05));
        const IndexPoint pt{test::uniform_int(u, -1'000'000, 1'000'000), test::uniform_int(u, -1'000'000, 1'000'000)};
        ASSERT_EQ(from_moving_frame(map, to_moving_frame(map, pt)), pt);
        ASSERT_EQ(to_moving_frame(map, from_moving_frame(map, pt)), pt);
    });
}

TEST(LatticeProperties, MovingFrameLatticeEquations) {
    // zeta increments by dx along m and by -k dx along n; tau by 0 and dt.
    test::for_all(50, 11, [](UniformSource& u, std::size_t) {
        const double dx = u(0.01, 1.0);
        const double dt = u(0.01, 1.0);
        const std::int64_t k = test::uniform_int(u, 1, 5);
        const MovingFrameMap map(k, LatticeSpec(dx, dt));
        const std::int64_t m0 = test::uniform_int(u, -50, 50);
        const std::int64_t n0 = test::uniform_int(u, -50, 50);
        for (std::int64_t n = n0; n < n0 + 6; ++n) {
            for (std::int64_t m = m0; m < m0 + 6; ++m) {
                const Coords here = frame_coords(map, {m, n});
                const Coords right = frame_coords(map, {m + 1, n});
                const Coords up = frame_coords(map, {m, n + 1});
                const double scale = 1.0 + std::abs(here.x) + map.v() * std::abs(here.t);
                ASSERT_NEAR(right.x - here.x, dx, 1e-13 * scale);
                ASSERT_NEAR(up.x - here.x, -static_cast<double>(k) * dx, 1e-13 * scale);
                ASSERT_EQ(right.t - here.t, 0.0);
                ASSERT_NEAR(up.t - here.t, dt, 1e-13 * (1.0 + std::abs(here.t)));
                ASSERT_NEAR(here.x, static_cast<double>(m - k * n) * dx, 1e-13 * scale);
            }
        }
    });
}

TEST(LatticeProperties, RegularLatticesVerify) {
    test::for_all(100, 13, [](UniformSource& u, std::size_t) {
        const LatticeSpec spec(u(0.01, 2.0), u(0.01, 2.0), u(-1.0, 1.0), u(-1.0, 1.0));
        const std::int64_t m_lo = test::uniform_int(u, -20, 20);
        const std::int64_t n_lo = test::uniform_int(u, -20, 20);
        const CoordGrid grid = CoordGrid::from_lattice(spec, m_lo, m_lo + test::uniform_int(u, 1, 10), n_lo,
                                                       n_lo + test::uniform_int(u, 1, 10));
        ASSERT_TRUE(verify_lattice_equations(GeneralLatticeSpec::regular(spec), grid));
    });
}

}  // namespace
}  // namespace latsym
